#pragma once

#include "dseq/double_seq.hpp"
#include "dseq/verdict.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace dseq {

enum class Space { M_u, C_p, C_p0, C_bp, C_bp0, C_r, C_r0, L_q };
enum class Theta { p, bp, r };

std::string to_string(Space s);
std::string to_string(Theta t);
Space parse_space(const std::string& text);
Theta parse_theta(const std::string& text);
/// C_theta, or C_theta0 when null is set.
Space theta_space(Theta t, bool null = false);

struct SpaceSpec {
  Space space = Space::C_p;
  double q = 1.0;
};

struct DetectParams {
  double epsilon = 1e-9;
  /// Number of trailing anti-diagonals (or entries, for single rows) the limit is read from.
  std::size_t window = 2;
  /// Index from which asymptotic behavior is assessed. Defaults to min(K, L) / 2,
  /// lowered when needed so that K, L > n0 + window.
  std::optional<std::size_t> diag_start;

  std::size_t n0(std::size_t rows, std::size_t cols) const;
  void validate(std::size_t rows, std::size_t cols) const;
};

template <class S>
Verdict<S> space_membership(const DoubleSeq<S>& x, SpaceSpec space, const DetectParams& params = {});

/// Same, with asymptotic facts supplied by the caller in place of those read from the family tag.
template <class S>
Verdict<S> space_membership(const DoubleSeq<S>& x, SpaceSpec space, const DetectParams& params,
                            const std::optional<GridAnalysis>& facts);

enum class NormKind { sup, cp_seminorm, bs, bv, lq };

std::string to_string(NormKind k);
NormKind parse_norm_kind(const std::string& text);

template <class S>
NormValue<RealOf<S>> norm(const DoubleSeq<S>& x, NormKind which, double q = 1.0, const DetectParams& params = {});

/// Membership of the partial-sum grid in C_theta.
template <class S>
Verdict<S> cs_verdict(const DoubleSeq<S>& x, Theta theta, const DetectParams& params = {});

/// Pringsheim limit test alone; used for limits of derived grids.
template <class S>
Verdict<S> pringsheim_verdict(const DoubleSeq<S>& x, const DetectParams& params, bool null_limit = false);

/// Limit test for a single sequence (a row of values), same protocol as the grid version.
template <class S>
Verdict<S> sequence_limit_verdict(const std::vector<S>& values, const DetectParams& params, bool null_limit = false);

}  // namespace dseq
