#pragma once

#include "dseq/convergence.hpp"
#include "dseq/double_seq.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dseq {

enum class DualKind { alpha, beta, gamma };

struct DualSpec {
  DualKind kind = DualKind::alpha;
  /// Summation sense of the beta dual.
  Theta theta = Theta::bp;

  std::string label() const;
  /// "alpha", "beta(p|bp|r)" or "gamma".
  static DualSpec parse(const std::string& text);
};

enum class DSet { D1, D2, D3, D4 };

struct DSetId {
  DSet id = DSet::D1;
  Theta theta = Theta::bp;

  std::string label() const;
  /// "D1", "D2(p|bp|r)", "D3" or "D4".
  static DSetId parse(const std::string& text);
};

template <class S>
DoubleSeq<S> abs_grid(const DoubleSeq<S>& x);

/// D1: sum kl|a_kl| converges. D2: sum kl a_kl theta-converges. D3: its partial sums are bounded.
/// D4: sum |sum_{i>=k, j>=l} a_ij| converges. All sums start at k, l = 1.
template <class S>
Verdict<S> in_dset(const DoubleSeq<S>& a, DSetId id, const DetectParams& params = {});

/// D1, D2 and D4, or D3 and D4 for alpha, beta and gamma.
template <class S>
Verdict<S> dset_side(const DoubleSeq<S>& a, DualSpec kind, const DetectParams& params = {});

template <class S>
struct Sample {
  std::string name;
  DoubleSeq<S> x;
};

/// Projected builtin families kept when they belong to base(Delta): monomials up to degree 2 per axis,
/// basis points, geometric, alternating, Boos and random finite support.
template <class S>
std::vector<Sample<S>> sample_battery(Space base, std::size_t rows, std::size_t cols, const DetectParams& params = {},
                                      std::uint64_t seed = 1);

/// The same families without projection or filtering, as members of a plain space.
template <class S>
std::vector<Sample<S>> plain_battery(Space base, std::size_t rows, std::size_t cols, const DetectParams& params = {},
                                     std::uint64_t seed = 1);

/// a x absolutely summable (alpha), theta-summable (beta) or with bounded partial sums (gamma) for every sample.
template <class S>
Verdict<S> dual_membership(const DoubleSeq<S>& a, DualSpec kind, const std::vector<Sample<S>>& samples,
                           const DetectParams& params = {});

template <class S>
struct HarnessRow {
  std::string family;
  Verdict<S> dset;
  Verdict<S> pairing;
  /// Set when both sides are decisive.
  std::optional<bool> agree;
};

template <class S>
struct HarnessReport {
  DualSpec kind;
  std::vector<HarnessRow<S>> rows;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t inconclusive = 0;
};

template <class S>
HarnessReport<S> dual_theorem_harness(DualSpec kind, const std::vector<Sample<S>>& coefficients,
                                      const std::vector<Sample<S>>& samples, const DetectParams& params = {});

}  // namespace dseq
