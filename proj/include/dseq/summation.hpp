#pragma once

#include "dseq/convergence.hpp"
#include "dseq/double_seq.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace dseq {

/// s_mn = sum_{k<=m, l<=n} x_kl.
template <class S>
DoubleSeq<S> partial_sum_grid(const DoubleSeq<S>& x);

/// Inclusive suffix sums sum_{i>=k, j>=l} x_ij over the truncation.
template <class S>
DoubleSeq<S> suffix_sum_grid(const DoubleSeq<S>& x);

enum class PartialDiffKind { d10, d01, d11 };

std::string to_string(PartialDiffKind k);
PartialDiffKind parse_partial_diff_kind(const std::string& text);

/// d10: a_kl - a_{k+1,l}, d01: a_kl - a_{k,l+1}, d11: both. The differenced axes shrink by one.
template <class S>
DoubleSeq<S> partial_difference(const DoubleSeq<S>& a, PartialDiffKind kind);

/// Both sides of Abel's double partial summation with weights 1/((m+k)(n+l)).
template <class S>
std::pair<S, S> abel_identity_check(const DoubleSeq<S>& y, std::size_t m, std::size_t n, std::size_t s, std::size_t t);

template <class S>
struct BoundCheck {
  Verdict<S> verdict;
  /// sup over m, n >= 1 of |sum_{k,l=1}^{m,n} y_kl|.
  double bound = 0.0;
  /// Largest (m+1)(n+1)|inner sum| seen.
  double worst = 0.0;
};

/// Checks (m+1)(n+1) |sum_{i>=m, j>=n} y_ij / ((i+1)(j+1))| <= 4M for all m, n >= 1, inner sums cut at the grid edge.
template <class S>
BoundCheck<S> lemma31_bound_check(const DoubleSeq<S>& y);

template <class S>
struct TailGrid {
  /// R_mn = sum over m < k < K, n < l < L.
  DoubleSeq<S> R;
  /// Infinite tails from the closed form, when the row and column series have exact sums.
  std::optional<DoubleSeq<S>> analytic;
  bool tail_flag = false;
  /// Rows and columns from these indices on are dominated by the truncation.
  std::size_t artifact_row = 0;
  std::size_t artifact_col = 0;
};

template <class S>
TailGrid<S> tail_grid(const DoubleSeq<S>& a);

enum class CorollaryPart { i, ii, iii };

std::string to_string(CorollaryPart p);
CorollaryPart parse_corollary_part(const std::string& text);

/// i: bounded partial sums of kl a_kl give bounded mn R_mn.
/// ii: theta-convergence of sum kl a_kl gives mn R_mn -> 0.
/// iii: the summation-by-parts identity for sum kl a_kl at every admissible (s, t).
template <class S>
Verdict<S> corollary41_check(const DoubleSeq<S>& a, CorollaryPart part, const DetectParams& params = {},
                             Theta theta = Theta::p);

template <class S>
struct EquivalenceReport {
  /// sup |x_kl| / (kl).
  Verdict<S> scaled_bound;
  /// sup |kl d(x_kl / (kl))|.
  Verdict<S> weighted_difference;
  /// sup |dx|.
  Verdict<S> difference_bound;
  /// Both sides decisive and in agreement; unset when either side is inconclusive.
  std::optional<bool> agree;
};

template <class S>
EquivalenceReport<S> lemma_equivalence(const DoubleSeq<S>& x, const DetectParams& params = {});

}  // namespace dseq
