#include "dseq/summation.hpp"

#include "dseq/diffops.hpp"

#include <algorithm>
#include <cmath>

namespace dseq {

namespace {

template <class S>
using Tr = ScalarTraits<S>;
template <class S>
using R = RealOf<S>;

template <class S>
double modulus(const S& z) {
  return std::sqrt(Tr<S>::to_double(Tr<S>::abs2(z)));
}

/// a <= b, with a relative slack in float mode.
template <class S>
bool at_most(const R<S>& a, const R<S>& b) {
  if constexpr (std::is_same_v<S, ExactComplex>) {
    return a <= b;
  } else {
    return a <= b * (1.0 + 1e-9) + 1e-300;
  }
}

}  // namespace

template <class S>
DoubleSeq<S> partial_sum_grid(const DoubleSeq<S>& x) {
  const std::size_t cols = x.cols();
  std::vector<S> out(x.size());
  for (std::size_t m = 0; m < x.rows(); ++m) {
    S row{};
    for (std::size_t n = 0; n < cols; ++n) {
      row += x(m, n);
      out[m * cols + n] = m == 0 ? row : row + out[(m - 1) * cols + n];
    }
  }
  std::optional<FamilyTag> t;
  if (x.family()) t = tag::cumulative(*x.family());
  return DoubleSeq<S>(x.rows(), cols, std::move(out), t);
}

template <class S>
DoubleSeq<S> suffix_sum_grid(const DoubleSeq<S>& x) {
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  std::vector<S> out(x.size());
  for (std::size_t i = rows; i-- > 0;) {
    S row{};
    for (std::size_t j = cols; j-- > 0;) {
      row += x(i, j);
      out[i * cols + j] = i + 1 == rows ? row : row + out[(i + 1) * cols + j];
    }
  }
  return DoubleSeq<S>(rows, cols, std::move(out));
}

std::string to_string(PartialDiffKind k) {
  switch (k) {
    case PartialDiffKind::d10: return "d10";
    case PartialDiffKind::d01: return "d01";
    case PartialDiffKind::d11: return "d11";
  }
  return "?";
}

PartialDiffKind parse_partial_diff_kind(const std::string& text) {
  for (auto k : {PartialDiffKind::d10, PartialDiffKind::d01, PartialDiffKind::d11}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown partial difference '" + text + "'");
}

template <class S>
DoubleSeq<S> partial_difference(const DoubleSeq<S>& a, PartialDiffKind kind) {
  const bool down = kind != PartialDiffKind::d01;
  const bool right = kind != PartialDiffKind::d10;
  if ((down && a.rows() < 2) || (right && a.cols() < 2)) {
    throw InvalidArgument("partial difference " + to_string(kind) + " needs two entries along each differenced axis");
  }
  const std::size_t rows = a.rows() - (down ? 1 : 0);
  const std::size_t cols = a.cols() - (right ? 1 : 0);
  std::vector<S> out(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t l = 0; l < cols; ++l) {
      S v = a(k, l);
      if (down) v -= a(k + 1, l);
      if (right) v -= a(k, l + 1);
      if (down && right) v += a(k + 1, l + 1);
      out[k * cols + l] = v;
    }
  }
  return DoubleSeq<S>(rows, cols, std::move(out));
}

template <class S>
std::pair<S, S> abel_identity_check(const DoubleSeq<S>& y, std::size_t m, std::size_t n, std::size_t s, std::size_t t) {
  if (s < 1 || t < 1) throw InvalidArgument("summation bounds s, t must be at least 1");
  if (m + s - 1 >= y.rows() || n + t - 1 >= y.cols()) {
    throw InvalidArgument("summation window exceeds the " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()) +
                          " grid");
  }
  auto weight = [&](std::size_t k, std::size_t l) {
    return Tr<S>::from_int(1) / Tr<S>::from_int(static_cast<long>((m + k) * (n + l)));
  };
  // Y[k][l] = sum_{i<=k, j<=l} y_{m+i-1, n+j-1}, 1-based.
  std::vector<std::vector<S>> Y(s + 1, std::vector<S>(t + 1));
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::size_t l = 1; l <= t; ++l) Y[k][l] = y(m + k - 1, n + l - 1) + Y[k - 1][l] + Y[k][l - 1] - Y[k - 1][l - 1];
  }
  S lhs{};
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::size_t l = 1; l <= t; ++l) lhs += y(m + k - 1, n + l - 1) * weight(k, l);
  }
  S rhs{};
  for (std::size_t k = 1; k < s; ++k) {
    for (std::size_t l = 1; l < t; ++l) {
      rhs += Y[k][l] * (weight(k, l) - weight(k + 1, l) - weight(k, l + 1) + weight(k + 1, l + 1));
    }
  }
  for (std::size_t k = 1; k < s; ++k) rhs += Y[k][t] * (weight(k, t) - weight(k + 1, t));
  for (std::size_t l = 1; l < t; ++l) rhs += Y[s][l] * (weight(s, l) - weight(s, l + 1));
  rhs += Y[s][t] * weight(s, t);
  return {lhs, rhs};
}

template <class S>
BoundCheck<S> lemma31_bound_check(const DoubleSeq<S>& y) {
  if (y.rows() < 2 || y.cols() < 2) throw InvalidArgument("bound check needs a truncation of at least 2x2");
  DoubleSeq<S> sums = partial_sum_grid(project_interior(y));
  R<S> bound2{};
  for (std::size_t m = 1; m < y.rows(); ++m) {
    for (std::size_t n = 1; n < y.cols(); ++n) bound2 = std::max(bound2, R<S>(Tr<S>::abs2(sums(m, n))));
  }
  std::vector<S> weighted(y.size());
  for (std::size_t i = 1; i < y.rows(); ++i) {
    for (std::size_t j = 1; j < y.cols(); ++j) {
      weighted[i * y.cols() + j] = y(i, j) / Tr<S>::from_int(static_cast<long>((i + 1) * (j + 1)));
    }
  }
  DoubleSeq<S> inner = suffix_sum_grid(DoubleSeq<S>(y.rows(), y.cols(), std::move(weighted)));
  const R<S> limit2 = R<S>(16) * bound2;
  BoundCheck<S> out;
  out.bound = std::sqrt(Tr<S>::to_double(bound2));
  R<S> worst2{};
  Index2 worst_at{1, 1};
  for (std::size_t m = 1; m < y.rows(); ++m) {
    for (std::size_t n = 1; n < y.cols(); ++n) {
      R<S> f = R<S>(static_cast<long>((m + 1) * (n + 1)));
      R<S> v = f * f * Tr<S>::abs2(inner(m, n));
      if (v > worst2) {
        worst2 = v;
        worst_at = {m, n};
      }
    }
  }
  out.worst = std::sqrt(Tr<S>::to_double(worst2));
  if (at_most<S>(worst2, limit2)) {
    out.verdict = holds_verdict<S>("weighted inner sums within 4M", Witness{{worst_at}, out.bound, "M"});
  } else {
    out.verdict = fails_verdict<S>(Witness{{worst_at}, out.worst, "weighted inner sum exceeds 4M"},
                                   "inner sum bound violated");
  }
  return out;
}

template <class S>
TailGrid<S> tail_grid(const DoubleSeq<S>& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  DoubleSeq<S> inclusive = suffix_sum_grid(a);
  std::vector<S> strict(a.size());
  for (std::size_t m = 0; m + 1 < rows; ++m) {
    for (std::size_t n = 0; n + 1 < cols; ++n) strict[m * cols + n] = inclusive(m + 1, n + 1);
  }
  TailGrid<S> out;
  out.R = DoubleSeq<S>(rows, cols, std::move(strict));
  out.artifact_row = rows - 1;
  out.artifact_col = cols - 1;
  if (!a.family()) return out;
  if (const auto* f = std::get_if<FiniteSupportTag>(&*a.family())) {
    if (f->rows <= rows && f->cols <= cols) {
      out.analytic = out.R;
      out.tail_flag = true;
      out.artifact_row = rows;
      out.artifact_col = cols;
    }
    return out;
  }
  const auto* s = std::get_if<SeparableTag>(&*a.family());
  if (s == nullptr) return out;
  AxisBehavior su = classify_series(s->rows);
  AxisBehavior sv = classify_series(s->cols);
  if (!su.convergent() || !sv.convergent() || !su.limit || !sv.limit) return out;
  auto tails = [](const AxisForm& f, const ExactComplex& total, std::size_t count) {
    std::vector<S> t(count);
    ExactComplex run;
    for (std::size_t k = 0; k < count; ++k) {
      run += f.value(k);
      t[k] = Tr<S>::from_exact(total - run);
    }
    return t;
  };
  std::vector<S> tu = tails(s->rows, *su.limit, rows);
  std::vector<S> tv = tails(s->cols, *sv.limit, cols);
  std::vector<S> vals(a.size());
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < cols; ++n) vals[m * cols + n] = tu[m] * tv[n];
  }
  out.analytic = DoubleSeq<S>(rows, cols, std::move(vals));
  out.tail_flag = true;
  return out;
}

std::string to_string(CorollaryPart p) {
  switch (p) {
    case CorollaryPart::i: return "i";
    case CorollaryPart::ii: return "ii";
    case CorollaryPart::iii: return "iii";
  }
  return "?";
}

CorollaryPart parse_corollary_part(const std::string& text) {
  for (auto p : {CorollaryPart::i, CorollaryPart::ii, CorollaryPart::iii}) {
    if (text == to_string(p)) return p;
  }
  throw InvalidArgument("unknown corollary part '" + text + "' (expected i, ii or iii)");
}

namespace {

/// Summation-by-parts identity for sum kl a_kl at every 1 <= s <= K-2, 1 <= t <= L-2.
template <class S>
Verdict<S> corollary_identity(const DoubleSeq<S>& a, const DetectParams& params) {
  if (a.rows() < 3 || a.cols() < 3) return holds_verdict<S>("no admissible (s, t) on this truncation");
  DoubleSeq<S> inner = project_interior(a);
  DoubleSeq<S> lhs = partial_sum_grid(scale_by_index(inner, IndexScaling::integral));
  DoubleSeq<S> tail = project_interior(suffix_sum_grid(inner));
  DoubleSeq<S> cum = partial_sum_grid(tail);
  for (std::size_t s = 1; s + 2 <= a.rows(); ++s) {
    for (std::size_t t = 1; t + 2 <= a.cols(); ++t) {
      S block = cum(s, t);
      S next_row = cum(s + 1, t) - block;
      S next_col = cum(s, t + 1) - block;
      S corner = tail(s + 1, t + 1);
      S ss = Tr<S>::from_int(static_cast<long>(s));
      S tt = Tr<S>::from_int(static_cast<long>(t));
      S rhs = block - ss * next_row - tt * next_col + ss * tt * corner;
      bool equal;
      if constexpr (std::is_same_v<S, ExactComplex>) {
        equal = rhs == lhs(s, t);
      } else {
        double scale = 1.0 + modulus(block) + modulus(ss * next_row) + modulus(tt * next_col) + modulus(ss * tt * corner);
        equal = modulus(S(rhs - lhs(s, t))) <= params.epsilon * scale;
      }
      if (!equal) {
        return fails_verdict<S>(Witness{{Index2{s, t}}, modulus(S(rhs - lhs(s, t))), "identity mismatch"},
                                "summation-by-parts identity fails");
      }
    }
  }
  return holds_verdict<S>("identity holds at every admissible (s, t)");
}

/// Facts about mn R_mn from the closed form of a.
template <class S>
std::optional<GridAnalysis> weighted_tail_facts(const DoubleSeq<S>& a) {
  if (!a.family()) return std::nullopt;
  if (std::holds_alternative<FiniteSupportTag>(*a.family())) return analyze(*a.family());
  const auto* s = std::get_if<SeparableTag>(&*a.family());
  if (s == nullptr) return std::nullopt;
  AxisBehavior u = weighted_tail(s->rows);
  AxisBehavior v = weighted_tail(s->cols);
  u.identically_zero = s->rows.identically_zero();
  v.identically_zero = s->cols.identically_zero();
  if (!u.known() && !u.identically_zero) return std::nullopt;
  if (!v.known() && !v.identically_zero) return std::nullopt;
  return analyze_product(u, v);
}

template <class S>
DoubleSeq<S> weighted_tail_grid(const DoubleSeq<S>& a) {
  TailGrid<S> tg = tail_grid(a);
  DoubleSeq<S> base = tg.analytic ? *tg.analytic : tg.R.restrict(std::max<std::size_t>(a.rows() / 2, 2),
                                                                  std::max<std::size_t>(a.cols() / 2, 2));
  return scale_by_index(base, IndexScaling::integral);
}

/// premise implies conclusion.
template <class S>
Verdict<S> implication(const Verdict<S>& premise, Verdict<S> conclusion) {
  if (conclusion.holds()) return conclusion;
  if (premise.fails()) {
    Verdict<S> v = holds_verdict<S>("premise fails; implication holds vacuously");
    v.witness = premise.witness;
    return v;
  }
  if (premise.holds() && conclusion.fails()) {
    conclusion.reason = "premise holds but " + conclusion.reason;
    return conclusion;
  }
  return inconclusive_verdict<S>("premise " + to_string(premise.state) + ", conclusion " + to_string(conclusion.state));
}

}  // namespace

template <class S>
Verdict<S> corollary41_check(const DoubleSeq<S>& a, CorollaryPart part, const DetectParams& params, Theta theta) {
  if (part == CorollaryPart::iii) return corollary_identity(a, params);
  DoubleSeq<S> inner = project_interior(a);
  DoubleSeq<S> weighted = scale_by_index(inner, IndexScaling::integral);
  auto facts = weighted_tail_facts(inner);
  DoubleSeq<S> conclusion_grid = weighted_tail_grid(inner);
  if (part == CorollaryPart::i) {
    Verdict<S> premise = space_membership(partial_sum_grid(weighted), SpaceSpec{Space::M_u}, params);
    Verdict<S> conclusion = space_membership(conclusion_grid, SpaceSpec{Space::M_u}, params, facts);
    return implication(premise, conclusion);
  }
  Verdict<S> premise = cs_verdict(weighted, theta, params);
  Verdict<S> conclusion = space_membership(conclusion_grid, SpaceSpec{theta_space(theta, true)}, params, facts);
  return implication(premise, conclusion);
}

template <class S>
EquivalenceReport<S> lemma_equivalence(const DoubleSeq<S>& x, const DetectParams& params) {
  DoubleSeq<S> scaled = project_interior(scale_by_index(x, IndexScaling::d));
  EquivalenceReport<S> out;
  out.scaled_bound = space_membership(scaled, SpaceSpec{Space::M_u}, params);
  DoubleSeq<S> weighted = project_interior(scale_by_index(forward_difference(scaled), IndexScaling::integral));
  out.weighted_difference = space_membership(weighted, SpaceSpec{Space::M_u}, params);
  out.difference_bound = delta_space_membership(x, SpaceSpec{Space::M_u}, params);
  bool zero_boundary = true;
  for (std::size_t k = 0; k < x.rows(); ++k) zero_boundary = zero_boundary && Tr<S>::is_zero(x(k, 0));
  for (std::size_t l = 0; l < x.cols(); ++l) zero_boundary = zero_boundary && Tr<S>::is_zero(x(0, l));
  if (zero_boundary && out.scaled_bound.decisive() && out.weighted_difference.decisive() &&
      out.difference_bound.decisive()) {
    bool both = out.scaled_bound.holds() && out.weighted_difference.holds();
    out.agree = both == out.difference_bound.holds();
  }
  return out;
}

#define DSEQ_INSTANTIATE(S)                                                                                      \
  template DoubleSeq<S> partial_sum_grid<S>(const DoubleSeq<S>&);                                                \
  template DoubleSeq<S> suffix_sum_grid<S>(const DoubleSeq<S>&);                                                 \
  template DoubleSeq<S> partial_difference<S>(const DoubleSeq<S>&, PartialDiffKind);                             \
  template std::pair<S, S> abel_identity_check<S>(const DoubleSeq<S>&, std::size_t, std::size_t, std::size_t,    \
                                                  std::size_t);                                                  \
  template BoundCheck<S> lemma31_bound_check<S>(const DoubleSeq<S>&);                                            \
  template TailGrid<S> tail_grid<S>(const DoubleSeq<S>&);                                                        \
  template Verdict<S> corollary41_check<S>(const DoubleSeq<S>&, CorollaryPart, const DetectParams&, Theta);      \
  template EquivalenceReport<S> lemma_equivalence<S>(const DoubleSeq<S>&, const DetectParams&);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
