#include "dseq/diffops.hpp"

#include <algorithm>
#include <cmath>

namespace dseq {

namespace {

template <class S>
using Tr = ScalarTraits<S>;

void require_grid(std::size_t rows, std::size_t cols, const char* what) {
  if (rows < 2 || cols < 2) {
    throw InvalidArgument(std::string(what) + " needs a truncation of at least 2x2, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
}

}  // namespace

template <class S>
BoundaryData<S> BoundaryData<S>::zero(std::size_t rows, std::size_t cols) {
  return {std::vector<S>(rows), std::vector<S>(cols), S{}};
}

template <class S>
BoundaryData<S> BoundaryData<S>::of(const DoubleSeq<S>& x) {
  BoundaryData b;
  for (std::size_t k = 0; k < x.rows(); ++k) b.row0.push_back(x(k, 0));
  for (std::size_t l = 0; l < x.cols(); ++l) b.col0.push_back(x(0, l));
  b.corner = x(0, 0);
  return b;
}

template <class S>
void BoundaryData<S>::validate() const {
  if (row0.empty() || col0.empty()) throw InvalidArgument("boundary data is empty");
  if (!(row0[0] == corner) || !(col0[0] == corner)) throw InvalidArgument("boundary entries disagree at the corner");
}

template <class S>
DoubleSeq<S> forward_difference(const DoubleSeq<S>& x) {
  require_grid(x.rows(), x.cols(), "forward difference");
  const std::size_t rows = x.rows() - 1;
  const std::size_t cols = x.cols() - 1;
  std::vector<S> out(rows * cols);
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t n = 0; n < cols; ++n) out[m * cols + n] = x(m, n) - x(m + 1, n) - x(m, n + 1) + x(m + 1, n + 1);
  }
  std::optional<FamilyTag> t;
  if (x.family()) t = tag::forward_diff(*x.family());
  return DoubleSeq<S>(rows, cols, std::move(out), t);
}

template <class S>
DoubleSeq<S> inverse_difference(const DoubleSeq<S>& y, const BoundaryData<S>& boundary) {
  boundary.validate();
  const std::size_t rows = y.rows() + 1;
  const std::size_t cols = y.cols() + 1;
  if (boundary.row0.size() != rows || boundary.col0.size() != cols) {
    throw DimensionMismatch("boundary is " + std::to_string(boundary.row0.size()) + "x" +
                            std::to_string(boundary.col0.size()) + ", difference grid needs " + std::to_string(rows) +
                            "x" + std::to_string(cols));
  }
  std::vector<S> out(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) out[k * cols] = boundary.row0[k];
  for (std::size_t l = 0; l < cols; ++l) out[l] = boundary.col0[l];
  // x_kl - x_{k-1,l} - x_{k,l-1} + x_{k-1,l-1} = y_{k-1,l-1} reproduces the rectangle sums.
  for (std::size_t k = 1; k < rows; ++k) {
    for (std::size_t l = 1; l < cols; ++l) {
      out[k * cols + l] =
          y(k - 1, l - 1) + out[(k - 1) * cols + l] + out[k * cols + l - 1] - out[(k - 1) * cols + l - 1];
    }
  }
  return DoubleSeq<S>(rows, cols, std::move(out));
}

template <class S>
std::pair<S, S> telescoping_identity(const DoubleSeq<S>& x, std::size_t k, std::size_t l) {
  if (k + 1 >= x.rows() || l + 1 >= x.cols()) {
    throw InvalidArgument("telescoping index (" + std::to_string(k) + "," + std::to_string(l) +
                          ") out of range for " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  S lhs{};
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j <= l; ++j) lhs += x(i, j) - x(i + 1, j) - x(i, j + 1) + x(i + 1, j + 1);
  }
  S rhs = x(k + 1, l + 1) + x(0, 0) - x(k + 1, 0) - x(0, l + 1);
  return {lhs, rhs};
}

template <class S>
DoubleSeq<S> project_interior(const DoubleSeq<S>& x) {
  std::vector<S> out(x.data());
  for (std::size_t k = 0; k < x.rows(); ++k) out[k * x.cols()] = S{};
  for (std::size_t l = 0; l < x.cols(); ++l) out[l] = S{};
  std::optional<FamilyTag> t;
  if (x.family()) t = tag::projected(*x.family());
  return DoubleSeq<S>(x.rows(), x.cols(), std::move(out), t, x.name());
}

template <class S>
Verdict<S> delta_space_membership(const DoubleSeq<S>& x, SpaceSpec base, const DetectParams& params) {
  return space_membership(forward_difference(x), base, params);
}

template <class S>
NormValue<RealOf<S>> delta_norm(const DoubleSeq<S>& x) {
  require_grid(x.rows(), x.cols(), "delta norm");
  using R = RealOf<S>;
  R boundary2{};
  S boundary_arg{};
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t l = 0; l < x.cols(); ++l) {
      S v = x(k, 0) + x(0, l) - x(0, 0);
      R a = Tr<S>::abs2(v);
      if (a > boundary2) {
        boundary2 = a;
        boundary_arg = v;
      }
    }
  }
  DoubleSeq<S> d = forward_difference(x);
  R diff2{};
  S diff_arg{};
  for (const auto& v : d.data()) {
    R a = Tr<S>::abs2(v);
    if (a > diff2) {
      diff2 = a;
      diff_arg = v;
    }
  }
  bool e1 = false;
  bool e2 = false;
  NormValue<R> out;
  out.value = Tr<S>::abs(boundary_arg, &e1) + Tr<S>::abs(diff_arg, &e2);
  out.exact = e1 && e2;
  return out;
}

template <class S>
PairingCoefficients<S> PairingCoefficients<S>::from(const DoubleSeq<S>& a) {
  PairingCoefficients p;
  p.a = a;
  for (std::size_t k = 1; k < a.rows(); ++k) {
    for (std::size_t l = 1; l < a.cols(); ++l) {
      bool e = false;
      p.l1_norm += Tr<S>::abs(a(k, l), &e);
      p.l1_exact = p.l1_exact && e;
    }
  }
  if (a.family()) {
    if (const auto* s = std::get_if<SeparableTag>(&*a.family())) {
      auto u = abs_power_summable(s->rows, 1.0);
      auto v = abs_power_summable(s->cols, 1.0);
      bool zero = s->rows.identically_zero() || s->cols.identically_zero();
      p.tail_diverges = !zero && ((u && !*u) || (v && !*v));
    }
  }
  return p;
}

template <class S>
FunctionalValue<S> functional_apply(const PairingCoefficients<S>& a, const DoubleSeq<S>& x) {
  for (std::size_t k = 0; k < x.rows(); ++k) {
    if (!Tr<S>::is_zero(x(k, 0))) throw InvalidArgument("pairing needs x with zero row 0 and column 0");
  }
  for (std::size_t l = 0; l < x.cols(); ++l) {
    if (!Tr<S>::is_zero(x(0, l))) throw InvalidArgument("pairing needs x with zero row 0 and column 0");
  }
  using R = RealOf<S>;
  DoubleSeq<S> d = forward_difference(x);
  const std::size_t rows = std::min(d.rows(), a.a.rows());
  const std::size_t cols = std::min(d.cols(), a.a.cols());
  FunctionalValue<S> out;
  for (std::size_t k = 1; k < rows; ++k) {
    for (std::size_t l = 1; l < cols; ++l) out.value += a.a(k, l) * d(k, l);
  }
  R sup2{};
  S arg{};
  for (const auto& v : d.data()) {
    R m = Tr<S>::abs2(v);
    if (m > sup2) {
      sup2 = m;
      arg = v;
    }
  }
  bool exact = false;
  out.bound = Tr<S>::abs(arg, &exact) * a.l1_norm;
  exact = exact && a.l1_exact;
  R lhs = Tr<S>::abs2(out.value);
  R rhs = out.bound * out.bound;
  if (exact) {
    out.within = lhs <= rhs;
  } else {
    double slack = 1.0 + 1e-12;
    out.within = Tr<S>::to_double(lhs) <= Tr<S>::to_double(rhs) * slack * slack;
  }
  return out;
}

#define DSEQ_INSTANTIATE(S)                                                                                \
  template struct BoundaryData<S>;                                                                         \
  template struct PairingCoefficients<S>;                                                                  \
  template DoubleSeq<S> forward_difference<S>(const DoubleSeq<S>&);                                        \
  template DoubleSeq<S> inverse_difference<S>(const DoubleSeq<S>&, const BoundaryData<S>&);                \
  template std::pair<S, S> telescoping_identity<S>(const DoubleSeq<S>&, std::size_t, std::size_t);         \
  template DoubleSeq<S> project_interior<S>(const DoubleSeq<S>&);                                          \
  template Verdict<S> delta_space_membership<S>(const DoubleSeq<S>&, SpaceSpec, const DetectParams&);      \
  template NormValue<RealOf<S>> delta_norm<S>(const DoubleSeq<S>&);                                        \
  template FunctionalValue<S> functional_apply<S>(const PairingCoefficients<S>&, const DoubleSeq<S>&);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
