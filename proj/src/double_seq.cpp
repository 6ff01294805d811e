#include "dseq/double_seq.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace dseq {

template <>
ExactComplex to_exact<ExactComplex>(const ExactComplex& z) {
  return z;
}

template <>
ExactComplex to_exact<FloatComplex>(const FloatComplex& z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

template <class S>
DoubleSeq<S>::DoubleSeq(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

template <class S>
DoubleSeq<S>::DoubleSeq(std::size_t rows, std::size_t cols, std::vector<S> data, std::optional<FamilyTag> family,
                        std::string name)
    : rows_(rows), cols_(cols), data_(std::move(data)), family_(std::move(family)), name_(std::move(name)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("grid data has " + std::to_string(data_.size()) + " entries, expected " +
                            std::to_string(rows * cols));
  }
}

template <class S>
DoubleSeq<S> DoubleSeq<S>::restrict(std::size_t rows, std::size_t cols) const {
  if (rows > rows_ || cols > cols_) throw DimensionMismatch("restriction larger than the grid");
  std::vector<S> out;
  out.reserve(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t l = 0; l < cols; ++l) out.push_back((*this)(k, l));
  }
  DoubleSeq r(rows, cols, std::move(out), family_, name_);
  r.boundary_flagged_ = boundary_flagged_;
  return r;
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::constant: return "constant";
    case FamilyKind::ones: return "e";
    case FamilyKind::boos: return "boos";
    case FamilyKind::monomial: return "monomial";
    case FamilyKind::geometric: return "geometric";
    case FamilyKind::alternating: return "alternating";
    case FamilyKind::basis_point: return "basis_point";
    case FamilyKind::basis_row: return "basis_row";
    case FamilyKind::basis_col: return "basis_col";
    case FamilyKind::table: return "table";
    case FamilyKind::random_support: return "random_support";
  }
  return "unknown";
}

FamilyKind parse_family_kind(const std::string& text) {
  static const std::pair<const char*, FamilyKind> names[] = {
      {"constant", FamilyKind::constant},       {"zero", FamilyKind::constant},
      {"e", FamilyKind::ones},                  {"ones", FamilyKind::ones},
      {"boos", FamilyKind::boos},               {"monomial", FamilyKind::monomial},
      {"geometric", FamilyKind::geometric},     {"alternating", FamilyKind::alternating},
      {"basis_point", FamilyKind::basis_point}, {"basis_row", FamilyKind::basis_row},
      {"basis_col", FamilyKind::basis_col},     {"table", FamilyKind::table},
      {"random_support", FamilyKind::random_support},
  };
  for (const auto& [name, kind] : names) {
    if (text == name) return kind;
  }
  throw InvalidArgument("unknown family '" + text + "'");
}

FamilySpec FamilySpec::constant(const ExactComplex& c) {
  FamilySpec f;
  f.kind = FamilyKind::constant;
  f.coef = c;
  return f;
}

FamilySpec FamilySpec::ones() { return {}; }

FamilySpec FamilySpec::boos() {
  FamilySpec f;
  f.kind = FamilyKind::boos;
  return f;
}

FamilySpec FamilySpec::monomial(int a, int b, const ExactComplex& c) {
  FamilySpec f;
  f.kind = FamilyKind::monomial;
  f.row_power = a;
  f.col_power = b;
  f.coef = c;
  return f;
}

FamilySpec FamilySpec::geometric(const ExactComplex& r, const ExactComplex& s, const ExactComplex& c) {
  FamilySpec f;
  f.kind = FamilyKind::geometric;
  f.row_ratio = r;
  f.col_ratio = s;
  f.coef = c;
  return f;
}

FamilySpec FamilySpec::alternating() {
  FamilySpec f;
  f.kind = FamilyKind::alternating;
  return f;
}

FamilySpec FamilySpec::basis_point(std::size_t k, std::size_t l) {
  FamilySpec f;
  f.kind = FamilyKind::basis_point;
  f.k0 = k;
  f.l0 = l;
  return f;
}

FamilySpec FamilySpec::basis_row(std::size_t k) {
  FamilySpec f;
  f.kind = FamilyKind::basis_row;
  f.k0 = k;
  return f;
}

FamilySpec FamilySpec::basis_col(std::size_t l) {
  FamilySpec f;
  f.kind = FamilyKind::basis_col;
  f.l0 = l;
  return f;
}

FamilySpec FamilySpec::from_table(std::vector<std::vector<ExactComplex>> rows) {
  FamilySpec f;
  f.kind = FamilyKind::table;
  f.table = std::move(rows);
  return f;
}

FamilySpec FamilySpec::random_support(std::uint64_t seed, std::size_t support) {
  FamilySpec f;
  f.kind = FamilyKind::random_support;
  f.seed = seed;
  f.support = support;
  return f;
}

FamilySpec FamilySpec::with_projection() const {
  FamilySpec f = *this;
  f.projected = true;
  return f;
}

namespace {

std::string short_form(const ExactComplex& z) {
  return z.is_real() ? format_rational(z.real()) : format_complex(z);
}

}  // namespace

std::string FamilySpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::constant: os << "constant(" << short_form(coef) << ")"; break;
    case FamilyKind::ones: os << "e"; break;
    case FamilyKind::boos: os << "boos"; break;
    case FamilyKind::monomial:
      os << "monomial(";
      if (!(coef == ExactComplex(1))) os << short_form(coef) << "*";
      os << "k^" << row_power << "*l^" << col_power << ")";
      break;
    case FamilyKind::geometric: os << "geometric(" << short_form(coef) << "," << short_form(row_ratio) << "," << short_form(col_ratio) << ")"; break;
    case FamilyKind::alternating: os << "alternating"; break;
    case FamilyKind::basis_point: os << "e^{" << k0 << "," << l0 << "}"; break;
    case FamilyKind::basis_row: os << "e_" << k0; break;
    case FamilyKind::basis_col: os << "e^" << l0; break;
    case FamilyKind::table: os << "table(" << table.size() << " rows)"; break;
    case FamilyKind::random_support: os << "random_support(seed=" << seed << ",n=" << support << ")"; break;
  }
  if (projected) return "P(" + os.str() + ")";
  return os.str();
}

namespace {

std::vector<std::vector<ExactComplex>> random_table(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<ExactComplex>> t(n, std::vector<ExactComplex>(n));
  for (auto& row : t) {
    for (auto& v : row) {
      long num = static_cast<long>(rng() % 19) - 9;
      long den = static_cast<long>(rng() % 9) + 1;
      v = ExactComplex(Rational(num, den));
    }
  }
  return t;
}

std::vector<std::vector<ExactComplex>> family_table(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::random_support) return random_table(spec.seed, spec.support);
  return spec.table;
}

}  // namespace

std::optional<FamilyTag> FamilySpec::closed_form() const {
  std::optional<FamilyTag> t;
  auto sep = [](AxisForm u, AxisForm v) { return FamilyTag{SeparableTag{std::move(u), std::move(v)}}; };
  switch (kind) {
    case FamilyKind::constant: t = sep(AxisForm::constant(coef), AxisForm::constant(ExactComplex(1))); break;
    case FamilyKind::ones: t = sep(AxisForm::constant(ExactComplex(1)), AxisForm::constant(ExactComplex(1))); break;
    case FamilyKind::boos: t = sep(AxisForm::delta(0), AxisForm::power(1)); break;
    case FamilyKind::monomial: t = sep(AxisForm::power(row_power, coef), AxisForm::power(col_power)); break;
    case FamilyKind::geometric:
      t = sep(AxisForm::closed({AxisTerm{coef, 0, row_ratio}}), AxisForm::geometric(col_ratio));
      break;
    case FamilyKind::alternating:
      t = sep(AxisForm::geometric(ExactComplex(-1)), AxisForm::geometric(ExactComplex(-1)));
      break;
    case FamilyKind::basis_point: t = sep(AxisForm::delta(k0), AxisForm::delta(l0)); break;
    case FamilyKind::basis_row: t = sep(AxisForm::delta(k0), AxisForm::constant(ExactComplex(1))); break;
    case FamilyKind::basis_col: t = sep(AxisForm::constant(ExactComplex(1)), AxisForm::delta(l0)); break;
    case FamilyKind::table:
    case FamilyKind::random_support: {
      auto tab = family_table(*this);
      std::size_t cols = 0;
      for (const auto& r : tab) cols = std::max(cols, r.size());
      t = FamilyTag{FiniteSupportTag{tab.size(), cols}};
      break;
    }
  }
  if (t && projected) t = tag::projected(*t);
  return t;
}

template <class S>
DoubleSeq<S> make_family(const FamilySpec& spec, std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) throw InvalidArgument("family truncation bounds must be at least 2");
  auto tag = spec.closed_form();
  std::vector<S> data(rows * cols);
  if (spec.kind == FamilyKind::table || spec.kind == FamilyKind::random_support) {
    auto tab = family_table(spec);
    for (std::size_t k = 0; k < rows && k < tab.size(); ++k) {
      for (std::size_t l = 0; l < cols && l < tab[k].size(); ++l) data[k * cols + l] = ScalarTraits<S>::from_exact(tab[k][l]);
    }
    if (spec.projected) {
      for (std::size_t k = 0; k < rows; ++k) data[k * cols] = S{};
      for (std::size_t l = 0; l < cols; ++l) data[l] = S{};
    }
  } else {
    const auto& s = std::get<SeparableTag>(*tag);
    auto u = s.rows.values(rows);
    auto v = s.cols.values(cols);
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t l = 0; l < cols; ++l) data[k * cols + l] = ScalarTraits<S>::from_exact(u[k] * v[l]);
    }
  }
  return DoubleSeq<S>(rows, cols, std::move(data), tag, spec.label());
}

namespace {

template <class S>
void require_same_shape(const DoubleSeq<S>& x, const DoubleSeq<S>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionMismatch("truncation mismatch: " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                            " vs " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
}

template <class T, class F>
std::optional<T> lift2(const std::optional<T>& a, const std::optional<T>& b, F f) {
  if (!a || !b) return std::nullopt;
  return f(*a, *b);
}

}  // namespace

template <class S>
DoubleSeq<S> pointwise(PointwiseOp op, const DoubleSeq<S>& x, const DoubleSeq<S>& y) {
  if (op == PointwiseOp::scale) throw InvalidArgument("scale takes a scalar operand");
  require_same_shape(x, y);
  std::vector<S> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const S& a = x.data()[i];
    const S& b = y.data()[i];
    switch (op) {
      case PointwiseOp::add: out[i] = a + b; break;
      case PointwiseOp::sub: out[i] = a - b; break;
      default: out[i] = a * b; break;
    }
  }
  std::optional<FamilyTag> t;
  switch (op) {
    case PointwiseOp::add: t = lift2(x.family(), y.family(), tag::sum); break;
    case PointwiseOp::sub:
      t = lift2(x.family(), y.family(), [](const FamilyTag& a, const FamilyTag& b) -> std::optional<FamilyTag> {
        auto nb = tag::scaled(b, ExactComplex(-1));
        if (!nb) return std::nullopt;
        return tag::sum(a, *nb);
      });
      break;
    default: t = lift2(x.family(), y.family(), tag::product); break;
  }
  return DoubleSeq<S>(x.rows(), x.cols(), std::move(out), t);
}

template <class S>
DoubleSeq<S> pointwise(PointwiseOp op, const DoubleSeq<S>& x, const S& c) {
  if (op != PointwiseOp::scale) throw InvalidArgument("only scale takes a scalar operand");
  std::vector<S> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.data()[i] * c;
  std::optional<FamilyTag> t;
  if (x.family()) t = tag::scaled(*x.family(), to_exact(c));
  return DoubleSeq<S>(x.rows(), x.cols(), std::move(out), t);
}

template <class S>
DoubleSeq<S> scale_by_index(const DoubleSeq<S>& x, IndexScaling direction) {
  std::vector<S> out(x.data());
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t l = 0; l < x.cols(); ++l) {
      S w = ScalarTraits<S>::from_int(static_cast<long>(k * l));
      S& v = out[k * x.cols() + l];
      if (direction == IndexScaling::integral) {
        v = v * w;
      } else if (k > 0 && l > 0) {
        v = v / w;
      }
    }
  }
  std::optional<FamilyTag> t;
  if (x.family()) t = direction == IndexScaling::integral ? tag::times_index(*x.family()) : tag::div_index(*x.family());
  DoubleSeq<S> r(x.rows(), x.cols(), std::move(out), t);
  r.set_boundary_flagged(direction == IndexScaling::d || x.boundary_flagged());
  return r;
}

DoubleSeq<FloatComplex> to_float_seq(const DoubleSeq<ExactComplex>& x) {
  std::vector<FloatComplex> out;
  out.reserve(x.size());
  for (const auto& v : x.data()) out.push_back(to_float(v));
  DoubleSeq<FloatComplex> r(x.rows(), x.cols(), std::move(out), x.family(), x.name());
  r.set_boundary_flagged(x.boundary_flagged());
  return r;
}

template <class S>
void write_csv(std::ostream& os, const DoubleSeq<S>& x) {
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t l = 0; l < x.cols(); ++l) {
      if (l > 0) os << ',';
      os << ScalarTraits<S>::format(x(k, l));
    }
    os << '\n';
  }
}

template <class S>
DoubleSeq<S> read_csv(std::istream& is) {
  std::vector<S> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      data.push_back(ScalarTraits<S>::parse(field));
      ++count;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("csv row " + std::to_string(rows) + " has " + std::to_string(count) + " fields, expected " +
                       std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("csv grid is empty");
  return DoubleSeq<S>(rows, cols, std::move(data));
}

#define DSEQ_INSTANTIATE(S)                                                                  \
  template class DoubleSeq<S>;                                                               \
  template DoubleSeq<S> make_family<S>(const FamilySpec&, std::size_t, std::size_t);        \
  template DoubleSeq<S> pointwise<S>(PointwiseOp, const DoubleSeq<S>&, const DoubleSeq<S>&); \
  template DoubleSeq<S> pointwise<S>(PointwiseOp, const DoubleSeq<S>&, const S&);            \
  template DoubleSeq<S> scale_by_index<S>(const DoubleSeq<S>&, IndexScaling);                \
  template void write_csv<S>(std::ostream&, const DoubleSeq<S>&);                            \
  template DoubleSeq<S> read_csv<S>(std::istream&);

DSEQ_INSTANTIATE(FloatComplex)
DSEQ_INSTANTIATE(ExactComplex)

}  // namespace dseq
