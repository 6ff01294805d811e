#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dseq {

using Rational = mpq_class;
using FloatComplex = std::complex<double>;

enum class Mode { float64, exact };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Complex number with exact rational real and imaginary parts.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(int value) : re_(value) {}   // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// re^2 + im^2, always exact.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
  ExactComplex conj() const { return {re_, Rational(-im_)}; }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);
  /// *this += a * b.
  void add_product(const ExactComplex& a, const ExactComplex& b);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {Rational(-a.re_), Rational(-a.im_)}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parses "p/q", integers and decimal literals (with optional exponent) exactly.
Rational parse_rational(std::string_view text);
/// Parses "re+imj", "re", "imj" with rational or decimal parts.
ExactComplex parse_exact_complex(std::string_view text);
FloatComplex parse_float_complex(std::string_view text);

std::string format_rational(const Rational& q);
std::string format_complex(const ExactComplex& z);
std::string format_complex(const FloatComplex& z);
std::string format_real(const Rational& q);
std::string format_real(double x);

FloatComplex to_float(const ExactComplex& z);
Rational rational_from_double(double x);

/// Per-scalar-type operations used by the generic algorithms.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<FloatComplex> {
  using real_type = double;
  static constexpr Mode mode = Mode::float64;

  static FloatComplex from_exact(const ExactComplex& z) { return to_float(z); }
  static FloatComplex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static FloatComplex from_real(double r) { return {r, 0.0}; }
  static double abs2(const FloatComplex& z) { return std::norm(z); }
  static double abs(const FloatComplex& z, bool* exact = nullptr) {
    if (exact != nullptr) *exact = false;
    return std::abs(z);
  }
  static bool is_zero(const FloatComplex& z) { return z == FloatComplex{}; }
  static double real_from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static FloatComplex to_complex(const FloatComplex& z) { return z; }
  static std::string format(const FloatComplex& z) { return format_complex(z); }
  static std::string format_real(double x) { return dseq::format_real(x); }
  static FloatComplex parse(std::string_view s) { return parse_float_complex(s); }
};

template <>
struct ScalarTraits<ExactComplex> {
  using real_type = Rational;
  static constexpr Mode mode = Mode::exact;

  static ExactComplex from_exact(const ExactComplex& z) { return z; }
  static ExactComplex from_int(long v) { return ExactComplex(v); }
  static ExactComplex from_real(const Rational& r) { return ExactComplex(r); }
  static Rational abs2(const ExactComplex& z) { return z.norm(); }
  /// Exact for real entries; entries with a nonzero imaginary part fall back to the
  /// rational value of the rounded double modulus and clear *exact.
  static Rational abs(const ExactComplex& z, bool* exact = nullptr);
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static Rational real_from_double(double x) { return rational_from_double(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static FloatComplex to_complex(const ExactComplex& z) { return to_float(z); }
  static std::string format(const ExactComplex& z) { return format_complex(z); }
  static std::string format_real(const Rational& x) { return dseq::format_real(x); }
  static ExactComplex parse(std::string_view s) { return parse_exact_complex(s); }
};

template <class S>
using RealOf = typename ScalarTraits<S>::real_type;

/// base^exp by repeated squaring; keeps (-1)^k exact in float mode.
template <class S>
S ipow(S base, std::uint64_t exp) {
  S result = ScalarTraits<S>::from_int(1);
  while (exp != 0) {
    if ((exp & 1U) != 0U) result *= base;
    exp >>= 1U;
    if (exp != 0) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

}  // namespace dseq
