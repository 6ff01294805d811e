#include "dseq/scalar.hpp"

#include "dseq/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace dseq {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "float" || text == "float64") return Mode::float64;
  throw InvalidArgument("unknown mode '" + std::string(text) + "' (expected exact or float)");
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

void ExactComplex::add_product(const ExactComplex& a, const ExactComplex& b) {
  thread_local Rational t;
  auto fma = [](Rational& acc, const Rational& x, const Rational& y, bool subtract) {
    if (sgn(x) == 0 || sgn(y) == 0) return;
    mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    if (subtract) {
      mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
    } else {
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
    }
  };
  fma(re_, a.re_, b.re_, false);
  fma(re_, a.im_, b.im_, true);
  fma(im_, a.re_, b.im_, false);
  fma(im_, a.im_, b.re_, false);
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  Rational den = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw ParseError("malformed number '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) bad_number(whole);
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') bad_number(whole);
    std::string_view exp_text = text.substr(i + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) bad_number(whole);
  }
  mpz_class num(digits, 10);
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_number(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  Rational num = parse_decimal(trim(s.substr(0, slash)), text);
  Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
  if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num / den);
}

namespace {

template <class Part, class ParsePart>
std::pair<Part, Part> split_complex(std::string_view text, Part one, ParsePart parse_part) {
  std::string_view s = trim(text);
  if (s.empty()) bad_number(text);
  if (s.back() != 'j' && s.back() != 'i') return {parse_part(s), Part(0)};
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '/') {
      split = i;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? s : s.substr(split);
  Part im = one;
  if (im_text == "-") {
    im = Part(-one);
  } else if (!im_text.empty() && im_text != "+") {
    im = parse_part(im_text);
  }
  Part re = re_text.empty() ? Part(0) : parse_part(re_text);
  return {re, im};
}

}  // namespace

ExactComplex parse_exact_complex(std::string_view text) {
  auto [re, im] = split_complex<Rational>(text, Rational(1), [](std::string_view p) { return parse_rational(p); });
  return {re, im};
}

FloatComplex parse_float_complex(std::string_view text) {
  auto parse_part = [&](std::string_view p) -> double {
    if (p.find('/') != std::string_view::npos) return parse_rational(p).get_d();
    std::string_view t = trim(p);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) bad_number(text);
    return value;
  };
  auto [re, im] = split_complex<double>(text, 1.0, parse_part);
  return {re, im};
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

std::string format_real(const Rational& q) { return format_rational(q); }

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return std::to_string(x);
  return {buf, ptr};
}

std::string format_complex(const ExactComplex& z) {
  std::string out = format_rational(z.real());
  if (sgn(z.imag()) >= 0) out += '+';
  out += format_rational(z.imag());
  out += 'j';
  return out;
}

std::string format_complex(const FloatComplex& z) {
  std::string out = format_real(z.real());
  if (!std::signbit(z.imag()) || std::isnan(z.imag())) out += '+';
  out += format_real(z.imag());
  out += 'j';
  return out;
}

FloatComplex to_float(const ExactComplex& z) { return {z.real().get_d(), z.imag().get_d()}; }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value has no rational form");
  return Rational(x);
}

Rational ScalarTraits<ExactComplex>::abs(const ExactComplex& z, bool* exact) {
  if (z.is_real()) {
    if (exact != nullptr) *exact = true;
    return Rational(::abs(z.real()));
  }
  Rational n = z.norm();
  if (mpz_perfect_square_p(n.get_num_mpz_t()) != 0 && mpz_perfect_square_p(n.get_den_mpz_t()) != 0) {
    mpz_class num;
    mpz_class den;
    mpz_sqrt(num.get_mpz_t(), n.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), n.get_den_mpz_t());
    if (exact != nullptr) *exact = true;
    return Rational(num, den);
  }
  if (exact != nullptr) *exact = false;
  return rational_from_double(std::sqrt(n.get_d()));
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << format_complex(z); }

}  // namespace dseq
