#include "dseq/family.hpp"

#include "dseq/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <tuple>

namespace dseq {

namespace {

ExactComplex term_value(const AxisTerm& t, std::size_t k) {
  if (t.power < 0 && k == 0) return {};
  ExactComplex v = t.coef * ipow(t.ratio, k);
  if (t.power == 0 || v.is_zero()) return v;
  mpz_class kp;
  mpz_ui_pow_ui(kp.get_mpz_t(), k, static_cast<unsigned long>(t.power < 0 ? -t.power : t.power));
  return t.power > 0 ? v * ExactComplex(Rational(kp)) : v / ExactComplex(Rational(kp));
}

bool term_less(const AxisTerm& a, const AxisTerm& b) {
  return std::tie(a.power, a.ratio.real(), a.ratio.imag()) < std::tie(b.power, b.ratio.real(), b.ratio.imag());
}

void normalize(std::vector<AxisTerm>& terms, std::map<std::size_t, ExactComplex>& corrections) {
  std::vector<AxisTerm> merged;
  for (auto& t : terms) {
    if (t.ratio.is_zero()) {
      // 0^k vanishes except at k = 0, where only the k^0 term survives.
      if (t.power == 0) corrections[0] += t.coef;
      continue;
    }
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const AxisTerm& m) { return m.power == t.power && m.ratio == t.ratio; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->coef += t.coef;
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const AxisTerm& t) { return t.coef.is_zero(); }),
               merged.end());
  std::sort(merged.begin(), merged.end(), term_less);
  terms = std::move(merged);
  for (auto it = corrections.begin(); it != corrections.end();) {
    it = it->second.is_zero() ? corrections.erase(it) : std::next(it);
  }
}

std::size_t extent(const AxisForm& a) {
  if (a.is_cumulative()) return extent(a.inner());
  return a.corrections().empty() ? 0 : a.corrections().rbegin()->first + 1;
}

/// Rebuilds corrections so the new terms reproduce truth(k) on the leading indices.
template <class Truth>
AxisForm rebuild(std::vector<AxisTerm> terms, std::size_t span, Truth truth) {
  AxisForm probe = AxisForm::closed(terms);
  std::map<std::size_t, ExactComplex> corrections;
  for (std::size_t k = 0; k <= span + 1; ++k) {
    ExactComplex diff = truth(k) - probe.term_sum(k);
    if (!diff.is_zero()) corrections[k] = diff;
  }
  return AxisForm::closed(std::move(terms), std::move(corrections));
}

Rational modulus2(const ExactComplex& z) { return z.norm(); }

bool is_one(const ExactComplex& z) { return z == ExactComplex(1); }

}  // namespace

AxisForm AxisForm::closed(std::vector<AxisTerm> terms, std::map<std::size_t, ExactComplex> corrections) {
  AxisForm a;
  normalize(terms, corrections);
  a.terms_ = std::move(terms);
  a.corrections_ = std::move(corrections);
  return a;
}

AxisForm AxisForm::cumulative(AxisForm inner) {
  AxisForm a;
  a.inner_ = std::make_shared<const AxisForm>(std::move(inner));
  return a;
}

AxisForm AxisForm::constant(const ExactComplex& c) { return closed({AxisTerm{c, 0, ExactComplex(1)}}); }

AxisForm AxisForm::power(int p, const ExactComplex& coef) { return closed({AxisTerm{coef, p, ExactComplex(1)}}); }

AxisForm AxisForm::geometric(const ExactComplex& ratio) { return closed({AxisTerm{ExactComplex(1), 0, ratio}}); }

AxisForm AxisForm::delta(std::size_t at) { return closed({}, {{at, ExactComplex(1)}}); }

ExactComplex AxisForm::term_sum(std::size_t k) const {
  ExactComplex s;
  for (const auto& t : terms_) s += term_value(t, k);
  return s;
}

ExactComplex AxisForm::value(std::size_t k) const {
  if (is_cumulative()) {
    ExactComplex s;
    for (std::size_t i = 0; i <= k; ++i) s += inner_->value(i);
    return s;
  }
  ExactComplex v = term_sum(k);
  auto it = corrections_.find(k);
  if (it != corrections_.end()) v += it->second;
  return v;
}

std::vector<ExactComplex> AxisForm::values(std::size_t count) const {
  std::vector<ExactComplex> out(count);
  if (is_cumulative()) {
    auto inner = inner_->values(count);
    ExactComplex s;
    for (std::size_t k = 0; k < count; ++k) {
      s += inner[k];
      out[k] = s;
    }
    return out;
  }
  for (const auto& t : terms_) {
    ExactComplex rk(1);
    for (std::size_t k = 0; k < count; ++k) {
      if (!(t.power < 0 && k == 0)) {
        ExactComplex v = t.coef * rk;
        if (t.power != 0 && !v.is_zero()) {
          mpz_class kp;
          mpz_ui_pow_ui(kp.get_mpz_t(), k, static_cast<unsigned long>(t.power < 0 ? -t.power : t.power));
          v = t.power > 0 ? v * ExactComplex(Rational(kp)) : v / ExactComplex(Rational(kp));
        }
        out[k] += v;
      }
      rk *= t.ratio;
    }
  }
  for (const auto& [k, c] : corrections_) {
    if (k < count) out[k] += c;
  }
  return out;
}

bool AxisForm::identically_zero() const {
  if (is_cumulative()) return inner_->identically_zero();
  return terms_.empty() && corrections_.empty();
}

std::string AxisForm::describe() const {
  if (is_cumulative()) return "cumsum(" + inner_->describe() + ")";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << t.coef << ')';
    if (t.power != 0) os << "*k^" << t.power;
    if (!is_one(t.ratio)) os << "*(" << t.ratio << ")^k";
  }
  for (const auto& [k, c] : corrections_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c << ")*[k=" << k << ']';
  }
  if (first) os << '0';
  return os.str();
}

namespace axis {

std::optional<AxisForm> scaled(const AxisForm& a, const ExactComplex& c) {
  if (c.is_zero()) return AxisForm::zero();
  if (a.is_cumulative()) {
    auto inner = scaled(a.inner(), c);
    if (!inner) return std::nullopt;
    return AxisForm::cumulative(*inner);
  }
  auto terms = a.terms();
  for (auto& t : terms) t.coef *= c;
  auto corrections = a.corrections();
  for (auto& [k, v] : corrections) v *= c;
  return AxisForm::closed(std::move(terms), std::move(corrections));
}

std::optional<AxisForm> product(const AxisForm& a, const AxisForm& b) {
  if (a.identically_zero() || b.identically_zero()) return AxisForm::zero();
  if (a.is_cumulative() || b.is_cumulative()) return std::nullopt;
  std::vector<AxisTerm> terms;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) terms.push_back({s.coef * t.coef, s.power + t.power, s.ratio * t.ratio});
  }
  return rebuild(std::move(terms), std::max(extent(a), extent(b)) + 1,
                 [&](std::size_t k) { return a.value(k) * b.value(k); });
}

std::optional<AxisForm> times_index(const AxisForm& a) {
  if (a.is_cumulative()) return std::nullopt;
  auto terms = a.terms();
  for (auto& t : terms) t.power += 1;
  return rebuild(std::move(terms), extent(a) + 1,
                 [&](std::size_t k) { return a.value(k) * ExactComplex(static_cast<long>(k)); });
}

std::optional<AxisForm> div_index(const AxisForm& a) {
  if (a.is_cumulative()) return std::nullopt;
  auto terms = a.terms();
  for (auto& t : terms) t.power -= 1;
  return rebuild(std::move(terms), extent(a) + 1, [&](std::size_t k) {
    return k == 0 ? a.value(0) : a.value(k) / ExactComplex(static_cast<long>(k));
  });
}

std::optional<AxisForm> forward_diff(const AxisForm& a) {
  if (a.is_cumulative()) return std::nullopt;
  std::vector<AxisTerm> terms;
  for (const auto& t : a.terms()) {
    if (t.power < 0) return std::nullopt;
    terms.push_back(t);
    mpz_class binom = 1;
    for (int j = 0; j <= t.power; ++j) {
      if (j > 0) {
        binom = binom * (t.power - j + 1) / j;
      }
      terms.push_back({-(t.coef * t.ratio * ExactComplex(Rational(binom))), j, t.ratio});
    }
  }
  return rebuild(std::move(terms), extent(a) + 1, [&](std::size_t k) { return a.value(k) - a.value(k + 1); });
}

std::optional<AxisForm> abs(const AxisForm& a) {
  if (a.is_cumulative() || a.terms().size() > 1) return std::nullopt;
  std::vector<AxisTerm> terms;
  if (!a.terms().empty()) {
    const auto& t = a.terms().front();
    if (!t.coef.is_real() || !t.ratio.is_real()) return std::nullopt;
    terms.push_back({ExactComplex(Rational(::abs(t.coef.real()))), t.power,
                     ExactComplex(Rational(::abs(t.ratio.real())))});
  }
  bool exact = true;
  std::size_t span = extent(a) + 1;
  for (std::size_t k = 0; k <= span + 1; ++k) {
    if (!a.value(k).is_real()) exact = false;
  }
  if (!exact) return std::nullopt;
  return rebuild(std::move(terms), span, [&](std::size_t k) {
    return ExactComplex(ScalarTraits<ExactComplex>::abs(a.value(k)));
  });
}

std::optional<AxisForm> projected(const AxisForm& a) {
  if (a.is_cumulative()) return std::nullopt;
  return rebuild(a.terms(), extent(a) + 1, [&](std::size_t k) { return k == 0 ? ExactComplex() : a.value(k); });
}

}  // namespace axis

std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::zero_tail: return "zero_tail";
    case Behavior::converges: return "converges";
    case Behavior::oscillates: return "oscillates";
    case Behavior::unbounded: return "unbounded";
    case Behavior::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

AxisBehavior make(Behavior kind, std::optional<ExactComplex> limit = std::nullopt) {
  AxisBehavior b;
  b.kind = kind;
  b.limit = std::move(limit);
  return b;
}

/// Largest |ratio|^2 among the terms.
Rational max_modulus2(const std::vector<AxisTerm>& terms) {
  Rational rho = 0;
  for (const auto& t : terms) rho = std::max(rho, modulus2(t.ratio));
  return rho;
}

Rational stirling2(int n, int k) {
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(n) + 1,
                                       std::vector<Rational>(static_cast<std::size_t>(n) + 1, Rational(0)));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) s[i][j] = Rational(j) * s[i - 1][j] + s[i - 1][j - 1];
  }
  return s[n][k];
}

/// Sum over k >= 0 of k^p r^k for p >= 0 and |r| < 1.
ExactComplex power_geometric_sum(int p, const ExactComplex& r) {
  ExactComplex total;
  ExactComplex one_minus = ExactComplex(1) - r;
  mpz_class fact = 1;
  for (int j = 0; j <= p; ++j) {
    if (j > 0) fact *= j;
    Rational s = stirling2(p, j);
    if (sgn(s) == 0) continue;
    total += ExactComplex(Rational(s * Rational(fact))) * ipow(r, static_cast<std::uint64_t>(j)) /
             ipow(one_minus, static_cast<std::uint64_t>(j) + 1);
  }
  return total;
}

ExactComplex corrections_sum(const AxisForm& a) {
  ExactComplex s;
  for (const auto& [k, c] : a.corrections()) s += c;
  return s;
}

}  // namespace

AxisBehavior classify(const AxisForm& a) {
  if (a.is_cumulative()) return classify_series(a.inner());
  AxisBehavior out;
  if (a.terms().empty()) {
    out = make(Behavior::zero_tail, ExactComplex());
    out.identically_zero = a.corrections().empty();
    return out;
  }
  Rational rho = max_modulus2(a.terms());
  if (rho < 1) return make(Behavior::converges, ExactComplex());
  if (rho > 1) return make(Behavior::unbounded);
  int dmax = std::numeric_limits<int>::min();
  for (const auto& t : a.terms()) {
    if (modulus2(t.ratio) == 1) dmax = std::max(dmax, t.power);
  }
  if (dmax > 0) return make(Behavior::unbounded);
  if (dmax < 0) return make(Behavior::converges, ExactComplex());
  std::vector<const AxisTerm*> lead;
  for (const auto& t : a.terms()) {
    if (modulus2(t.ratio) == 1 && t.power == 0) lead.push_back(&t);
  }
  if (lead.size() == 1 && is_one(lead.front()->ratio)) return make(Behavior::converges, lead.front()->coef);
  return make(Behavior::oscillates);
}

AxisBehavior classify_series(const AxisForm& a) {
  if (a.is_cumulative()) {
    if (!a.identically_zero()) return {};
    AxisBehavior out = make(Behavior::zero_tail, ExactComplex());
    out.identically_zero = true;
    return out;
  }
  ExactComplex corr = corrections_sum(a);
  if (a.terms().empty()) {
    AxisBehavior out = make(corr.is_zero() ? Behavior::zero_tail : Behavior::converges, corr);
    out.identically_zero = a.corrections().empty();
    return out;
  }
  bool unbounded = false;
  bool oscillates = false;
  bool limit_known = true;
  ExactComplex limit = corr;
  for (const auto& t : a.terms()) {
    Rational m2 = modulus2(t.ratio);
    if (m2 < 1) {
      if (t.power >= 0) {
        limit += t.coef * power_geometric_sum(t.power, t.ratio);
      } else {
        limit_known = false;
      }
    } else if (m2 > 1) {
      unbounded = true;
    } else if (is_one(t.ratio)) {
      if (t.power < -1) {
        limit_known = false;
      } else {
        unbounded = true;
      }
    } else if (t.power < 0) {
      limit_known = false;
    } else if (t.power == 0) {
      oscillates = true;
    } else {
      unbounded = true;
    }
  }
  if (unbounded) return make(Behavior::unbounded);
  if (oscillates) return make(Behavior::oscillates);
  return make(Behavior::converges, limit_known ? std::optional<ExactComplex>(limit) : std::nullopt);
}

std::optional<bool> tail_abs_summable(const AxisForm& a) {
  if (a.is_cumulative()) return std::nullopt;
  AxisBehavior series = classify_series(a);
  if (!series.known()) return std::nullopt;
  if (!series.convergent()) return false;
  for (const auto& t : a.terms()) {
    Rational m2 = modulus2(t.ratio);
    if (m2 < 1) continue;
    if (is_one(t.ratio) ? t.power >= -2 : t.power >= -1) return false;
  }
  return true;
}

AxisBehavior weighted_tail(const AxisForm& a) {
  if (a.is_cumulative()) return {};
  AxisBehavior series = classify_series(a);
  if (!series.convergent()) return {};
  if (a.terms().empty()) return make(Behavior::zero_tail, ExactComplex());
  bool oscillates = false;
  ExactComplex limit;
  for (const auto& t : a.terms()) {
    if (modulus2(t.ratio) < 1) continue;
    if (is_one(t.ratio)) {
      if (t.power == -2) limit += t.coef;
    } else if (t.power == -1) {
      oscillates = true;
    }
  }
  if (oscillates) return make(Behavior::oscillates);
  return make(Behavior::converges, limit);
}

std::optional<bool> abs_power_summable(const AxisForm& a, double q) {
  if (a.is_cumulative()) return std::nullopt;
  if (a.terms().empty()) return true;
  Rational rho = max_modulus2(a.terms());
  if (rho < 1) return true;
  if (rho > 1) return false;
  int dmax = std::numeric_limits<int>::min();
  for (const auto& t : a.terms()) {
    if (modulus2(t.ratio) == 1) dmax = std::max(dmax, t.power);
  }
  return static_cast<double>(dmax) * q < -1.0;
}

AxisBehavior combine_product(const AxisBehavior& u, const AxisBehavior& v) {
  if (u.identically_zero || v.identically_zero) {
    AxisBehavior z = make(Behavior::zero_tail, ExactComplex());
    z.identically_zero = true;
    return z;
  }
  if (u.kind == Behavior::zero_tail || v.kind == Behavior::zero_tail) return make(Behavior::zero_tail, ExactComplex());
  if (!u.known() || !v.known()) return {};
  if (u.convergent() && v.convergent()) {
    if (u.limit && v.limit) return make(Behavior::converges, *u.limit * *v.limit);
    return make(Behavior::converges);
  }
  // Exactly one side converges, or neither does.
  const AxisBehavior& conv = u.convergent() ? u : v;
  const AxisBehavior& other = u.convergent() ? v : u;
  if (u.convergent() || v.convergent()) {
    if (!conv.limit) return {};
    if (conv.limit->is_zero()) {
      return other.kind == Behavior::oscillates ? make(Behavior::converges, ExactComplex())
                                                : make(Behavior::unbounded);
    }
    return make(other.kind);
  }
  if (u.kind == Behavior::unbounded || v.kind == Behavior::unbounded) return make(Behavior::unbounded);
  return make(Behavior::oscillates);
}

namespace tag {

namespace {
bool tag_zero(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return s->rows.identically_zero() || s->cols.identically_zero();
  if (const auto* f = std::get_if<FiniteSupportTag>(&t)) return f->rows == 0 || f->cols == 0;
  return false;
}

template <class F>
std::optional<FamilyTag> both_axes(const SeparableTag& s, F f) {
  auto r = f(s.rows);
  auto c = f(s.cols);
  if (!r || !c) return std::nullopt;
  return FamilyTag{SeparableTag{std::move(*r), std::move(*c)}};
}
}  // namespace

std::optional<FamilyTag> scaled(const FamilyTag& t, const ExactComplex& c) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) {
    auto r = axis::scaled(s->rows, c);
    if (!r) return std::nullopt;
    return FamilyTag{SeparableTag{*r, s->cols}};
  }
  if (c.is_zero()) return FamilyTag{FiniteSupportTag{0, 0}};
  return t;
}

std::optional<FamilyTag> sum(const FamilyTag& a, const FamilyTag& b) {
  if (tag_zero(a)) return b;
  if (tag_zero(b)) return a;
  const auto* fa = std::get_if<FiniteSupportTag>(&a);
  const auto* fb = std::get_if<FiniteSupportTag>(&b);
  if (fa != nullptr && fb != nullptr) return FamilyTag{FiniteSupportTag{std::max(fa->rows, fb->rows), std::max(fa->cols, fb->cols)}};
  const auto* ca = std::get_if<ClampedTag>(&a);
  const auto* cb = std::get_if<ClampedTag>(&b);
  if (ca != nullptr && cb != nullptr) return FamilyTag{ClampedTag{std::max(ca->rows, cb->rows), std::max(ca->cols, cb->cols)}};
  return std::nullopt;
}

std::optional<FamilyTag> product(const FamilyTag& a, const FamilyTag& b) {
  if (tag_zero(a) || tag_zero(b)) return FamilyTag{FiniteSupportTag{0, 0}};
  const auto* fa = std::get_if<FiniteSupportTag>(&a);
  const auto* fb = std::get_if<FiniteSupportTag>(&b);
  if (fa != nullptr && fb != nullptr) return FamilyTag{FiniteSupportTag{std::min(fa->rows, fb->rows), std::min(fa->cols, fb->cols)}};
  if (fa != nullptr) return a;
  if (fb != nullptr) return b;
  const auto* sa = std::get_if<SeparableTag>(&a);
  const auto* sb = std::get_if<SeparableTag>(&b);
  if (sa != nullptr && sb != nullptr) {
    auto r = axis::product(sa->rows, sb->rows);
    auto c = axis::product(sa->cols, sb->cols);
    if (!r || !c) return std::nullopt;
    return FamilyTag{SeparableTag{*r, *c}};
  }
  const auto* ca = std::get_if<ClampedTag>(&a);
  const auto* cb = std::get_if<ClampedTag>(&b);
  if (ca != nullptr && cb != nullptr) return FamilyTag{ClampedTag{std::max(ca->rows, cb->rows), std::max(ca->cols, cb->cols)}};
  return std::nullopt;
}

std::optional<FamilyTag> times_index(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return both_axes(*s, axis::times_index);
  if (std::holds_alternative<FiniteSupportTag>(t)) return t;
  return std::nullopt;
}

std::optional<FamilyTag> div_index(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) {
    // The boundary passes through unchanged, which only factorizes when it is zero.
    if (!s->rows.value(0).is_zero() || !s->cols.value(0).is_zero()) {
      if (!tag_zero(t)) return std::nullopt;
    }
    return both_axes(*s, axis::div_index);
  }
  if (std::holds_alternative<FiniteSupportTag>(t)) return t;
  return std::nullopt;
}

std::optional<FamilyTag> forward_diff(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return both_axes(*s, axis::forward_diff);
  if (std::holds_alternative<FiniteSupportTag>(t)) return t;
  const auto& c = std::get<ClampedTag>(t);
  return FamilyTag{FiniteSupportTag{c.rows == 0 ? 0 : c.rows - 1, c.cols == 0 ? 0 : c.cols - 1}};
}

std::optional<FamilyTag> abs(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return both_axes(*s, axis::abs);
  return t;
}

std::optional<FamilyTag> abs_power(const FamilyTag& t, int q) {
  if (q < 1) return std::nullopt;
  auto base = abs(t);
  if (!base) return std::nullopt;
  FamilyTag acc = *base;
  for (int i = 1; i < q; ++i) {
    auto next = product(acc, *base);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

std::optional<FamilyTag> projected(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return both_axes(*s, axis::projected);
  if (std::holds_alternative<FiniteSupportTag>(t)) return t;
  const auto& c = std::get<ClampedTag>(t);
  return FamilyTag{ClampedTag{std::max<std::size_t>(c.rows, 2), std::max<std::size_t>(c.cols, 2)}};
}

std::optional<FamilyTag> cumulative(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) {
    if (s->rows.is_cumulative() || s->cols.is_cumulative()) return std::nullopt;
    return FamilyTag{SeparableTag{AxisForm::cumulative(s->rows), AxisForm::cumulative(s->cols)}};
  }
  if (const auto* f = std::get_if<FiniteSupportTag>(&t)) {
    return FamilyTag{ClampedTag{std::max<std::size_t>(f->rows, 1), std::max<std::size_t>(f->cols, 1)}};
  }
  return std::nullopt;
}

std::string describe(const FamilyTag& t) {
  if (const auto* s = std::get_if<SeparableTag>(&t)) return "[" + s->rows.describe() + "] x [" + s->cols.describe() + "]";
  if (const auto* f = std::get_if<FiniteSupportTag>(&t)) {
    return "support " + std::to_string(f->rows) + "x" + std::to_string(f->cols);
  }
  const auto& c = std::get<ClampedTag>(t);
  return "clamped " + std::to_string(c.rows) + "x" + std::to_string(c.cols);
}

}  // namespace tag

GridAnalysis analyze_product(const AxisBehavior& u, const AxisBehavior& v) {
  GridAnalysis g;
  AxisBehavior p = combine_product(u, v);
  g.pringsheim = p.kind;
  g.limit = p.limit;
  if (u.identically_zero || v.identically_zero) {
    g.bounded = g.rows_converge = g.cols_converge = true;
    return g;
  }
  if (u.known() && v.known()) g.bounded = u.bounded() && v.bounded();
  if (v.known()) g.rows_converge = v.convergent();
  if (u.known()) g.cols_converge = u.convergent();
  return g;
}

GridAnalysis analyze(const FamilyTag& t) {
  GridAnalysis g;
  if (const auto* f = std::get_if<FiniteSupportTag>(&t)) {
    (void)f;
    g.pringsheim = Behavior::zero_tail;
    g.limit = ExactComplex();
    g.bounded = g.rows_converge = g.cols_converge = true;
    return g;
  }
  if (const auto* c = std::get_if<ClampedTag>(&t)) {
    g.pringsheim = Behavior::converges;
    g.limit_at = std::make_pair(c->rows - 1, c->cols - 1);
    g.bounded = g.rows_converge = g.cols_converge = true;
    return g;
  }
  const auto& s = std::get<SeparableTag>(t);
  AxisBehavior u = classify(s.rows);
  AxisBehavior v = classify(s.cols);
  u.identically_zero = s.rows.identically_zero();
  v.identically_zero = s.cols.identically_zero();
  return analyze_product(u, v);
}

}  // namespace dseq
