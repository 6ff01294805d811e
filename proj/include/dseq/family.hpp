#pragma once

// Closed-form descriptions of double sequences and their asymptotic classification.
// A tag describes the infinite sequence behind a truncated grid; the detectors use it
// to decide questions that finite data alone cannot.

#include "dseq/scalar.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dseq {

/// coef * k^power * ratio^k, with k^p = 0 at k = 0 for p < 0 and 0^0 = 1.
struct AxisTerm {
  ExactComplex coef{1};
  int power = 0;
  ExactComplex ratio{1};
};

/// One-dimensional closed form: a finite sum of power-geometric terms plus finitely many
/// pointwise corrections, or the running sum of such a form.
class AxisForm {
 public:
  AxisForm() = default;

  static AxisForm closed(std::vector<AxisTerm> terms, std::map<std::size_t, ExactComplex> corrections = {});
  static AxisForm cumulative(AxisForm inner);
  static AxisForm zero() { return {}; }
  static AxisForm constant(const ExactComplex& c);
  static AxisForm power(int p, const ExactComplex& coef = ExactComplex(1));
  static AxisForm geometric(const ExactComplex& ratio);
  static AxisForm delta(std::size_t at);

  bool is_cumulative() const { return inner_ != nullptr; }
  const AxisForm& inner() const { return *inner_; }
  const std::vector<AxisTerm>& terms() const { return terms_; }
  const std::map<std::size_t, ExactComplex>& corrections() const { return corrections_; }

  ExactComplex value(std::size_t k) const;
  std::vector<ExactComplex> values(std::size_t count) const;
  ExactComplex term_sum(std::size_t k) const;
  bool identically_zero() const;
  std::string describe() const;

 private:
  std::vector<AxisTerm> terms_;
  std::map<std::size_t, ExactComplex> corrections_;
  std::shared_ptr<const AxisForm> inner_;
};

namespace axis {
std::optional<AxisForm> scaled(const AxisForm& a, const ExactComplex& c);
std::optional<AxisForm> product(const AxisForm& a, const AxisForm& b);
std::optional<AxisForm> times_index(const AxisForm& a);
/// a(k)/k for k >= 1; a(0) passes through.
std::optional<AxisForm> div_index(const AxisForm& a);
/// a(k) - a(k+1).
std::optional<AxisForm> forward_diff(const AxisForm& a);
std::optional<AxisForm> abs(const AxisForm& a);
/// Zero at index 0, a(k) elsewhere.
std::optional<AxisForm> projected(const AxisForm& a);
}  // namespace axis

enum class Behavior { zero_tail, converges, oscillates, unbounded, unknown };

std::string to_string(Behavior b);

struct AxisBehavior {
  Behavior kind = Behavior::unknown;
  std::optional<ExactComplex> limit;
  bool identically_zero = false;

  bool known() const { return kind != Behavior::unknown; }
  bool convergent() const { return kind == Behavior::zero_tail || kind == Behavior::converges; }
  bool bounded() const { return convergent() || kind == Behavior::oscillates; }
};

/// Behavior of the sequence k -> a(k).
AxisBehavior classify(const AxisForm& a);
/// Behavior of the partial sums k -> a(0) + ... + a(k).
AxisBehavior classify_series(const AxisForm& a);
/// Whether sum over k >= 1 of |a(k) + a(k+1) + ...| converges; nullopt when undecided.
std::optional<bool> tail_abs_summable(const AxisForm& a);
/// Behavior of m -> m * (a(m+1) + a(m+2) + ...).
AxisBehavior weighted_tail(const AxisForm& a);
/// Whether sum |a(k)|^q converges, from the dominant terms.
std::optional<bool> abs_power_summable(const AxisForm& a, double q);

/// x_kl = rows(k) * cols(l).
struct SeparableTag {
  AxisForm rows;
  AxisForm cols;
};
/// x_kl = 0 outside [0, rows) x [0, cols).
struct FiniteSupportTag {
  std::size_t rows = 0;
  std::size_t cols = 0;
};
/// x_kl = x_{min(k, rows-1), min(l, cols-1)}.
struct ClampedTag {
  std::size_t rows = 1;
  std::size_t cols = 1;
};

using FamilyTag = std::variant<SeparableTag, FiniteSupportTag, ClampedTag>;

namespace tag {
std::optional<FamilyTag> scaled(const FamilyTag& t, const ExactComplex& c);
std::optional<FamilyTag> sum(const FamilyTag& a, const FamilyTag& b);
std::optional<FamilyTag> product(const FamilyTag& a, const FamilyTag& b);
std::optional<FamilyTag> times_index(const FamilyTag& t);
std::optional<FamilyTag> div_index(const FamilyTag& t);
std::optional<FamilyTag> forward_diff(const FamilyTag& t);
std::optional<FamilyTag> abs(const FamilyTag& t);
std::optional<FamilyTag> abs_power(const FamilyTag& t, int q);
std::optional<FamilyTag> projected(const FamilyTag& t);
std::optional<FamilyTag> cumulative(const FamilyTag& t);
std::string describe(const FamilyTag& t);
}  // namespace tag

/// Asymptotic facts about a tagged double sequence. Unset optionals are undecided.
struct GridAnalysis {
  Behavior pringsheim = Behavior::unknown;
  std::optional<ExactComplex> limit;
  /// The limit equals the grid entry at this index (clamped tags).
  std::optional<std::pair<std::size_t, std::size_t>> limit_at;
  std::optional<bool> bounded;
  std::optional<bool> rows_converge;
  std::optional<bool> cols_converge;
};

GridAnalysis analyze(const FamilyTag& t);
/// Facts about (m, n) -> u(m) * v(n) from the behavior of each factor.
GridAnalysis analyze_product(const AxisBehavior& u, const AxisBehavior& v);
/// Combined Pringsheim behavior of (m, n) -> u(m) * v(n).
AxisBehavior combine_product(const AxisBehavior& u, const AxisBehavior& v);

}  // namespace dseq
