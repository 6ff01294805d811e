#pragma once

#include "dseq/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dseq {

enum class State { holds, fails, inconclusive };

std::string to_string(State s);

struct Index2 {
  std::size_t k = 0;
  std::size_t l = 0;
  friend bool operator==(const Index2& a, const Index2& b) { return a.k == b.k && a.l == b.l; }
};

/// Evidence attached to a verdict: grid indices, an optional numeric bound and a label.
struct Witness {
  std::vector<Index2> indices;
  std::optional<double> bound;
  std::string detail;

  bool empty() const { return indices.empty() && !bound && detail.empty(); }
};

template <class S>
struct LimitEstimate {
  S value{};
  double epsilon = 0.0;
  std::size_t n0 = 0;
  std::size_t window = 0;
  /// max |x_mn - value| over m, n >= n0.
  double residual = 0.0;
  /// The limit was certified from the closed form rather than from the grid alone.
  bool analytic = false;
};

template <class S>
struct Verdict {
  State state = State::inconclusive;
  Witness witness;
  std::optional<LimitEstimate<S>> estimate;
  std::string reason;

  bool holds() const { return state == State::holds; }
  bool fails() const { return state == State::fails; }
  bool decisive() const { return state != State::inconclusive; }
};

template <class S>
Verdict<S> holds_verdict(std::string reason = {}, Witness w = {}) {
  return {State::holds, std::move(w), std::nullopt, std::move(reason)};
}

template <class S>
Verdict<S> fails_verdict(Witness w, std::string reason) {
  return {State::fails, std::move(w), std::nullopt, std::move(reason)};
}

template <class S>
Verdict<S> inconclusive_verdict(std::string reason) {
  return {State::inconclusive, {}, std::nullopt, std::move(reason)};
}

/// Any Fails gives Fails (first one wins), then any Inconclusive, else Holds.
/// The first Holds estimate is kept on a Holds result.
template <class S>
Verdict<S> conjoin(const std::vector<Verdict<S>>& parts) {
  for (const auto& v : parts) {
    if (v.fails()) return v;
  }
  for (const auto& v : parts) {
    if (v.state == State::inconclusive) return v;
  }
  Verdict<S> out = holds_verdict<S>();
  std::string reasons;
  for (const auto& v : parts) {
    if (!out.estimate && v.estimate) out.estimate = v.estimate;
    if (out.witness.empty() && !v.witness.empty()) out.witness = v.witness;
    if (!v.reason.empty()) reasons += (reasons.empty() ? "" : "; ") + v.reason;
  }
  out.reason = reasons;
  return out;
}

/// A norm or seminorm value on a truncation.
template <class R>
struct NormValue {
  R value{};
  /// False when an irrational modulus had to be rounded.
  bool exact = true;
  /// The value is a truncated surrogate of an infinite quantity.
  bool truncated = true;
  /// For lim sup surrogates: change between the value at n0 and at a later index.
  std::optional<double> trend;
};

}  // namespace dseq
