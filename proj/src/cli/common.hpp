#pragma once

#include "dseq/cli.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <type_traits>

namespace dseq::cli::detail {

template <class S>
bool close(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, ExactComplex>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  }
}

/// Small random rational p/q, p in [-9, 9], q in [1, 9].
template <class S>
S random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 19) - 9;
  long den = static_cast<long>(rng() % 9) + 1;
  return ScalarTraits<S>::from_exact(ExactComplex(Rational(num, den)));
}

template <class S>
DoubleSeq<S> random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<S> data(rows * cols);
  for (auto& v : data) v = random_rational<S>(rng);
  return DoubleSeq<S>(rows, cols, std::move(data));
}

template <class S>
double sup_modulus(const DoubleSeq<S>& x) {
  double best = 0.0;
  for (const auto& v : x.data()) best = std::max(best, std::sqrt(ScalarTraits<S>::to_double(ScalarTraits<S>::abs2(v))));
  return best;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

inline std::string status_of(State s) { return to_string(s); }

inline nlohmann::json error_record(const std::string& message) {
  return {{"status", "error"}, {"message", message}};
}

}  // namespace dseq::cli::detail
