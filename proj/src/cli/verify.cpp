#include "common.hpp"

#include "dseq/diffops.hpp"
#include "dseq/duals.hpp"
#include "dseq/summation.hpp"

#include <algorithm>

namespace dseq::cli {

using nlohmann::json;

namespace {

using detail::close;
using detail::random_grid;

constexpr int kInstances = 8;

template <class S>
using Check = json (*)(std::size_t, std::mt19937_64&);

json tally(std::size_t instances, std::size_t failures, const std::string& what) {
  return {{"status", failures ? "Fails" : "Holds"},
          {"instances", instances},
          {"failures", failures},
          {"message", failures ? what + " broken on " + std::to_string(failures) + " instances" : what}};
}

template <class S>
bool same(const DoubleSeq<S>& a, const DoubleSeq<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!close(a.data()[i], b.data()[i])) return false;
  }
  return true;
}

template <class S>
BoundaryData<S> random_boundary(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BoundaryData<S> b = BoundaryData<S>::zero(rows, cols);
  for (auto& v : b.row0) v = detail::random_rational<S>(rng);
  for (auto& v : b.col0) v = detail::random_rational<S>(rng);
  b.corner = detail::random_rational<S>(rng);
  b.row0[0] = b.col0[0] = b.corner;
  return b;
}

// diffops

template <class S>
json round_trip(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> y = random_grid<S>(n - 1, n - 1, rng);
    if (!same(forward_difference(inverse_difference(y, random_boundary<S>(n, n, rng))), y)) ++bad;
    DoubleSeq<S> x = random_grid<S>(n, n, rng);
    if (!same(inverse_difference(forward_difference(x), BoundaryData<S>::of(x)), x)) ++bad;
  }
  return tally(2 * kInstances, bad, "difference and its inverse undo each other");
}

template <class S>
json telescoping(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  std::size_t count = 0;
  DoubleSeq<S> x = random_grid<S>(n, n, rng);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t l = 0; l + 1 < n; ++l, ++count) {
      auto [lhs, rhs] = telescoping_identity(x, k, l);
      if (!close(lhs, rhs)) ++bad;
    }
  }
  return tally(count, bad, "partial sums of differences telescope");
}

template <class S>
json linearity(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> x = random_grid<S>(n, n, rng);
    DoubleSeq<S> y = random_grid<S>(n, n, rng);
    S a = detail::random_rational<S>(rng);
    S b = detail::random_rational<S>(rng);
    DoubleSeq<S> lhs = forward_difference(pointwise(PointwiseOp::add, pointwise(PointwiseOp::scale, x, a),
                                                    pointwise(PointwiseOp::scale, y, b)));
    DoubleSeq<S> rhs = pointwise(PointwiseOp::add, pointwise(PointwiseOp::scale, forward_difference(x), a),
                                 pointwise(PointwiseOp::scale, forward_difference(y), b));
    if (!same(lhs, rhs)) ++bad;
  }
  return tally(kInstances, bad, "difference is linear");
}

template <class S>
json norm_preservation(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> y = random_grid<S>(n - 1, n - 1, rng);
    DoubleSeq<S> x = inverse_difference(y, BoundaryData<S>::zero(n, n));
    RealOf<S> sup{};
    for (const auto& v : y.data()) sup = std::max(sup, ScalarTraits<S>::abs(v));
    if (!close(ScalarTraits<S>::from_real(delta_norm(x).value), ScalarTraits<S>::from_real(sup))) ++bad;
  }
  return tally(kInstances, bad, "norm of the rebuilt grid equals sup of the differences");
}

template <class S>
json functional_bound(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    auto a = PairingCoefficients<S>::from(make_family<S>(FamilySpec::random_support(rng(), 4), n, n));
    DoubleSeq<S> x = inverse_difference(random_grid<S>(n - 1, n - 1, rng), BoundaryData<S>::zero(n, n));
    if (!functional_apply(a, x).within) ++bad;
  }
  return tally(kInstances, bad, "pairing bounded by sup of differences times the l1 norm");
}

// summation

template <class S>
json abel(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> y = random_grid<S>(n, n, rng);
    std::size_t m = 1 + rng() % (n - 2);
    std::size_t nn = 1 + rng() % (n - 2);
    std::size_t s = 1 + rng() % (n - m);
    std::size_t t = 1 + rng() % (n - nn);
    auto [lhs, rhs] = abel_identity_check(y, m, nn, s, t);
    if (!close(lhs, rhs)) ++bad;
  }
  return tally(kInstances, bad, "partial summation by parts");
}

template <class S>
json lemma31(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    if (!lemma31_bound_check(random_grid<S>(n, n, rng)).verdict.holds()) ++bad;
  }
  return tally(kInstances, bad, "weighted tails bounded by four times the partial-sum bound");
}

template <class S>
json tail_decomposition(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> a = make_family<S>(FamilySpec::random_support(rng(), 6), n, n);
    if (!corollary41_check(a, CorollaryPart::iii).holds()) ++bad;
  }
  return tally(kInstances, bad, "weighted sums decompose into tail sums");
}

template <class S>
json prefix_suffix(std::size_t n, std::mt19937_64& rng) {
  std::size_t bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    DoubleSeq<S> x = random_grid<S>(n, n, rng);
    if (!close(partial_sum_grid(x)(n - 1, n - 1), suffix_sum_grid(x)(0, 0))) ++bad;
    if (!same(forward_difference(suffix_sum_grid(x)), x.restrict(n - 1, n - 1))) ++bad;
  }
  return tally(2 * kInstances, bad, "prefix and suffix sums agree with the difference");
}

// duals

template <class S>
std::vector<Sample<S>> coefficient_battery(std::size_t n) {
  return {{"k^-3 l^-3", make_family<S>(FamilySpec::monomial(-3, -3), n, n)},
          {"k^-2 l^-2", make_family<S>(FamilySpec::monomial(-2, -2), n, n)},
          {"e11", make_family<S>(FamilySpec::basis_point(1, 1), n, n)},
          {"geometric", make_family<S>(FamilySpec::geometric(ExactComplex(Rational(1, 2)), ExactComplex(Rational(1, 2))),
                                       n, n)}};
}

template <class S>
json harness(DualSpec kind, std::size_t n) {
  auto samples = sample_battery<S>(Space::M_u, n, n);
  HarnessReport<S> r = dual_theorem_harness(kind, coefficient_battery<S>(n), samples);
  json out = {{"status", r.disagreements ? "Fails" : "Holds"},
              {"agreements", r.agreements},
              {"disagreements", r.disagreements},
              {"inconclusive", r.inconclusive},
              {"samples", samples.size()}};
  out["message"] = kind.label() + " dual sets agree with the pairing test";
  return out;
}

template <class S>
json harness_alpha(std::size_t n, std::mt19937_64&) {
  return harness<S>(DualSpec{DualKind::alpha}, n);
}
template <class S>
json harness_beta(std::size_t n, std::mt19937_64&) {
  return harness<S>(DualSpec{DualKind::beta, Theta::bp}, n);
}
template <class S>
json harness_gamma(std::size_t n, std::mt19937_64&) {
  return harness<S>(DualSpec{DualKind::gamma}, n);
}

template <class S>
json dset_inclusions(std::size_t n, std::mt19937_64&) {
  std::size_t bad = 0;
  auto battery = coefficient_battery<S>(n);
  for (const auto& c : battery) {
    Verdict<S> d1 = in_dset(c.x, DSetId{DSet::D1});
    if (!d1.holds()) continue;
    if (in_dset(c.x, DSetId{DSet::D2, Theta::bp}).fails() || in_dset(c.x, DSetId{DSet::D3}).fails()) ++bad;
  }
  return tally(battery.size(), bad, "absolute weighted summability implies the weaker sets");
}

// matrix4d

template <class S>
json shifted_identity(std::size_t n, std::mt19937_64&) {
  const std::size_t bound = std::min<std::size_t>(n, 20);
  Matrix4D<S> B = build_B(Matrix4D<S>::delta(bound, bound));
  std::size_t bad = 0;
  for (std::size_t m = 0; m < bound; ++m) {
    for (std::size_t nn = 0; nn < bound; ++nn) {
      for (std::size_t k = 0; k <= bound; ++k) {
        for (std::size_t l = 0; l <= bound; ++l) {
          S want = ScalarTraits<S>::from_int(k == m + 1 && l == nn + 1 ? 1 : 0);
          if (!close(B(m, nn, k, l), want)) ++bad;
        }
      }
    }
  }
  return tally(bound * bound * (bound + 1) * (bound + 1), bad, "tail matrix of the difference is the shifted identity");
}

template <class S>
json tail_identity(std::size_t n, std::mt19937_64& rng) {
  const std::size_t size = std::min<std::size_t>(n, 12);
  std::size_t bad = 0;
  std::size_t count = 0;
  for (int i = 0; i < 3; ++i) {
    Matrix4D<S> A = Matrix4D<S>::random_triangle(size, rng());
    std::vector<DoubleSeq<S>> ys;
    for (int j = 0; j < 4; ++j) ys.push_back(random_grid<S>(size - 1, size - 1, rng));
    IdentityReport<S> r = thm41_identity_harness(A, ys);
    count += r.instances;
    if (!r.verdict.holds()) bad += r.instances;
  }
  return tally(count, bad, "Ax = By on random triangles");
}

template <class S>
json registry(std::size_t n, std::mt19937_64&) {
  const std::size_t size = std::max<std::size_t>(n, 8);
  Matrix4D<S> I = Matrix4D<S>::identity(size, size);
  std::size_t bad = 0;
  const std::pair<Space, Space> cells[] = {{Space::M_u, Space::M_u},
                                           {Space::C_bp, Space::C_bp},
                                           {Space::C_bp, Space::C_r},
                                           {Space::C_r, Space::C_bp},
                                           {Space::C_r, Space::C_r}};
  for (const auto& [s, t] : cells) {
    if (!class_check(I, s, t).overall.holds()) ++bad;
  }
  for (const auto& [s, t] : {std::pair{Space::M_u, Space::C_r}, std::pair{Space::C_r, Space::M_u}}) {
    try {
      class_check(I, s, t);
      ++bad;
    } catch (const Unsupported&) {
    }
  }
  Verdict<S> ones = condition_check(Matrix4D<S>::ones_row(size, size, size, size), ConditionId{Condition::c3_0});
  if (!ones.fails() || ones.witness.indices.empty()) ++bad;
  return tally(8, bad, "identity passes its classes, star cells are unsupported, ones row fails");
}

template <class S>
struct SuiteCheck {
  const char* suite;
  const char* name;
  Check<S> fn;
};

template <class S>
std::vector<SuiteCheck<S>> all_checks() {
  return {
      {"diffops", "round_trip", round_trip<S>},
      {"diffops", "telescoping", telescoping<S>},
      {"diffops", "linearity", linearity<S>},
      {"diffops", "norm_preservation", norm_preservation<S>},
      {"diffops", "functional_bound", functional_bound<S>},
      {"summation", "abel", abel<S>},
      {"summation", "tail_bound", lemma31<S>},
      {"summation", "tail_decomposition", tail_decomposition<S>},
      {"summation", "prefix_suffix", prefix_suffix<S>},
      {"duals", "harness_alpha", harness_alpha<S>},
      {"duals", "harness_beta", harness_beta<S>},
      {"duals", "harness_gamma", harness_gamma<S>},
      {"duals", "dset_inclusions", dset_inclusions<S>},
      {"matrix4d", "shifted_identity", shifted_identity<S>},
      {"matrix4d", "tail_identity", tail_identity<S>},
      {"matrix4d", "registry", registry<S>},
  };
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

template <class S>
RunResult verify_mode(const std::string& suite, std::size_t size, std::uint64_t seed, unsigned threads) {
  std::vector<SuiteCheck<S>> checks;
  for (const auto& c : all_checks<S>()) {
    if (suite == "all" || suite == c.suite) checks.push_back(c);
  }
  RunResult result;
  result.report.id = "verify(" + suite + "," + std::to_string(size) + "," + std::to_string(seed) + ")";
  result.report.records.resize(checks.size());
  detail::parallel_for(checks.size(), threads, [&](std::size_t i) {
    const auto& c = checks[i];
    const std::string label = std::string(c.suite) + "." + c.name;
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(name_hash(label)), static_cast<std::uint32_t>(name_hash(label) >> 32)};
    std::mt19937_64 rng(sseq);
    json rec;
    try {
      rec = c.fn(size, rng);
    } catch (const std::exception& e) {
      rec = detail::error_record(e.what());
    }
    json out = {{"check", label}};
    out.update(rec);
    result.report.records[i] = std::move(out);
  });
  result.exit_code = exit_code_for(result.report.summary());
  return result;
}

}  // namespace

std::vector<std::string> verify_suites() { return {"diffops", "summation", "duals", "matrix4d", "all"}; }

RunResult verify(const std::string& suite, std::size_t size, std::uint64_t seed, Mode mode, unsigned threads) {
  auto suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw InvalidArgument("unknown suite '" + suite + "' (expected diffops, summation, duals, matrix4d or all)");
  }
  if (size < 4) throw InvalidArgument("verify size must be at least 4");
  return mode == Mode::exact ? verify_mode<ExactComplex>(suite, size, seed, threads)
                             : verify_mode<FloatComplex>(suite, size, seed, threads);
}

}  // namespace dseq::cli
