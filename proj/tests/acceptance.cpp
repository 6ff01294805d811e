// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "dseq/cli.hpp"
#include "dseq/convergence.hpp"
#include "dseq/diffops.hpp"
#include "dseq/duals.hpp"
#include "dseq/matrix4d.hpp"
#include "dseq/summation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace dseq;
using E = ExactComplex;

namespace {

constexpr int kInstances = 200;

E rand_q(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 41) - 20;
  long den = static_cast<long>(rng() % 12) + 1;
  return E(Rational(num, den));
}

E rand_z(std::mt19937_64& rng) {
  E re = rand_q(rng);
  E im = rand_q(rng);
  return E(re.real(), im.real());
}

DoubleSeq<E> grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng, bool complex = true) {
  std::vector<E> data(rows * cols);
  for (auto& v : data) v = complex ? rand_z(rng) : rand_q(rng);
  return DoubleSeq<E>(rows, cols, std::move(data));
}

std::size_t rand_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); }

bool equal(const DoubleSeq<E>& a, const DoubleSeq<E>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (!(a(k, l) == b(k, l))) return false;
    }
  }
  return true;
}

Rational sup_abs2(const DoubleSeq<E>& x) {
  Rational best = 0;
  for (const auto& v : x.data()) best = std::max(best, v.norm());
  return best;
}

BoundaryData<E> random_boundary(std::size_t n, std::mt19937_64& rng) {
  auto b = BoundaryData<E>::zero(n, n);
  b.corner = rand_z(rng);
  for (auto& v : b.row0) v = rand_z(rng);
  for (auto& v : b.col0) v = rand_z(rng);
  b.row0[0] = b.col0[0] = b.corner;
  return b;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s [%s] (%.1fs)\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(),
              secs);
  std::fflush(stdout);
}

Outcome exact_identities() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  std::ostringstream detail;
  bool pass = true;
  auto tally = [&](const char* name, int count, int bad) {
    detail << name << " " << count - bad << "/" << count << "; ";
    pass = pass && bad == 0 && count >= kInstances;
  };

  int bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    std::size_t n = rand_size(rng, 2, 50);
    DoubleSeq<E> y = grid(n - 1, n - 1, rng);
    if (!equal(forward_difference(inverse_difference(y, random_boundary(n, rng))), y)) ++bad;
    DoubleSeq<E> x = grid(n, n, rng);
    if (!equal(inverse_difference(forward_difference(x), BoundaryData<E>::of(x)), x)) ++bad;
  }
  tally("round trip", kInstances, bad);

  // Partial sums of the difference against the four corner values.
  bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    std::size_t n = rand_size(rng, 2, 50);
    DoubleSeq<E> x = grid(n, n, rng);
    DoubleSeq<E> d = forward_difference(x);
    std::size_t k = rng() % (n - 1), l = rng() % (n - 1);
    E sum;
    for (std::size_t i2 = 0; i2 <= k; ++i2) {
      for (std::size_t j = 0; j <= l; ++j) sum = sum + d(i2, j);
    }
    E corners = x(0, 0) - x(k + 1, 0) - x(0, l + 1) + x(k + 1, l + 1);
    auto [lhs, rhs] = telescoping_identity(x, k, l);
    if (!(sum == corners) || !(lhs == sum) || !(rhs == corners)) ++bad;
  }
  tally("telescoping", kInstances, bad);

  bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    std::size_t n = rand_size(rng, 3, 50);
    DoubleSeq<E> y = grid(n, n, rng);
    std::size_t m = 1 + rng() % (n - 2), nn = 1 + rng() % (n - 2);
    std::size_t s = 1 + rng() % (n - m), t = 1 + rng() % (n - nn);
    auto [lhs, rhs] = abel_identity_check(y, m, nn, s, t);
    if (!(lhs == rhs)) ++bad;
  }
  tally("abel", kInstances, bad);

  bad = 0;
  for (int i = 0; i < kInstances; ++i) {
    std::size_t n = rand_size(rng, 4, 50);
    DoubleSeq<E> a = make_family<E>(FamilySpec::random_support(rng(), 1 + rng() % 12), n, n);
    if (!corollary41_check(a, CorollaryPart::iii).holds()) ++bad;
  }
  tally("tail decomposition", kInstances, bad);

  // Ax = By on dense random 20^4 blocks, 20 samples per matrix.
  constexpr std::size_t B = 20;
  std::size_t instances = 0, mismatches = 0;
  for (int mat = 0; mat < kInstances / 20; ++mat) {
    std::vector<E> data(B * B * B * B);
    for (auto& v : data) v = rand_q(rng);
    auto A = Matrix4D<E>::block(B, B, B, B, std::move(data));
    std::vector<DoubleSeq<E>> ys;
    for (int j = 0; j < 20; ++j) ys.push_back(grid(B - 1, B - 1, rng));
    auto r = thm41_identity_harness(A, ys);
    instances += r.instances;
    mismatches += r.mismatches;
  }
  tally("Ax=By", static_cast<int>(instances), static_cast<int>(mismatches));

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail << "runtime " << static_cast<int>(secs) << "s of 120s";
  return {pass && secs < 120.0, detail.str()};
}

Outcome norm_preservation() {
  std::mt19937_64 rng(7);
  constexpr std::size_t n = 32;
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    DoubleSeq<E> y = grid(n, n, rng, false);
    DoubleSeq<E> x = inverse_difference(y, BoundaryData<E>::zero(n + 1, n + 1));
    Rational want = sup_abs2(y);
    Rational got = sup_abs2(forward_difference(x));
    Rational norm = delta_norm(x).value;
    if (got != want || norm * norm != want) ++bad;
  }
  int fbad = 0;
  for (int i = 0; i < 100; ++i) {
    auto coef = make_family<E>(FamilySpec::random_support(rng(), 1 + rng() % 10), n, n);
    auto a = PairingCoefficients<E>::from(coef);
    DoubleSeq<E> x = inverse_difference(grid(n - 1, n - 1, rng), BoundaryData<E>::zero(n, n));
    auto f = functional_apply(a, x);
    // |f|^2 <= sup|dx|^2 * (sum |a|)^2, with the l1 norm summed here from exact moduli.
    Rational l1 = 0;
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t l = 1; l < n; ++l) l1 += ScalarTraits<E>::abs(coef(k, l));
    }
    Rational rhs = sup_abs2(forward_difference(x)) * l1 * l1;
    if (!f.within || f.value.norm() > rhs || l1 != a.l1_norm) ++fbad;
  }
  std::ostringstream d;
  d << "norm " << 100 - bad << "/100; functional " << 100 - fbad << "/100";
  return {bad == 0 && fbad == 0, d.str()};
}

Outcome boos_witness() {
  std::ostringstream d;
  bool pass = true;
  DetectParams params;
  params.epsilon = 1e-9;
  for (std::size_t n : {8u, 16u, 32u}) {
    auto b = make_family<E>(FamilySpec::boos(), n, n);
    auto cp = space_membership(b, SpaceSpec{Space::C_p}, params);
    auto mu = space_membership(b, SpaceSpec{Space::M_u}, params);
    bool ok = cp.holds() && cp.estimate && cp.estimate->value == E() && mu.fails() && !mu.witness.empty();
    d << n << ": C_p " << to_string(cp.state) << ", M_u " << to_string(mu.state);
    if (!mu.witness.empty() && mu.witness.bound) d << " (|x| >= " << *mu.witness.bound << ")";
    d << "; ";
    pass = pass && ok;
  }
  return {pass, d.str()};
}

Outcome dual_agreement() {
  constexpr std::size_t n = 64;
  std::vector<Sample<E>> coefs = {
      {"k^-3 l^-3", make_family<E>(FamilySpec::monomial(-3, -3), n, n)},
      {"k^-2 l^-2", make_family<E>(FamilySpec::monomial(-2, -2), n, n)},
      {"e11", make_family<E>(FamilySpec::basis_point(1, 1), n, n)},
      {"geometric", make_family<E>(FamilySpec::geometric(E(Rational(1, 2)), E(Rational(1, 2))), n, n)}};
  auto samples = sample_battery<E>(Space::M_u, n, n);
  std::size_t decisive = 0, disagree = 0;
  std::ostringstream d;
  for (auto kind : {DualSpec{DualKind::alpha}, DualSpec{DualKind::beta, Theta::bp}, DualSpec{DualKind::gamma}}) {
    auto r = dual_theorem_harness(kind, coefs, samples);
    for (const auto& row : r.rows) {
      if (row.agree) {
        ++decisive;
        if (!*row.agree) {
          ++disagree;
          d << "disagree " << kind.label() << "/" << row.family << "; ";
        }
      }
    }
  }
  d << decisive << "/12 decisive, " << disagree << " disagreements";
  return {disagree == 0 && decisive >= 8, d.str()};
}

Outcome shifted_identity() {
  constexpr std::size_t bound = 20;
  auto Bm = build_B(Matrix4D<E>::delta(bound + 1, bound + 1));
  std::size_t checked = 0, wrong = 0;
  for (std::size_t m = 0; m <= bound; ++m) {
    for (std::size_t n = 0; n <= bound; ++n) {
      for (std::size_t k = 0; k <= bound; ++k) {
        for (std::size_t l = 0; l <= bound; ++l, ++checked) {
          E want = (k == m + 1 && l == n + 1) ? E(1) : E();
          if (!(Bm(m, n, k, l) == want)) ++wrong;
        }
      }
    }
  }
  std::ostringstream d;
  d << checked << " entries, " << wrong << " wrong";
  return {wrong == 0, d.str()};
}

Outcome registry() {
  std::ostringstream d;
  bool pass = true;
  auto I = Matrix4D<E>::identity(10, 10);
  const std::pair<Space, Space> cells[] = {{Space::M_u, Space::M_u},
                                           {Space::C_bp, Space::C_bp},
                                           {Space::C_bp, Space::C_r},
                                           {Space::C_r, Space::C_bp},
                                           {Space::C_r, Space::C_r}};
  for (auto [src, dst] : cells) {
    auto r = class_check(I, src, dst);
    bool all = r.overall.holds();
    for (const auto& c : r.conditions) all = all && c.verdict.holds();
    if (!all) d << "identity " << to_string(src) << ":" << to_string(dst) << " " << to_string(r.overall.state) << "; ";
    pass = pass && all;
  }
  for (auto [src, dst] : {std::pair{Space::M_u, Space::C_r}, std::pair{Space::C_r, Space::M_u}}) {
    bool raised = false;
    try {
      class_check(I, src, dst);
    } catch (const Unsupported&) {
      raised = true;
    }
    if (!raised) d << to_string(src) << ":" << to_string(dst) << " did not raise; ";
    pass = pass && raised;
  }
  auto c0 = condition_check(Matrix4D<E>::ones_row(8, 8, 8, 8), ConditionId{Condition::c3_0});
  bool named = c0.fails() && !c0.witness.indices.empty();
  if (named) {
    d << "ones row fails C3.0 at row (" << c0.witness.indices[0].k << "," << c0.witness.indices[0].l << ")";
  } else {
    d << "ones row C3.0 " << to_string(c0.state);
  }
  return {pass && named, d.str()};
}

Outcome determinism() {
  auto a = cli::verify("all", 8, 1).report.to_jsonl();
  auto b = cli::verify("all", 8, 1).report.to_jsonl();
  auto c = cli::verify("all", 8, 1, Mode::exact, 4).report.to_jsonl();
  std::ostringstream d;
  d << a.size() << " bytes; rerun " << (a == b ? "identical" : "differs") << "; 4 threads "
    << (a == c ? "identical" : "differs");
  return {a == b && a == c, d.str()};
}

}  // namespace

int main() {
  report(1, "exact identity suite", exact_identities);
  report(2, "norm preservation and functional bound", norm_preservation);
  report(3, "Boos sequence in C_p but not M_u", boos_witness);
  report(4, "dual sets agree with pairing tests", dual_agreement);
  report(5, "tail matrix of the difference is the shifted identity", shifted_identity);
  report(6, "class registry", registry);
  report(7, "verify reports are deterministic", determinism);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
