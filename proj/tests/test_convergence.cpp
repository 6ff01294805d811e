#include "dseq/convergence.hpp"
#include "dseq/summation.hpp"

#include <doctest.h>

#include <random>

using namespace dseq;
using E = ExactComplex;
using F = FloatComplex;

namespace {

E q(long a, long b = 1) { return E(Rational(a, b)); }

template <class S>
DoubleSeq<S> untagged(DoubleSeq<S> x) {
  x.set_family(std::nullopt);
  return x;
}

std::vector<FamilySpec> battery() {
  return {FamilySpec::ones(),
          FamilySpec::boos(),
          FamilySpec::constant(E(0)),
          FamilySpec::monomial(1, 1),
          FamilySpec::monomial(-1, -1),
          FamilySpec::geometric(q(1, 2), q(1, 2)),
          FamilySpec::geometric(q(2), q(1, 2)),
          FamilySpec::alternating(),
          FamilySpec::basis_point(2, 3),
          FamilySpec::basis_row(1),
          FamilySpec::basis_col(2)};
}

}  // namespace

TEST_CASE("boos is Pringsheim null but unbounded") {
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    auto b = make_family<E>(FamilySpec::boos(), n, n);
    auto cp = space_membership(b, SpaceSpec{Space::C_p});
    REQUIRE(cp.holds());
    REQUIRE(cp.estimate);
    CHECK(cp.estimate->value.is_zero());
    CHECK(cp.estimate->residual <= 1e-9);

    auto mu = space_membership(b, SpaceSpec{Space::M_u});
    REQUIRE(mu.fails());
    REQUIRE_FALSE(mu.witness.indices.empty());
    CHECK(mu.witness.indices[0].k == 0);
    CHECK(mu.witness.indices[0].l == n - 1);
  }
}

TEST_CASE("constant sequence converges boundedly and regularly") {
  auto e = make_family<E>(FamilySpec::ones(), 8, 8);
  for (Space s : {Space::C_p, Space::C_bp, Space::C_r}) {
    auto v = space_membership(e, SpaceSpec{s});
    REQUIRE(v.holds());
    CHECK(v.estimate->value == q(1));
  }
  CHECK(space_membership(e, SpaceSpec{Space::C_bp0}).fails());
  CHECK(space_membership(e, SpaceSpec{Space::M_u}).holds());
}

TEST_CASE("numeric protocol without tags") {
  auto g = untagged(make_family<E>(FamilySpec::geometric(q(1, 2), q(1, 2)), 48, 48));
  auto v = space_membership(g, SpaceSpec{Space::C_p0});
  CHECK(v.holds());

  auto alt = untagged(make_family<E>(FamilySpec::alternating(), 16, 16));
  auto w = space_membership(alt, SpaceSpec{Space::C_p});
  REQUIRE(w.fails());
  CHECK_FALSE(w.witness.indices.empty());
  CHECK(space_membership(alt, SpaceSpec{Space::M_u}).holds());

  auto kl = untagged(make_family<E>(FamilySpec::monomial(1, 1), 16, 16));
  CHECK(space_membership(kl, SpaceSpec{Space::M_u}).fails());
  CHECK(space_membership(kl, SpaceSpec{Space::C_p}).fails());
}

TEST_CASE("regular convergence needs every row and column") {
  // Row 0 alternates, everything else vanishes: Pringsheim and bp null, not regular.
  auto x = make_family<E>(FamilySpec::alternating(), 12, 12);
  auto basis = make_family<E>(FamilySpec::basis_row(0), 12, 12);
  auto y = pointwise(PointwiseOp::hadamard, x, basis);
  CHECK(space_membership(y, SpaceSpec{Space::C_bp}).holds());
  CHECK(space_membership(y, SpaceSpec{Space::C_r}).fails());
}

TEST_CASE("verdict monotonicity across spaces") {
  for (const auto& spec : battery()) {
    auto x = make_family<E>(spec, 16, 16);
    auto r = space_membership(x, SpaceSpec{Space::C_r});
    auto bp = space_membership(x, SpaceSpec{Space::C_bp});
    auto p = space_membership(x, SpaceSpec{Space::C_p});
    auto mu = space_membership(x, SpaceSpec{Space::M_u});
    CAPTURE(spec.label());
    if (r.holds()) CHECK(bp.holds());
    if (bp.holds()) {
      CHECK(p.holds());
      CHECK(mu.holds());
    }
    if (p.fails()) CHECK_FALSE(bp.holds());
  }
}

TEST_CASE("norms") {
  auto e = make_family<E>(FamilySpec::ones(), 6, 6);
  CHECK(norm(e, NormKind::sup).value == 1);

  auto e00 = make_family<E>(FamilySpec::basis_point(0, 0), 6, 6);
  auto bv = norm(e00, NormKind::bv);
  CHECK(bv.value == 4);

  // sum of 2^{-k-l} over a 20x20 truncation, computed directly
  auto g = make_family<E>(FamilySpec::geometric(q(1, 2), q(1, 2)), 20, 20);
  Rational row = 0;
  Rational term = 1;
  for (int k = 0; k < 20; ++k, term /= 2) row += term;
  auto l1 = norm(g, NormKind::lq, 1.0);
  CHECK(l1.value == row * row);
  CHECK(l1.value < 4);
  CHECK(4 - l1.value < Rational(1, 100000));

  // bs: largest rectangular partial sum modulus
  auto alt = make_family<E>(FamilySpec::alternating(), 5, 5);
  CHECK(norm(alt, NormKind::bs).value == 1);

  CHECK_THROWS_AS(norm(e, NormKind::lq, 0.5), InvalidArgument);
  CHECK_THROWS_AS(space_membership(e, SpaceSpec{Space::L_q, 0.5}), InvalidArgument);
}

TEST_CASE("sup norm is a norm on real grids") {
  std::mt19937_64 rng(21);
  auto random = [&] {
    std::vector<E> v(36);
    for (auto& z : v) z = q(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
    return DoubleSeq<E>(6, 6, std::move(v));
  };
  for (int i = 0; i < 50; ++i) {
    auto x = random();
    auto y = random();
    E c = q(static_cast<long>(rng() % 11) - 5, 3);
    auto nx = norm(x, NormKind::sup).value;
    auto ny = norm(y, NormKind::sup).value;
    CHECK(norm(pointwise(PointwiseOp::add, x, y), NormKind::sup).value <= nx + ny);
    CHECK(norm(pointwise(PointwiseOp::scale, x, c), NormKind::sup).value == abs(c.real()) * nx);
  }
}

TEST_CASE("series verdicts") {
  auto zero = make_family<E>(FamilySpec::constant(E(0)), 8, 8);
  auto z = cs_verdict(zero, Theta::bp);
  REQUIRE(z.holds());
  CHECK(z.estimate->value.is_zero());

  auto e00 = make_family<E>(FamilySpec::basis_point(0, 0), 8, 8);
  auto one = cs_verdict(e00, Theta::r);
  REQUIRE(one.holds());
  CHECK(one.estimate->value == q(1));

  auto e = make_family<E>(FamilySpec::ones(), 8, 8);
  auto div = cs_verdict(e, Theta::p);
  CHECK(div.fails());
  CHECK_FALSE(div.witness.empty());
}

TEST_CASE("series verdict equals membership of the partial sums") {
  for (const auto& spec : battery()) {
    auto x = make_family<E>(spec, 12, 12);
    for (Theta t : {Theta::p, Theta::bp, Theta::r}) {
      auto a = cs_verdict(x, t);
      auto b = space_membership(partial_sum_grid(x), SpaceSpec{theta_space(t)});
      CAPTURE(spec.label());
      CHECK(a.state == b.state);
      CHECK(a.estimate.has_value() == b.estimate.has_value());
      if (a.estimate && b.estimate) CHECK(a.estimate->value == b.estimate->value);
    }
  }
}

TEST_CASE("float mode follows the same verdicts") {
  auto b = make_family<F>(FamilySpec::boos(), 16, 16);
  CHECK(space_membership(b, SpaceSpec{Space::C_p}).holds());
  CHECK(space_membership(b, SpaceSpec{Space::M_u}).fails());
  auto g = make_family<F>(FamilySpec::geometric(q(1, 2), q(1, 2)), 16, 16);
  auto s = cs_verdict(g, Theta::bp);
  REQUIRE(s.holds());
  CHECK(std::abs(s.estimate->value - F(4.0)) < 1e-12);
}

TEST_CASE("parameter validation") {
  auto e = make_family<E>(FamilySpec::ones(), 4, 4);
  DetectParams bad;
  bad.epsilon = 0;
  CHECK_THROWS_AS(space_membership(e, SpaceSpec{Space::C_p}, bad), InvalidArgument);
  DetectParams late;
  late.diag_start = 3;
  CHECK_THROWS_AS(space_membership(e, SpaceSpec{Space::C_p}, late), InvalidArgument);
  CHECK_THROWS_AS(parse_space("C_q"), InvalidArgument);
  CHECK(parse_space("C_bp0") == Space::C_bp0);
}
