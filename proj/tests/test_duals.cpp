#include "dseq/diffops.hpp"
#include "dseq/duals.hpp"

#include <doctest.h>

using namespace dseq;
using E = ExactComplex;

namespace {

E q(long a, long b = 1) { return E(Rational(a, b)); }

constexpr std::size_t kSize = 32;

DoubleSeq<E> fam(const FamilySpec& s, std::size_t n = kSize) { return make_family<E>(s, n, n); }

std::vector<Sample<E>> coefficients() {
  return {{"k^-3 l^-3", fam(FamilySpec::monomial(-3, -3))},
          {"k^-2 l^-2", fam(FamilySpec::monomial(-2, -2))},
          {"e11", fam(FamilySpec::basis_point(1, 1))},
          {"geometric", fam(FamilySpec::geometric(q(1, 2), q(1, 2)))}};
}

}  // namespace

TEST_CASE("labels parse back") {
  for (auto text : {"alpha", "beta(p)", "beta(bp)", "beta(r)", "gamma"}) CHECK(DualSpec::parse(text).label() == text);
  for (auto text : {"D1", "D2(bp)", "D2(r)", "D3", "D4"}) CHECK(DSetId::parse(text).label() == text);
  CHECK_THROWS_AS(DualSpec::parse("delta"), InvalidArgument);
  CHECK_THROWS_AS(DSetId::parse("D5"), InvalidArgument);
}

TEST_CASE("dual sets on the standard coefficients") {
  auto cubic = fam(FamilySpec::monomial(-3, -3));
  CHECK(in_dset(cubic, DSetId{DSet::D1}).holds());

  auto harmonic = fam(FamilySpec::monomial(-2, -2));
  auto d1 = in_dset(harmonic, DSetId{DSet::D1});
  CHECK(d1.fails());
  CHECK_FALSE(d1.witness.empty());

  auto e11 = fam(FamilySpec::basis_point(1, 1));
  for (auto id : {DSetId{DSet::D1}, DSetId{DSet::D2, Theta::p}, DSetId{DSet::D2, Theta::bp}, DSetId{DSet::D2, Theta::r},
                  DSetId{DSet::D3}, DSetId{DSet::D4}}) {
    CAPTURE(id.label());
    CHECK(in_dset(e11, id).holds());
  }

  auto geo = fam(FamilySpec::geometric(q(1, 2), q(1, 2)));
  CHECK(in_dset(geo, DSetId{DSet::D2, Theta::bp}).holds());
  CHECK(in_dset(geo, DSetId{DSet::D4}).holds());
}

TEST_CASE("pairing membership") {
  std::vector<Sample<E>> samples = {{"P(kl)", project_interior(fam(FamilySpec::monomial(1, 1)))},
                                    {"P(e)", project_interior(fam(FamilySpec::ones()))},
                                    {"P(boos)", project_interior(fam(FamilySpec::boos()))}};
  auto e11 = fam(FamilySpec::basis_point(1, 1));
  CHECK(dual_membership(e11, DualSpec{DualKind::alpha}, samples).holds());

  CHECK(dual_membership(fam(FamilySpec::monomial(-3, -3)), DualSpec{DualKind::alpha}, samples).holds());

  std::vector<Sample<E>> kl = {{"kl", fam(FamilySpec::monomial(1, 1))}};
  CHECK(dual_membership(fam(FamilySpec::monomial(-2, -2)), DualSpec{DualKind::alpha}, kl).fails());

  CHECK_THROWS_AS(dual_membership(e11, DualSpec{DualKind::alpha}, std::vector<Sample<E>>{}), InvalidArgument);
}

TEST_CASE("sample battery members lie in the difference space") {
  for (Space base : {Space::M_u, Space::C_bp, Space::C_r}) {
    auto samples = sample_battery<E>(base, 16, 16);
    CHECK_FALSE(samples.empty());
    for (const auto& s : samples) {
      CAPTURE(s.name);
      CHECK(delta_space_membership(s.x, SpaceSpec{base}).holds());
      for (std::size_t k = 0; k < 16; ++k) {
        CHECK(s.x(k, 0).is_zero());
        CHECK(s.x(0, k).is_zero());
      }
    }
  }
  // Determinism given the seed.
  auto a = sample_battery<E>(Space::M_u, 12, 12, {}, 9);
  auto b = sample_battery<E>(Space::M_u, 12, 12, {}, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_grid(a[i].x, b[i].x));
}

TEST_CASE("dual theorems agree with pairing tests") {
  auto samples = sample_battery<E>(Space::M_u, kSize, kSize);
  auto coefs = coefficients();
  for (auto kind : {DualSpec{DualKind::alpha}, DualSpec{DualKind::beta, Theta::bp}, DualSpec{DualKind::gamma}}) {
    auto r = dual_theorem_harness(kind, coefs, samples);
    CAPTURE(kind.label());
    CHECK(r.disagreements == 0);
    CHECK(r.rows.size() == coefs.size());
    CHECK(r.agreements + r.disagreements + r.inconclusive == coefs.size());
    for (const auto& row : r.rows) {
      if (row.dset.decisive() && row.pairing.decisive()) {
        REQUIRE(row.agree);
        CHECK(*row.agree);
      }
    }
  }

  auto alpha = dual_theorem_harness(DualSpec{DualKind::alpha}, coefs, samples);
  CHECK(alpha.rows[0].dset.holds());
  CHECK(alpha.rows[1].dset.fails());
  CHECK(alpha.rows[2].dset.holds());

  auto gamma = dual_theorem_harness(DualSpec{DualKind::gamma}, coefs, samples);
  CHECK(gamma.rows[2].dset.holds());
  CHECK(gamma.rows[2].pairing.holds());

  auto beta = dual_theorem_harness(DualSpec{DualKind::beta, Theta::bp}, coefs, samples);
  CHECK(beta.rows[3].dset.holds());
  CHECK(beta.rows[3].pairing.holds());
}
