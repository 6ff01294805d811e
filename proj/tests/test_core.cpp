#include "dseq/double_seq.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace dseq;
using E = ExactComplex;
using F = FloatComplex;

namespace {

E q(long a, long b = 1) { return E(Rational(a, b)); }

DoubleSeq<E> random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<E> v(rows * cols);
  for (auto& x : v) x = E(Rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 9) + 1),
                          Rational(static_cast<long>(rng() % 5) - 2, 3));
  return DoubleSeq<E>(rows, cols, std::move(v));
}

}  // namespace

TEST_CASE("exact scalars parse, format and compute exactly") {
  E z = parse_exact_complex("3/4-1/2j");
  CHECK(z.real() == Rational(3, 4));
  CHECK(z.imag() == Rational(-1, 2));
  CHECK(parse_exact_complex(format_complex(z)) == z);
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK((q(1, 3) * q(3)) == q(1));
  CHECK_THROWS_AS(parse_exact_complex("1/0"), Error);
  CHECK_THROWS_AS(parse_exact_complex("abc"), ParseError);
  CHECK(parse_mode("float") == Mode::float64);
  CHECK_THROWS_AS(parse_mode("fast"), InvalidArgument);
}

TEST_CASE("builtin families") {
  auto e = make_family<E>(FamilySpec::ones(), 3, 3);
  for (auto v : e.data()) CHECK(v == q(1));

  auto z = make_family<E>(FamilySpec::constant(E(0)), 2, 2);
  for (auto v : z.data()) CHECK(v.is_zero());

  auto b = make_family<E>(FamilySpec::boos(), 4, 4);
  for (std::size_t l = 0; l < 4; ++l) CHECK(b(0, l) == q(static_cast<long>(l)));
  for (std::size_t k = 1; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) CHECK(b(k, l).is_zero());
  }

  auto g = make_family<E>(FamilySpec::geometric(q(1, 2), q(1, 3), q(5)), 5, 6);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = 0; l < 6; ++l) {
      mpz_class den = 1;
      for (std::size_t i = 0; i < k; ++i) den *= 2;
      for (std::size_t j = 0; j < l; ++j) den *= 3;
      CHECK(g(k, l) == E(Rational(mpz_class(5), den)));
    }
  }

  auto m = make_family<E>(FamilySpec::monomial(2, 1), 4, 4);
  CHECK(m(3, 2) == q(18));

  auto alt = make_family<E>(FamilySpec::alternating(), 3, 3);
  CHECK(alt(1, 2) == q(-1));
  CHECK(alt(2, 2) == q(1));

  auto pt = make_family<E>(FamilySpec::basis_point(1, 2), 4, 4);
  std::size_t nonzero = 0;
  for (auto v : pt.data()) nonzero += v.is_zero() ? 0 : 1;
  CHECK(nonzero == 1);
  CHECK(pt(1, 2) == q(1));

  auto row = make_family<E>(FamilySpec::basis_row(2), 4, 4);
  CHECK(row(2, 3) == q(1));
  CHECK(row(1, 3).is_zero());

  auto tab = make_family<E>(FamilySpec::from_table({{q(1), q(2)}, {q(3)}}), 3, 3);
  CHECK(tab(0, 1) == q(2));
  CHECK(tab(1, 0) == q(3));
  CHECK(tab(1, 1).is_zero());
  CHECK(tab(2, 2).is_zero());

  CHECK_THROWS_AS(make_family<E>(FamilySpec::ones(), 1, 3), InvalidArgument);
  CHECK_THROWS_AS(parse_family_kind("nonsense"), InvalidArgument);
}

TEST_CASE("family tags describe the grid") {
  for (auto spec : {FamilySpec::ones(), FamilySpec::boos(), FamilySpec::monomial(1, 2),
                    FamilySpec::geometric(q(1, 2), q(-1, 3)), FamilySpec::alternating(), FamilySpec::basis_point(2, 1),
                    FamilySpec::monomial(-2, -3)}) {
    auto x = make_family<E>(spec, 6, 7);
    REQUIRE(x.family().has_value());
    auto y = make_family<E>(spec.with_projection(), 6, 7);
    for (std::size_t k = 0; k < 6; ++k) {
      for (std::size_t l = 0; l < 7; ++l) CHECK(y(k, l) == (k == 0 || l == 0 ? E() : x(k, l)));
    }
  }
  auto x = make_family<E>(FamilySpec::ones(), 3, 3);
  x.mut(1, 1) = q(7);
  CHECK_FALSE(x.family().has_value());
}

TEST_CASE("pointwise algebra") {
  auto e = make_family<E>(FamilySpec::ones(), 4, 4);
  auto zero = pointwise(PointwiseOp::add, e, pointwise(PointwiseOp::scale, e, q(-1)));
  for (auto v : zero.data()) CHECK(v.is_zero());

  auto h = pointwise(PointwiseOp::hadamard, make_family<E>(FamilySpec::basis_point(1, 1), 4, 4),
                     make_family<E>(FamilySpec::monomial(1, 1), 4, 4));
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) CHECK(h(k, l) == (k == 1 && l == 1 ? q(1) : E()));
  }

  auto two = pointwise(PointwiseOp::scale, e, q(2));
  for (auto v : two.data()) CHECK(v == q(2));

  CHECK_THROWS_AS(pointwise(PointwiseOp::add, e, make_family<E>(FamilySpec::ones(), 4, 5)), DimensionMismatch);
}

TEST_CASE("pointwise ops commute with restriction") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto x = random_grid(7, 6, rng);
    auto y = random_grid(7, 6, rng);
    for (auto op : {PointwiseOp::add, PointwiseOp::sub, PointwiseOp::hadamard}) {
      CHECK(same_grid(pointwise(op, x, y).restrict(4, 3), pointwise(op, x.restrict(4, 3), y.restrict(4, 3))));
    }
  }
}

TEST_CASE("index scaling") {
  auto e = make_family<E>(FamilySpec::ones(), 4, 5);
  CHECK(scale_by_index(e, IndexScaling::integral)(2, 3) == q(6));

  auto d = scale_by_index(make_family<E>(FamilySpec::monomial(1, 1), 5, 5), IndexScaling::d);
  CHECK(d.boundary_flagged());
  for (std::size_t k = 1; k < 5; ++k) {
    for (std::size_t l = 1; l < 5; ++l) CHECK(d(k, l) == q(1));
  }

  std::mt19937_64 rng(3);
  auto x = random_grid(6, 6, rng);
  auto back = scale_by_index(scale_by_index(x, IndexScaling::integral), IndexScaling::d);
  for (std::size_t k = 1; k < 6; ++k) {
    for (std::size_t l = 1; l < 6; ++l) CHECK(back(k, l) == x(k, l));
  }
  // Boundary entries pass through the d direction unchanged.
  auto dx = scale_by_index(x, IndexScaling::d);
  CHECK(dx(0, 3) == x(0, 3));
  CHECK(dx(2, 0) == x(2, 0));
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(5);
  auto x = random_grid(3, 4, rng);
  std::stringstream ss;
  write_csv(ss, x);
  CHECK(same_grid(read_csv<E>(ss), x));

  std::stringstream fs("1.5+0j,2-1j\n0+0j,-3+2.25j\n");
  auto f = read_csv<F>(fs);
  CHECK(f(1, 1) == F(-3, 2.25));

  std::stringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_csv<E>(ragged), ParseError);
}

TEST_CASE("float mode agrees with exact mode on families") {
  auto x = make_family<E>(FamilySpec::geometric(q(1, 2), q(3, 4), q(2)), 6, 6);
  auto y = make_family<F>(FamilySpec::geometric(q(1, 2), q(3, 4), q(2)), 6, 6);
  auto xf = to_float_seq(x);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(xf.data()[i] - y.data()[i]) < 1e-15);
}
