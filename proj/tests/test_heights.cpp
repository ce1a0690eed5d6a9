#include "doctest.h"

#include <numeric>
#include <random>

#include "cubicpts/heights.hpp"
#include "oracles.hpp"

using namespace cubicpts;

TEST_CASE("normal forms and heights over Q") {
  CHECK(primitive_normal_form({0, -4, 6, 2}) == std::vector<i64>{0, 2, -3, -1});
  CHECK(height_Q({0, -4, 6, 2}) == 3);
  CHECK(height_Q({1, 1, 1, 1}) == 1);
  CHECK_THROWS(primitive_normal_form({0, 0}));
  auto p = make_point({FieldElement(Rational(1, 2)), FieldElement(Rational(-1, 3)), FieldElement(1)}, rational_field());
  CHECK(*height(p).exact == 6);
  CHECK(compare_height(p, 6) == 0);
  CHECK(compare_height(p, Rational(11, 2)) == 1);
  CHECK(compare_height(p, 7) == -1);
  CHECK_THROWS(make_point({FieldElement(0), FieldElement(0)}, rational_field()));
  CHECK_THROWS(make_point({FieldElement(1, 1)}, rational_field()));
}

TEST_CASE("heights over Q(i)") {
  auto K = quadratic_field_basic(-4);
  CHECK(*height(make_point({FieldElement(1), FieldElement(1, 1)}, K)).exact == 2);
  CHECK(*height(make_point({FieldElement(2), FieldElement(1, 1)}, K)).exact == 2);
  CHECK(*height(make_point({FieldElement(1), FieldElement(0, 1)}, K)).exact == 1);
}

TEST_CASE("heights are invariant under scaling") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> U(-9, 9);
  for (i64 disc : {-4L, -3L, -7L, 5L, 8L, 12L}) {
    auto K = quadratic_field_basic(disc);
    for (int t = 0; t < 40; ++t) {
      std::vector<FieldElement> x{FieldElement(U(rng), U(rng)), FieldElement(U(rng), U(rng)), FieldElement(U(rng), U(rng))};
      FieldElement lam(Rational(U(rng), 1 + std::abs(U(rng))), Rational(U(rng), 1 + std::abs(U(rng))));
      bool zero = lam.is_zero();
      for (auto& c : x) zero = zero && c.is_zero();
      if (zero || lam.is_zero()) continue;
      std::vector<FieldElement> y;
      for (auto& c : x) y.push_back(mul(c, lam, K.m));
      auto hx = height(make_point(x, K)), hy = height(make_point(y, K));
      CHECK(hx.value == doctest::Approx(hy.value).epsilon(1e-12));
      if (hx.exact) CHECK(*hx.exact == *hy.exact);
      if (K.is_real_quadratic()) {
        // compare_height is exact, so it must place both at the same side of any rational.
        Rational B(static_cast<i64>(std::floor(hx.value)) + 1);
        CHECK(compare_height(make_point(x, K), B) == compare_height(make_point(y, K), B));
      }
    }
  }
}

TEST_CASE("Mahler measure equals the height of a root, exhaustively") {
  const i64 R = 12;
  int checked = 0;
  for (i64 a = 1; a <= R; ++a)
    for (i64 b = -R; b <= R; ++b)
      for (i64 c = -R; c <= R; ++c) {
        if (c == 0 || std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) != 1) continue;
        if (is_square(b * b - 4 * a * c)) continue;
        auto q = make_quadratic_point(a, b, c);
        const double M = quadratic_point_height(q);
        REQUIRE(M == doctest::Approx(oracle::mahler(a, b, c)).epsilon(1e-12));
        auto K = quadratic_field_basic(field_discriminant(q));
        for (int sg : {1, -1}) {
          auto p = make_point({quadratic_root(q, sg), FieldElement(1)}, K);
          REQUIRE(height(p).value == doctest::Approx(M).epsilon(1e-12));
        }
        ++checked;
      }
  CHECK(checked == 5433);
  CHECK(mahler_measure(0, 3, -5) == 5);
  CHECK(mahler_measure(-1, 0, 2) == doctest::Approx(2));
  CHECK_THROWS(make_quadratic_point(1, 0, -4));
  CHECK_THROWS(make_quadratic_point(2, 0, 4));
}

TEST_CASE("quadratic points know their field") {
  auto q = make_quadratic_point(1, 0, 1);
  CHECK(poly_discriminant(q) == -4);
  CHECK(field_discriminant(q) == -4);
  CHECK(field_discriminant(make_quadratic_point(1, 1, -1)) == 5);
  CHECK(field_discriminant(make_quadratic_point(1, 0, -12)) == 12);
  auto r = quadratic_root(make_quadratic_point(1, 0, -12), 1);
  CHECK(r == FieldElement(0, 2));
}

TEST_CASE("twisted fiber height factors with the inverse ideal norm") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> U(-15, 15);
  int n = 0;
  while (n < 200) {
    i64 y0 = U(rng), y1 = U(rng), y2 = U(rng), y3 = U(rng);
    if (!y0 || !y1 || !y2 || !y3 || std::gcd(y0, y1) != 1 && std::gcd(std::abs(y0), std::abs(y1)) != 1) continue;
    if (std::gcd(std::abs(y0), std::abs(y1)) != 1) continue;
    auto h = twisted_fiber_height(y0, y1, RationalFiberCoord{y2, y3});
    CHECK(h.factored == doctest::Approx(h.direct).epsilon(1e-12));
    ++n;
  }
  bool differs = false;
  for (auto [a, b, c] : std::vector<std::array<i64, 3>>{{2, 1, 1}, {3, 1, -1}, {1, 1, 1}, {5, 2, 3}, {2, 0, -3}})
    for (auto [y0, y1] : std::vector<std::array<i64, 2>>{{1, 1}, {1, 2}, {3, -2}}) {
      auto h = twisted_fiber_height(y0, y1, make_quadratic_point(a, b, c));
      CHECK(h.factored == doctest::Approx(h.direct).epsilon(1e-9));
      differs = differs || std::fabs(h.factored_inverse - h.direct) > 1e-6;
    }
  CHECK(differs);
  CHECK_THROWS(twisted_fiber_height(0, 1, RationalFiberCoord{1, 1}));
  CHECK_THROWS(twisted_fiber_height(2, 4, RationalFiberCoord{1, 1}));
}
