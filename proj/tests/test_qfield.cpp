#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "cubicpts/qfield.hpp"

using namespace cubicpts;

namespace {

// Reduced primitive forms of negative discriminant d.
i64 reduced_forms(i64 d) {
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= -d; ++a)
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 n = b * b - d;
      if (n % (4 * a)) continue;
      i64 c = n / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

int legendre_euler(i64 a, i64 p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  i64 r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("discriminants of quadratic fields") {
  CHECK(discriminant(-1) == -4);
  CHECK(discriminant(-3) == -3);
  CHECK(discriminant(2) == 8);
  CHECK(discriminant(5) == 5);
  CHECK_THROWS(discriminant(12));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-23));
  CHECK(is_fundamental_discriminant(40));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(1));
  CHECK_FALSE(is_fundamental_discriminant(12 * 4));
  CHECK(squarefree_kernel_of_disc(-4) == -1);
  CHECK(squarefree_kernel_of_disc(40) == 10);
  auto ds = fundamental_discriminants(12);
  CHECK(ds == std::vector<i64>{-3, -4, 5, -7, -8, 8, -11, 12});
}

TEST_CASE("kronecker symbol matches Euler's criterion at odd primes") {
  for (i64 d : {-3L, -4L, -7L, -23L, 5L, 8L, 12L, 229L})
    for (i64 p : {3L, 5L, 7L, 11L, 13L, 101L, 997L})
      if (d % p) CHECK(kronecker_symbol(d, p) == legendre_euler(d, p));
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(-7, 2) == 1);
  CHECK(jacobi_symbol(2, 15) == 1);
}

TEST_CASE("field arithmetic identities") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> U(-20, 20);
  for (i64 m : {-1L, -3L, 2L, 10L}) {
    for (int t = 0; t < 50; ++t) {
      FieldElement x(Rational(U(rng), 1 + std::abs(U(rng))), Rational(U(rng), 1 + std::abs(U(rng))));
      FieldElement y(Rational(U(rng)), Rational(U(rng), 3));
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(mul(x, inverse(x, m), m) == FieldElement(1));
      CHECK(norm(mul(x, y, m), m) == norm(x, m) * norm(y, m));
      CHECK(trace(add(x, conj(x))) == 2 * trace(x));
      CHECK(sub(add(x, y), y) == x);
    }
  }
  CHECK(is_integral(FieldElement(Rational(1, 2), Rational(1, 2)), -3));
  CHECK_FALSE(is_integral(FieldElement(Rational(1, 2), Rational(1, 2)), -1));
  CHECK(sign_quadratic(Rational(-3), Rational(1), 10) == 1);
  CHECK(sign_quadratic(Rational(-4), Rational(1), 10) == -1);
  CHECK(sign_quadratic(Rational(-4), Rational(1), 16) == 0);
}

TEST_CASE("ideal norms") {
  FieldDescriptor Qi = quadratic_field_basic(-4);
  CHECK(ideal_gcd_norm({FieldElement(2), FieldElement(1, 1)}, Qi) == 2);
  CHECK(ideal_gcd_norm({FieldElement(3), FieldElement(0, 3)}, Qi) == 9);
  CHECK(ideal_gcd_norm({FieldElement(Rational(1, 2)), FieldElement(1)}, Qi) == Rational(1, 4));
  FieldDescriptor K = quadratic_field_basic(-3);
  CHECK(ideal_gcd_norm({FieldElement(Rational(1, 2), Rational(1, 2))}, K) == 1);
  CHECK(make_ideal({FieldElement(6), FieldElement(4)}, rational_field()).norm == 2);
}

TEST_CASE("class numbers of imaginary fields match reduced form counts") {
  CHECK(field_invariants(-4).class_number == 1);
  CHECK(field_invariants(-23).class_number == 3);
  for (i64 d : fundamental_discriminants(400)) {
    if (d > 0) continue;
    CHECK(field_invariants(d).class_number == reduced_forms(d));
  }
}

TEST_CASE("fundamental units are minimal solutions") {
  for (i64 d : fundamental_discriminants(300)) {
    if (d < 0) continue;
    auto [x, y] = fundamental_unit_xy(d);
    i64 y0 = 0;
    for (i64 t = 1; !y0; ++t)
      for (i64 e : {-4, 4})
        if (is_square(d * t * t + e)) y0 = t;
    CHECK(y == y0);
    BigInt n = x * x - d * y * y;
    CHECK((n == 4 || n == -4));
  }
  auto f = field_invariants(61);
  CHECK(f.fundamental_unit.has_value());
  CHECK(f.regulator == doctest::Approx(std::log((39 + 5 * std::sqrt(61.0)) / 2)).epsilon(1e-12));
  CHECK(field_invariants(40).class_number == 2);
  CHECK(field_invariants(229).class_number == 3);
  CHECK(field_invariants(316).class_number == 3);
  CHECK(field_invariants(328).class_number == 4);
}

TEST_CASE("unit reduction keeps the pair in the fundamental domain") {
  FieldDescriptor K = field_invariants(8);
  FieldElement eps(1, 1);
  FieldElement a(3, 1), b(1, -2);
  FieldElement e5 = mul(mul(eps, eps, 2), mul(mul(eps, eps, 2), eps, 2), 2);
  auto r1 = unit_reduce({a, b}, K);
  auto r2 = unit_reduce({mul(a, e5, 2), mul(b, e5, 2)}, K);
  CHECK(r1 == r2);
}
