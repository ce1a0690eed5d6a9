#include "doctest.h"

#include <numeric>
#include <random>

#include "cubicpts/arith.hpp"
#include "cubicpts/parallel.hpp"

using namespace cubicpts;

TEST_CASE("integer roots at the edges") {
  for (i64 n : {0L, 1L, 2L, 3L, 4L, 15L, 16L, 17L, 999999999999L, 1000000000000L, 4611686014132420609L}) {
    i64 r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  for (i64 n : {0L, 1L, 7L, 8L, 9L, 26L, 27L, 28L, 999999999999L}) {
    i64 r = icbrt_floor(n);
    CHECK(r * r * r <= n);
    CHECK((r + 1) * (r + 1) * (r + 1) > n);
  }
  CHECK(is_square(144));
  CHECK_FALSE(is_square(145));
  CHECK_FALSE(is_square(-4));
}

TEST_CASE("floor division rounds toward minus infinity") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-8, 2) == -4);
}

TEST_CASE("multiplicative functions agree with trial division") {
  Sieve sv(5000);
  for (i64 n = 1; n <= 5000; ++n) {
    i64 phi = 0;
    for (i64 k = 1; k <= n; ++k) phi += std::gcd(n, k) == 1;
    if (n <= 600) REQUIRE(sv.phi(n) == phi);
    CHECK(sv.mu(n) == mobius(n));
    CHECK(sv.phi(n) == euler_phi(n));
    i64 prod = 1;
    for (auto [p, e] : sv.factor(n)) prod *= ipow(p, e);
    CHECK(prod == n);
  }
  std::vector<i64> d;
  sv.divisors(360, d);
  CHECK(d.size() == 24);
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
}

TEST_CASE("mobius sums vanish above one") {
  for (i64 n = 2; n <= 300; ++n) {
    int s = 0;
    for (i64 d = 1; d <= n; ++d)
      if (n % d == 0) s += mobius(d);
    CHECK(s == 0);
  }
}

TEST_CASE("chunked reduction is independent of the worker count") {
  std::vector<double> xs(100000);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto& x : xs) x = U(rng) * 1e8;
  auto run = [&](unsigned w) {
    return chunked_reduce<double>(
        static_cast<i64>(xs.size()), w, 0.0,
        [&](i64 b, i64 e) {
          double s = 0;
          for (i64 i = b; i < e; ++i) s += xs[i];
          return s;
        },
        [](double a, double b) { return a + b; });
  };
  double a = run(1);
  CHECK(run(4) == a);
  CHECK(run(hardware_workers()) == a);
}
