#include "doctest.h"

#include <cmath>

#include "cubicpts/tamagawa.hpp"

using namespace cubicpts;

TEST_CASE("real density of P^1") {
  auto t = tau_inf_P1();
  CHECK(t.value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(t.error_estimate < 1e-8);
}

TEST_CASE("real density of a V fiber is 4 / kappa^3") {
  for (auto [y0, y1] : std::vector<std::pair<i64, i64>>{{1, 1}, {1, 0}, {0, 1}, {2, 3}, {-5, 2}, {7, 11}, {1, -40}}) {
    const double k = static_cast<double>(std::max(std::llabs(y0), std::llabs(y1)));
    CHECK(tau_inf_V_fiber(y0, y1).value == doctest::Approx(4.0 / (k * k * k)).epsilon(1e-9));
  }
  CHECK_THROWS(tau_inf_V_fiber(2, 4));
  CHECK_THROWS(tau_inf_V_fiber(0, 0));
}

TEST_CASE("p-adic density of P^1 tends to 1 + 1/p") {
  for (i64 p : {2L, 3L, 5L, 97L}) {
    double prev = 0;
    for (int k : {1, 2, 4, 8}) {
      auto t = tau_p_P1(p, k);
      const double lim = 1.0 + 1.0 / static_cast<double>(p);
      CHECK(t.value > prev);
      CHECK(std::fabs(t.value - lim) <= t.error_estimate + 1e-15);
      prev = t.value;
    }
  }
  CHECK(tau_p_P1(2, 1).value == doctest::Approx(1.25));
  CHECK_THROWS(tau_p_P1(4, 2));
  CHECK_THROWS(tau_p_P1(3, 0));
}

TEST_CASE("symmetric square fiber densities") {
  // For kappa = 1 the density is (1/2) int int |t - u| f f + 8 int r^2 f(r)^2 dr with
  // f(t) = max(|t|, 1)^-3, which is 20/3 + 16/3.
  CHECK(tau_inf_sym2_fiber(1, 1, 9).value == doctest::Approx(12.0).epsilon(1e-8));
  CHECK(tau_inf_sym2_fiber(1, 1, 6).value == doctest::Approx(12.0).epsilon(1e-8));
  for (auto [y0, y1] : std::vector<std::pair<i64, i64>>{{1, 2}, {3, 2}, {-5, 4}}) {
    const double k = static_cast<double>(std::max(std::llabs(y0), std::llabs(y1)));
    CHECK(tau_inf_sym2_fiber(y0, y1, 9).value == doctest::Approx(12.0 * std::pow(k, -9)).epsilon(1e-7));
    CHECK(tau_inf_sym2_fiber(y0, y1, 6).value == doctest::Approx(12.0 * std::pow(k, -6)).epsilon(1e-7));
  }
  CHECK_THROWS(tau_inf_sym2_fiber(1, 1, 7));
}
