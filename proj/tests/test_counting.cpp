#include "doctest.h"

#include <numeric>
#include <set>

#include "cubicpts/counting.hpp"
#include "cubicpts/parallel.hpp"
#include "cubicpts/zeta.hpp"
#include "oracles.hpp"

using namespace cubicpts;

namespace {

// Four nested loops, nothing clever.
std::map<std::string, i64> naive_V(i64 B) {
  std::map<std::string, i64> c;
  for (i64 a = 0; a <= B; ++a)
    for (i64 b = -B; b <= B; ++b)
      for (i64 x = -B; x <= B; ++x)
        for (i64 d = -B; d <= B; ++d) {
          std::array<i64, 4> t{a, b, x, d};
          bool first_pos = true;
          for (i64 v : t)
            if (v) {
              first_pos = v > 0;
              break;
            }
          if (!first_pos || (!a && !b && !x && !d)) continue;
          if (std::gcd(std::gcd(a, b), std::gcd(x, d)) != 1) continue;
          if (a * a * x != b * b * d) continue;
          if (!a && !b) continue;
          c[locus_name(classify(t))] += 1;
        }
  return c;
}

}  // namespace

TEST_CASE("rational V points match a naive scan") {
  for (i64 B = 1; B <= 9; ++B) {
    auto naive = naive_V(B);
    auto r = count_V(rational_field(), B);
    for (auto& [k, v] : r.by_locus) CHECK(v == naive[k]);
    CHECK(naive["V_other"] == 0);
    auto bf = brute_force_count(rational_field(), B, LocusFilter::V);
    CHECK(bf.by_locus == naive);
  }
  const std::vector<i64> frozen{12, 32, 72, 128, 208, 256, 376, 480};
  for (i64 B = 1; B <= 8; ++B) CHECK(count_V(rational_field(), B).total == frozen[B - 1]);
}

TEST_CASE("fast count agrees with the brute histogram") {
  auto h = brute_force_histogram_Q(120);
  for (i64 B : {1L, 2L, 5L, 17L, 50L, 99L, 120L}) {
    auto r = count_V(rational_field(), B);
    for (Locus l : v_loci()) CHECK(r.by_locus[locus_name(l)] == h.count(l, B));
  }
  CHECK_THROWS(brute_force_histogram_Q(401));
}

TEST_CASE("parametrized U count against brute force") {
  auto bf = brute_force_count(rational_field(), 300, LocusFilter::U);
  auto pc = parametrized_count_U(rational_field(), 300);
  CHECK(bf.total == pc.total);
  CHECK(pc.total == 367820);
}

TEST_CASE("imaginary quadratic fields") {
  for (i64 disc : {-4L, -3L, -7L}) {
    auto K = field_invariants(disc);
    for (i64 B : {1L, 3L, 8L, 15L}) {
      auto bf = brute_force_count(K, B, LocusFilter::V);
      auto fast = count_V(K, B);
      for (auto& [k, v] : bf.by_locus) CHECK(fast.by_locus[k] == v);
    }
  }
  CHECK_THROWS(count_V(field_invariants(-23), 10));
  CHECK_THROWS(count_V(field_invariants(5), 10));
}

TEST_CASE("P^1 counts") {
  i64 s = 0;
  for (i64 h = 1; h <= 500; ++h) s += oracle::p1_points_of_height_Q(h);
  CHECK(count_P1(rational_field(), 500) == s);
  auto g = oracle::p1_histogram_gaussian(40);
  CHECK(count_P1(field_invariants(-4), 40) == std::accumulate(g.begin(), g.end(), i64{0}));
  CHECK(count_P1(rational_field(), 0) == 0);
}

TEST_CASE("coprime pairs in a box") {
  Sieve sv(200);
  for (i64 X : {1L, 7L, 60L})
    for (i64 Y : {1L, 13L, 200L}) {
      i64 n = 0;
      for (i64 a = 1; a <= X; ++a)
        for (i64 b = 1; b <= Y; ++b) n += std::gcd(a, b) == 1;
      CHECK(coprime_pairs_box(X, Y, sv) == n);
    }
}

TEST_CASE("ring of integers helpers") {
  ImagQuadRing Zi(-4), E(-3);
  CHECK(Zi.omega() == 4);
  CHECK(E.omega() == 6);
  CHECK(Zi.ideal_norm({{2, 0}, {1, 1}}) == 2);
  CHECK(Zi.ideal_norm({{3, 0}, {0, 3}}) == 9);
  CHECK(Zi.ideal_norm({{1, 2}, {1, -2}}) == 1);
  for (const auto& x : E.elements_upto(30))
    for (const auto& y : E.elements_upto(10)) CHECK(E.norm(E.mul(x, y)) == E.norm(x) * E.norm(y));
  auto A = Zi.cumulative_counts(25);
  // sums of two squares inside a disc, zero included
  i64 n = 0;
  for (i64 a = -5; a <= 5; ++a)
    for (i64 b = -5; b <= 5; ++b) n += a * a + b * b <= 25;
  CHECK(A[25] == n);
  OKElem q;
  CHECK(Zi.divides({1, 1}, {2, 0}, &q));
  CHECK(Zi.mul(q, {1, 1}) == OKElem{2, 0});
  CHECK_FALSE(Zi.divides({2, 0}, {1, 1}));
}

TEST_CASE("ideal mobius sums vanish over divisors") {
  for (i64 disc : {-4L, -3L, -7L}) {
    ImagQuadRing R(disc);
    auto units = R.elements_upto(1);
    auto els = R.elements_upto(60);
    auto rep = [&](OKElem g) {
      OKElem b = g;
      for (auto& u : units) b = std::min(b, R.mul(u, g));
      return b;
    };
    for (const auto& g : els) {
      if (R.norm(g) == 1 || rep(g) != g) continue;
      int s = 0;
      for (const auto& d : els)
        if (rep(d) == d && R.divides(d, g)) s += ideal_mobius(R, d);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("mobius inversion on lattice boxes") {
  for (double B : {20.0, 75.0, 300.0}) {
    LatticeBox box;
    box.B = B;
    box.kappa_per_place = {1.0};
    auto q = mobius_inversion_check(rational_field(), box);
    CHECK(q.direct == q.inverted);
    CHECK(q.direct > 0);
    box.kappa_per_place = {1.5, 1.5};
    auto g = mobius_inversion_check(field_invariants(-4), box);
    CHECK(g.direct == g.inverted);
  }
}

TEST_CASE("lattice counts approach their main term") {
  LatticeBox box;
  box.kappa_per_place = {1.3};
  auto s = lattice_deviation_slope(box, rational_field(), {1e3, 1e4, 1e5, 1e6});
  CHECK(s.slope <= 1.1);
  CHECK(s.main_ratio == doctest::Approx(1.0).epsilon(0.01));
  box.B = 1000;
  auto c = lattice_count_M1(box, rational_field());
  CHECK(c.count == 4 * static_cast<i64>(1000 / (1.3 * 1.3)) * static_cast<i64>(1000 / 1.3));
  LatticeBox gb;
  gb.kappa_per_place = {1.2, 1.2};
  gb.a2_norm = 2;
  auto t = lattice_deviation_slope(gb, field_invariants(-4), {1e2, 1e3, 1e4});
  CHECK(t.main_ratio == doctest::Approx(1.0).epsilon(0.05));
  gb.a2_norm = 3;
  gb.B = 100;
  CHECK_THROWS(lattice_count_M1(gb, field_invariants(-4)));
}

TEST_CASE("counts are identical across worker counts") {
  auto a = count_V(rational_field(), 200000, 1);
  auto b = count_V(rational_field(), 200000, 4);
  CHECK(a.same_counts(b));
  auto c = count_V(field_invariants(-3), 2000, 1), d = count_V(field_invariants(-3), 2000, 3);
  CHECK(c.same_counts(d));
}

TEST_CASE("relative error shrinks") {
  double prev = 1.0;
  for (i64 B : {1000L, 10000L, 100000L, 1000000L}) {
    auto r = count_V(rational_field(), B);
    CHECK(r.relative_error < prev);
    prev = r.relative_error;
  }
  CHECK(prev < 1e-3);
}
