#include <boost/math/special_functions/zeta.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cubicpts/counting.hpp"
#include "cubicpts/parallel.hpp"
#include "cubicpts/quadratic.hpp"
#include "cubicpts/sym2.hpp"
#include "cubicpts/tamagawa.hpp"
#include "cubicpts/zeta.hpp"
#include "oracles.hpp"

using namespace cubicpts;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool c, const std::string& what) {
    if (!c) {
      if (!ok) note << "; ";
      note << "failed: " << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << " exception: " << e.what();
  }
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::printf("%s %2d %-34s %6.1fs  %s\n", o.ok ? "PASS" : "FAIL", id, title, sec, o.note.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int main() {
  const unsigned hw = hardware_workers();
  const auto Q = rational_field();
  const auto Qi = field_invariants(-4);
  const auto cs = predicted_constants();

  criterion(1, "oracle equivalence", [&](Outcome& o) {
    auto h = brute_force_histogram_Q(300, hw);
    std::vector<i64> Bs;
    for (i64 B = 1; B <= 50; ++B) Bs.push_back(B);
    Bs.insert(Bs.end(), {100, 200, 300});
    int mism = 0;
    for (i64 B : Bs) {
      auto fast = count_V(Q, B, hw);
      i64 v = 0;
      for (Locus l : v_loci()) {
        v += h.count(l, B);
        if (fast.by_locus[locus_name(l)] != h.count(l, B)) ++mism;
      }
      if (fast.total != v) ++mism;
      if (parametrized_count_U(Q, B, hw).total != h.count(Locus::U_open, B)) ++mism;
    }
    o.note << Bs.size() << " cutoffs, " << mism << " mismatches";
    o.require(mism == 0, "exact agreement");
  });

  criterion(2, "surface count constant", [&](Outcome& o) {
    const double c = find_constant(cs, "c_V_Q").value;
    double prev = 1e9;
    for (i64 B : {1000L, 10000L, 100000L, 1000000L}) {
      auto r = count_V(Q, B, hw);
      const double ratio = static_cast<double>(r.total) / (static_cast<double>(B) * B);
      o.note << "B=" << B << " ratio=" << fmt(ratio) << " ";
      o.require(r.relative_error < prev, "decreasing error at " + std::to_string(B));
      prev = r.relative_error;
      if (B == 100000) o.require(std::fabs(ratio / c - 1) <= 0.02, "2% at 1e5");
      if (B == 1000000) o.require(std::fabs(ratio / c - 1) <= 0.005, "0.5% at 1e6");
    }
  });

  criterion(3, "Schanuel baseline", [&](Outcome& o) {
    const double rq = static_cast<double>(count_P1(Q, 100000)) / 1e10;
    const double ri = static_cast<double>(count_P1(Qi, 1000)) / 1e6;
    const double ci = schanuel_constant(Qi);
    o.note << "Q " << fmt(rq) << " vs " << fmt(12 / (M_PI * M_PI)) << ", Q(i) " << fmt(ri) << " vs " << fmt(ci);
    o.require(std::fabs(rq / (12 / (M_PI * M_PI)) - 1) <= 0.01, "Q within 1%");
    o.require(std::fabs(ri / ci - 1) <= 0.05, "Q(i) within 5%");
  });

  criterion(4, "four to one parametrisation", [&](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<i64> U01(-3000, 3000), U2(-1000, 1000), U3(-100000, 100000);
    int bad = 0, n = 0;
    while (n < 10000) {
      TorsorTuple y{U01(rng), U01(rng), U2(rng), U3(rng)};
      if (!y.y0 || !y.y1 || !y.y2 || !y.y3 || gcd64(y.y0, y.y1) != 1 || gcd64(y.y2, y.y3) != 1) continue;
      auto s = parametrize(y);
      auto ys = fibers_over(s.t);
      std::set<TorsorTuple> distinct(ys.begin(), ys.end());
      bool ok = distinct.size() == 4 && distinct.count(y);
      for (const auto& z : ys) ok = ok && parametrize(z).t == s.t;
      bad += !ok;
      ++n;
    }
    o.note << n << " points, " << bad << " exceptions";
    o.require(bad == 0, "zero exceptions");
  });

  criterion(5, "lattice lemma", [&](Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> K(1.0, 3.0);
    std::uniform_int_distribution<i64> A(1, 5);
    double worst_slope = 0, worst_ratio = 0;
    for (int i = 0; i < 10; ++i) {
      LatticeBox box;
      box.kappa_per_place = {K(rng)};
      box.a2_norm = A(rng);
      box.a3_norm = A(rng);
      auto s = lattice_deviation_slope(box, Q, {1e2, 1e3, 1e4, 1e5});
      worst_slope = std::max(worst_slope, s.slope);
      worst_ratio = std::max(worst_ratio, std::fabs(s.main_ratio - 1));
    }
    o.note << "max slope " << fmt(worst_slope) << ", max |ratio-1| " << fmt(worst_ratio);
    o.require(worst_slope <= 1.1, "slope");
    o.require(worst_ratio <= 0.01, "main term");
  });

  criterion(6, "Mobius inversion", [&](Outcome& o) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> K(1.0, 2.5), Bd(50, 400);
    int boxes = 0, bad = 0;
    for (int i = 0; i < 8; ++i) {
      LatticeBox box;
      box.B = Bd(rng);
      box.kappa_per_place = {K(rng)};
      auto q = mobius_inversion_check(Q, box);
      bad += q.direct != q.inverted;
      LatticeBox g;
      g.B = Bd(rng) / 2;
      double k = std::sqrt(K(rng));
      g.kappa_per_place = {k, k};
      auto r = mobius_inversion_check(Qi, g);
      bad += r.direct != r.inverted;
      boxes += 2;
    }
    o.note << boxes << " boxes, " << bad << " mismatches";
    o.require(bad == 0, "exact identity");
  });

  criterion(7, "Tamagawa scaling", [&](Outcome& o) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<i64> U(-60, 60);
    auto random_pair = [&] {
      for (;;) {
        i64 a = U(rng), b = U(rng);
        if ((a || b) && gcd64(a, b) == 1) return std::pair<i64, i64>{a, b};
      }
    };
    double worst3 = 0;
    for (int i = 0; i < 20; ++i) {
      auto [a, b] = random_pair();
      double H = static_cast<double>(std::max(std::llabs(a), std::llabs(b)));
      worst3 = std::max(worst3, std::fabs(H * H * H * tau_inf_V_fiber(a, b).value / 4.0 - 1));
    }
    const double base9 = tau_inf_sym2_fiber(1, 1, 9).value, base6 = tau_inf_sym2_fiber(1, 1, 6).value;
    double worst96 = 0;
    std::uniform_int_distribution<i64> S(-12, 12);
    for (int i = 0; i < 10; ++i) {
      i64 a, b;
      do {
        a = S(rng);
        b = S(rng);
      } while (!(a || b) || gcd64(a, b) != 1);
      double H = static_cast<double>(std::max(std::llabs(a), std::llabs(b)));
      worst96 = std::max(worst96, std::fabs(std::pow(H, 9) * tau_inf_sym2_fiber(a, b, 9).value / base9 - 1));
      worst96 = std::max(worst96, std::fabs(std::pow(H, 6) * tau_inf_sym2_fiber(a, b, 6).value / base6 - 1));
    }
    double worstp = 0;
    bool pok = true;
    for (i64 p : {2L, 3L, 5L, 7L, 97L})
      for (int k : {2, 4, 6}) {
        double d = std::fabs(tau_p_P1(p, k).value - (1 + 1.0 / p));
        worstp = std::max(worstp, d);
        pok = pok && d <= std::pow(static_cast<double>(p), -k + 1);
      }
    o.note << "V " << fmt(worst3) << ", sym2 " << fmt(worst96) << ", p-adic " << fmt(worstp);
    o.require(worst3 <= 1e-4, "H^3 scaling");
    o.require(worst96 <= 1e-2, "H^9 / H^6 scaling");
    o.require(pok, "p-adic limit");
  });

  criterion(8, "zeta layer", [&](Outcome& o) {
    long double direct = 0;
    Sieve sv(2000000);
    for (i64 h = 1; h <= 2000000; ++h) direct += 4.0L * sv.phi(h) / (static_cast<long double>(h) * h * h);
    // tail: sum_{h > N} 4 phi(h) / h^3 ~ (24 / pi^2) / N
    direct += 24.0L / (M_PI * M_PI) / 2000000.0L;
    const double closed = 4 * boost::math::zeta(2.0) / boost::math::zeta(3.0);
    const double lib = height_zeta_P1(Q, 3.0, 0.0).value;
    o.note << "direct " << fmt(static_cast<double>(direct)) << " closed " << fmt(closed);
    o.require(std::fabs(static_cast<double>(direct) - closed) <= 1e-6, "direct summation");
    o.require(std::fabs(lib - closed) <= 1e-6, "library value");
    double worst = 0;
    for (i64 d : fundamental_discriminants(100))
      for (double s : {1.5, 2.0}) {
        const double ref = boost::math::zeta(s) * oracle::dirichlet_L(s, d);
        worst = std::max(worst, std::fabs(dedekind_zeta(s, d).value - ref) / ref);
      }
    o.note << " dedekind " << fmt(worst);
    o.require(worst <= 1e-8, "Dedekind zeta");
    o.require(field_invariants(-4).class_number == 1 && field_invariants(-23).class_number == 3, "class numbers");
  });

  criterion(9, "symmetric square of V and P^1", [&](Outcome& o) {
    const double c = find_constant(cs, "c_Sym2V").value;
    double prev = 1e9;
    for (i64 B : {100L, 200L, 300L, 500L}) {
      auto r = count_sym2_V(B, hw);
      const double ratio = static_cast<double>(r.N_Z()) / std::pow(static_cast<double>(B), 3);
      o.note << fmt(ratio) << " ";
      o.require(std::fabs(ratio - c) < prev, "monotone trend at " + std::to_string(B));
      prev = std::fabs(ratio - c);
      o.require(r.N_Z() + r.N_offZ() == r.total(), "partition");
      if (B == 500) o.require(prev / c <= 0.2, "20% at 500");
    }
    std::vector<double> C;
    for (i64 B : {125L, 250L, 500L}) {
      auto r = count_sym2_V(B, hw);
      C.push_back(static_cast<double>(r.N_offZ()) / (B * B * std::log(static_cast<double>(B))));
    }
    o.note << "C " << fmt(C[0]) << " " << fmt(C[1]) << " " << fmt(C[2]);
    for (std::size_t i = 1; i < C.size(); ++i) o.require(std::fabs(C[i] / C[i - 1] - 1) <= 0.1, "stable C");
    const double p = static_cast<double>(count_sym2_P1(1000).total()) / 1e9;
    o.note << " P1 " << fmt(p);
    o.require(std::fabs(p / find_constant(cs, "c_Sym2P1_Q").value - 1) <= 0.1, "Sym2 P1 within 10%");
  });

  criterion(10, "symmetric square of P1 x P1", [&](Outcome& o) {
    const double c = find_constant(cs, "c_Sym2P1xP1").value;
    double prev = 1e9, last = 0;
    for (i64 B : {100L, 200L, 300L, 500L}) {
      auto r = count_sym2_P1xP1(B, hw);
      last = static_cast<double>(r.total()) / std::pow(static_cast<double>(B), 3);
      o.note << fmt(last) << " ";
      o.require(std::fabs(last - c) < prev, "monotone trend at " + std::to_string(B));
      prev = std::fabs(last - c);
      o.require(r.rational_first == r.quadratic_first, "ruling symmetry");
    }
    o.require(std::fabs(last / c - 1) <= 0.25, "25% at 500");
  });

  criterion(11, "L-sum growth", [&](Outcome& o) {
    auto fit = fit_L_sums({1e3, 1e4, 1e5}, hw);
    // residual of S2 against a + b log Y
    double worst = 0;
    for (const auto& r : fit.rows) {
      const double pred = fit.s2_intercept + fit.s2_slope * std::log(r.Y);
      worst = std::max(worst, std::fabs(r.S2 - pred) / r.S2);
    }
    o.note << "S1 exponent " << fmt(fit.s1_exponent) << ", S2 slope " << fmt(fit.s2_slope) << ", resid " << fmt(worst);
    o.require(fit.s1_exponent >= 0.4 && fit.s1_exponent <= 0.6, "S1 exponent");
    o.require(fit.s2_slope > 0 && worst <= 0.05, "S2 logarithmic");
  });

  criterion(12, "determinism across workers", [&](Outcome& o) {
    std::vector<unsigned> ws{1, 4, std::max(hw, 2u)};
    int bad = 0;
    auto v1 = count_V(Q, 300000, 1);
    auto i1 = count_V(Qi, 3000, 1);
    auto s1 = count_sym2_V(200, 1);
    auto p1 = count_sym2_P1xP1(200, 1);
    auto q1 = count_quadratic_breakdown(150, 1);
    auto l1 = discriminant_L_sums(20000, 1);
    auto b1 = brute_force_histogram_Q(150, 1);
    for (unsigned w : ws) {
      bad += !count_V(Q, 300000, w).same_counts(v1);
      bad += !count_V(Qi, 3000, w).same_counts(i1);
      bad += !(count_sym2_V(200, w) == s1);
      bad += !(count_sym2_P1xP1(200, w) == p1);
      bad += !(count_quadratic_breakdown(150, w) == q1);
      auto l = discriminant_L_sums(20000, w);
      bad += l.S1 != l1.S1 || l.S2 != l1.S2;
      bad += brute_force_histogram_Q(150, w).per_height != b1.per_height;
    }
    o.note << "workers {1, 4, " << ws.back() << "}, " << bad << " differences";
    o.require(bad == 0, "identical counts");
  });

  return failures == 0 ? 0 : 1;
}
