#include "cubicpts/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "cubicpts/geometry.hpp"
#include "cubicpts/heights.hpp"
#include "cubicpts/parallel.hpp"

namespace cubicpts {

namespace {

constexpr i64 kQuadraticCeiling = 1000;

void fill_mahler(QuadElem& e, i64 disc) {
  const i64 D = e.b * e.b - 4 * e.a * e.c;
  e.p2 = 2 * std::max(e.a, std::abs(e.c));
  e.q2 = 0;
  if (D > 0 && sign_qi(std::abs(e.b) - e.p2, e.f, disc) > 0) {
    e.p2 = std::abs(e.b);
    e.q2 = e.f;
  }
  e.mahler = 0.5 * (static_cast<double>(e.p2) + static_cast<double>(e.q2) * std::sqrt(static_cast<double>(std::abs(disc))) *
                                                    (disc > 0 ? 1.0 : 0.0));
}

bool elem_less(const QuadElem& x, const QuadElem& y) {
  return std::tie(x.mahler, x.a, x.b, x.c) < std::tie(y.mahler, y.a, y.b, y.c);
}

// One divisor sieve shared by every field; grows on demand.
const Sieve& shared_sieve(i64 n) {
  static std::mutex mu;
  static std::unique_ptr<Sieve> sv;
  std::lock_guard<std::mutex> lock(mu);
  if (!sv || sv->limit() < n) sv = std::make_unique<Sieve>(std::max<i64>(n, 1024));
  return *sv;
}

FieldElementList elements_with_sieve(i64 disc, double X, const Sieve& sv) {
  FieldElementList out;
  out.disc = disc;
  const double Xs = X * (1 + 1e-12);
  const i64 Xi = static_cast<i64>(std::floor(Xs));
  if (Xi < 1) return out;
  const i64 ad = std::abs(disc);
  std::vector<i64> divs;
  for (i64 f = 1; static_cast<double>(ad) * f * f <= 4 * Xs * Xs; ++f) {
    const i64 D = disc * f * f;
    const i64 bmax = 2 * Xi;
    i64 b0 = -bmax;
    if (((b0 - D) % 2 + 2) % 2 != 0) ++b0;
    for (i64 b = b0; b <= bmax; b += 2) {
      const i64 n = (b * b - D) / 4;  // a c
      if (n == 0) continue;
      const i64 an = std::abs(n);
      if (an > Xi * Xi) continue;
      sv.divisors(an, divs);
      for (i64 a : divs) {
        if (a > Xi) continue;
        const i64 ac = an / a;
        if (ac > Xi) continue;
        const i64 c = n > 0 ? ac : -ac;
        if (std::gcd(std::gcd(a, std::abs(b)), ac) != 1) continue;
        QuadElem e{a, b, c, f};
        fill_mahler(e, disc);
        if (e.mahler <= Xs) out.elems.push_back(e);
      }
    }
  }
  std::sort(out.elems.begin(), out.elems.end(), elem_less);
  return out;
}

// Element (P + Q sqrt(disc)) / R.
struct KElem {
  i64 P, Q, R;
  double H;  // height of (elem : 1)
};

struct Basis2 {
  i128 u, v;
};

Basis2 to_basis(i128 X, i128 Y, i64 disc) {
  if (((disc % 4) + 4) % 4 == 1) return {X - Y, 2 * Y};
  return {X, 2 * Y};
}

Basis2 times_w(const Basis2& z, i64 disc) {
  if (((disc % 4) + 4) % 4 == 1) return {z.v * ((disc - 1) / 4), z.u + z.v};
  return {z.v * (disc / 4), z.u};
}

i128 lattice_index(const std::vector<Basis2>& vs) {
  i128 g = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      g = gcd128(g, vs[i].u * vs[j].v - vs[i].v * vs[j].u);
      if (g == 1) return 1;
    }
  return g;
}

int sign_big(const BigInt& p, const BigInt& q, i64 D) {
  return sign_quadratic(Rational(p), Rational(q), D);
}

struct BigQ {
  BigInt p, q;  // p + q sqrt(D)
};

BigQ big_mul(const BigQ& x, const BigQ& y, i64 D) { return {x.p * y.p + D * x.q * y.q, x.p * y.q + x.q * y.p}; }

BigQ big_abs(const BigQ& x, i64 D) {
  if (sign_big(x.p, x.q, D) < 0) return {-x.p, -x.q};
  return x;
}

BigQ big_max(const std::vector<BigQ>& xs, i64 D) {
  BigQ best = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (sign_big(xs[i].p - best.p, xs[i].q - best.q, D) > 0) best = xs[i];
  return best;
}

// Is M(beta) H_K(alpha : beta : 1) <= B ?
bool u2_height_leq(const KElem& al, const QuadElem& be, i64 disc, i64 B) {
  const i64 Rb = 2 * be.a;
  const i64 L = std::lcm(al.R, Rb);
  const i128 Xa = static_cast<i128>(L / al.R) * al.P, Ya = static_cast<i128>(L / al.R) * al.Q;
  const i128 Xb = static_cast<i128>(L / Rb) * (-be.b), Yb = static_cast<i128>(L / Rb) * be.f;
  std::vector<Basis2> gens;
  for (auto [X, Y] : {std::pair<i128, i128>{Xa, Ya}, {Xb, Yb}, {L, 0}}) {
    Basis2 z = to_basis(X, Y, disc);
    gens.push_back(z);
    gens.push_back(times_w(z, disc));
  }
  const i128 idx = lattice_index(gens);
  if (disc < 0) {
    const i128 ad = -disc;
    i128 m = static_cast<i128>(L) * L;
    m = std::max(m, Xa * Xa + ad * Ya * Ya);
    m = std::max(m, Xb * Xb + ad * Yb * Yb);
    return static_cast<i128>(be.p2 / 2) * m <= static_cast<i128>(B) * idx;
  }
  const long double s = std::sqrt(static_cast<long double>(disc));
  auto ev = [&](i128 X, i128 Y, int sg) {
    return std::fabs(static_cast<long double>(X) + sg * static_cast<long double>(Y) * s);
  };
  long double m1 = std::max({ev(Xa, Ya, 1), ev(Xb, Yb, 1), static_cast<long double>(L)});
  long double m2 = std::max({ev(Xa, Ya, -1), ev(Xb, Yb, -1), static_cast<long double>(L)});
  long double Mb = 0.5L * (static_cast<long double>(be.p2) + static_cast<long double>(be.q2) * s);
  long double lhs = Mb * m1 * m2;
  long double rhs = static_cast<long double>(B) * static_cast<long double>(idx);
  if (std::fabs(lhs - rhs) > 1e-12L * rhs) return lhs < rhs;
  auto big = [](i128 v) {
    BigInt r = static_cast<i64>(v / (static_cast<i128>(1) << 62));
    r *= BigInt(1) << 62;
    r += static_cast<i64>(v % (static_cast<i128>(1) << 62));
    return r;
  };
  std::vector<BigQ> s1, s2;
  for (auto [X, Y] : {std::pair<i128, i128>{Xa, Ya}, {Xb, Yb}, {L, 0}}) {
    s1.push_back(big_abs({big(X), big(Y)}, disc));
    s2.push_back(big_abs({big(X), -big(Y)}, disc));
  }
  BigQ prod = big_mul(big_mul({BigInt(be.p2), BigInt(be.q2)}, big_max(s1, disc), disc), big_max(s2, disc), disc);
  BigInt rhs2 = BigInt(2) * B * big(idx);
  return sign_big(prod.p - rhs2, prod.q, disc) <= 0;
}

i64 u2_field_count(i64 disc, i64 B) {
  const double X = 2.0 * static_cast<double>(B) / std::sqrt(static_cast<double>(std::abs(disc)));
  const i64 Xi = static_cast<i64>(std::floor(X * (1 + 1e-12)));
  const Sieve& sv = shared_sieve(Xi * Xi);
  FieldElementList E = elements_with_sieve(disc, X, sv);
  if (E.elems.empty()) return 0;
  std::vector<KElem> alphas;
  for (const auto& e : E.elems)
    for (int sg : {1, -1}) alphas.push_back({-e.b, sg * e.f, 2 * e.a, e.mahler});
  const i64 rq = isqrt(Xi);
  for (i64 q = 1; q <= rq; ++q)
    for (i64 p = -rq; p <= rq; ++p) {
      if (p == 0 || std::gcd(std::abs(p), q) != 1) continue;
      double h = static_cast<double>(std::max(std::abs(p), q));
      if (h * h <= X * (1 + 1e-12)) alphas.push_back({p, 0, q, h * h});
    }
  std::stable_sort(alphas.begin(), alphas.end(), [](const KElem& x, const KElem& y) { return x.H < y.H; });
  const double sqB = std::sqrt(static_cast<double>(B)) * (1 + 1e-12);
  i64 count = 0;
  for (const auto& be : E.elems) {
    if (be.mahler > sqB) break;
    const double lim = static_cast<double>(B) / be.mahler * (1 + 1e-9);
    for (const auto& al : alphas) {
      if (al.H > lim) break;
      if (u2_height_leq(al, be, disc, B)) ++count;
    }
  }
  return count;
}

bool product_leq(const QuadElem& u, const QuadElem& v, i64 disc, i64 B) {
  if (disc < 0) return static_cast<i128>(u.p2) * v.p2 <= static_cast<i128>(4) * B;
  const i128 p = static_cast<i128>(u.p2) * v.p2 + static_cast<i128>(disc) * u.q2 * v.q2 - static_cast<i128>(4) * B;
  const i128 q = static_cast<i128>(u.p2) * v.q2 + static_cast<i128>(u.q2) * v.p2;
  return sign_qi(p, q, disc) <= 0;
}

i64 same_field_count(i64 disc, i64 B) {
  const double X = 2.0 * static_cast<double>(B) / std::sqrt(static_cast<double>(std::abs(disc)));
  const i64 Xi = static_cast<i64>(std::floor(X * (1 + 1e-12)));
  FieldElementList E = elements_with_sieve(disc, X, shared_sieve(Xi * Xi));
  std::vector<double> ms;
  for (const auto& e : E.elems) ms.push_back(e.mahler);
  i64 count = 0;
  for (const auto& u : E.elems) {
    const double lim = static_cast<double>(B) / u.mahler;
    auto lo = std::lower_bound(ms.begin(), ms.end(), lim * (1 - 1e-9)) - ms.begin();
    auto hi = std::upper_bound(ms.begin(), ms.end(), lim * (1 + 1e-9)) - ms.begin();
    i64 ok = lo;
    for (auto j = lo; j < hi; ++j)
      if (product_leq(u, E.elems[static_cast<std::size_t>(j)], disc, B)) ++ok;
    count += 2 * ok;
  }
  return count;
}

}  // namespace

int sign_qi(i128 p, i128 q, i64 D) {
  if (D <= 0) throw std::invalid_argument("sign_qi: D must be positive");
  auto sg = [](i128 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  if (q == 0) return sg(p);
  if (p == 0) return sg(q);
  if (sg(p) == sg(q)) return sg(p);
  const i128 lhs = p * p, rhs = q * q * D;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sg(p) : sg(q);
}

FieldElementList quadratic_elements(i64 disc, double X) {
  if (!is_fundamental_discriminant(disc)) throw std::invalid_argument("quadratic_elements: not a fundamental discriminant");
  const i64 Xi = static_cast<i64>(std::floor(X * (1 + 1e-12)));
  return elements_with_sieve(disc, X, shared_sieve(std::max<i64>(Xi * Xi, 1)));
}

FieldElementList quadratic_elements_naive(i64 disc, i64 X) {
  if (!is_fundamental_discriminant(disc)) throw std::invalid_argument("quadratic_elements_naive: not a fundamental discriminant");
  FieldElementList out;
  out.disc = disc;
  for (i64 a = 1; a <= X; ++a)
    for (i64 c = -X; c <= X; ++c)
      for (i64 b = -2 * X; b <= 2 * X; ++b) {
        const i64 D = b * b - 4 * a * c;
        if (D == 0 || D % disc != 0 || D / disc <= 0 || !is_square(D / disc)) continue;
        if (std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) != 1) continue;
        if (std::abs(b) * X > X * X + a * c) continue;
        QuadElem e{a, b, c, isqrt(D / disc)};
        fill_mahler(e, disc);
        out.elems.push_back(e);
      }
  std::sort(out.elems.begin(), out.elems.end(), elem_less);
  return out;
}

i64 prim_forms_count(i64 B, i64 k, i64 kappa) {
  if (B < 1 || k < 1 || kappa < 1) return 0;
  const i64 k2 = kappa * kappa, k3 = k2 * kappa, k6 = k3 * k3;
  const i64 amax = B / (k2 * k2 * k);
  const i64 cmax = B / (k2 * k);
  if (amax < 1) return 0;
  const Sieve& sv = shared_sieve(std::max<i64>(amax, 2));
  const i64 den = B * k * k3;
  i64 total = 0;
  std::vector<i64> divs, sqf;
  for (i64 a = 1; a <= amax; ++a) {
    sv.divisors(a, divs);
    sqf.clear();
    for (i64 d : divs)
      if (sv.mu(d) != 0) sqf.push_back(d);
    for (i64 c = -cmax; c <= cmax; ++c) {
      const i64 num = B * B + a * c * k6 * k * k;
      if (num < 0) continue;
      const i64 L = num / den;
      const i64 g = std::gcd(a, std::abs(c));
      if (g == 1) {
        total += 2 * L + 1;
        continue;
      }
      for (i64 d : sqf)
        if (g % d == 0) total += sv.mu(d) * (2 * (L / d) + 1);
    }
  }
  return total;
}

i64 unordered_pairs_leq(const std::vector<i64>& hist, i64 X) {
  if (X < 1) return 0;
  if (static_cast<i64>(hist.size()) <= X) throw std::invalid_argument("unordered_pairs_leq: histogram too short");
  std::vector<i64> F(static_cast<std::size_t>(X) + 1, 0);
  for (i64 h = 1; h <= X; ++h) F[h] = F[h - 1] + hist[h];
  i64 s = 0;
  for (i64 h = 1; h <= X; ++h)
    if (hist[h]) s += hist[h] * F[X / h];
  return (s + F[isqrt(X)]) / 2;
}

std::vector<i64> twisted_line_histogram(i64 kappa, i64 X, bool allow_q_zero) {
  std::vector<i64> hist(static_cast<std::size_t>(std::max<i64>(X, 0)) + 1, 0);
  const i64 k2 = kappa * kappa;
  for (i64 p = 1; k2 * p <= X; ++p)
    for (i64 q = -(X / kappa); q <= X / kappa; ++q) {
      if (q == 0 && !allow_q_zero) continue;
      if (std::gcd(p, std::abs(q)) != 1) continue;
      hist[std::max(kappa * std::abs(q), k2 * p)] += 1;
    }
  return hist;
}

std::vector<i64> p1_hist(i64 X) {
  std::vector<i64> hist(static_cast<std::size_t>(std::max<i64>(X, 0)) + 1, 0);
  if (X >= 1) hist[1] = 4;
  for (i64 h = 2; h <= X; ++h) hist[h] = 4 * euler_phi(h);
  return hist;
}

i64 quadratic_points_P1(i64 B, i64 k) {
  const i64 X = B / k;
  if (X < 1) return 0;
  auto hist = p1_hist(X);
  i64 n = 0;
  for (i64 h = 1; h <= X; ++h) n += hist[h];
  return prim_forms_count(B, k, 1) + n - unordered_pairs_leq(hist, X);
}

i64 fiber_quadratic_count(i64 B, i64 kappa) {
  if (B < kappa * kappa * kappa * kappa) return 0;
  return prim_forms_count(B, 1, kappa) - unordered_pairs_leq(twisted_line_histogram(kappa, B, true), B);
}

i64 count_fiber_quadratic_family(i64 B, unsigned workers) {
  if (B < 1) return 0;
  if (B > kQuadraticCeiling) throw std::out_of_range("count_fiber_quadratic_family: B above supported ceiling");
  auto discs = fundamental_discriminants(4.0 * static_cast<double>(B));
  const i64 Xmax = static_cast<i64>(std::floor(2.0 * B / std::sqrt(3.0) * (1 + 1e-12)));
  shared_sieve(Xmax * Xmax);
  return chunked_reduce<i64>(
      static_cast<i64>(discs.size()), workers, 0,
      [&](i64 b, i64 e) {
        i64 s = 0;
        for (i64 i = b; i < e; ++i) s += u2_field_count(discs[static_cast<std::size_t>(i)], B);
        return s;
      },
      [](i64 x, i64 y) { return x + y; });
}

QuadraticBreakdown count_quadratic_breakdown(i64 B, unsigned workers) {
  QuadraticBreakdown r;
  if (B < 1) return r;
  if (B > kQuadraticCeiling) throw std::out_of_range("count_quadratic_breakdown: B above supported ceiling");
  r.lines = 3 * quadratic_points_P1(B);
  for (i64 kappa = 1; kappa * kappa * kappa * kappa <= B; ++kappa) {
    const i64 ny = kappa == 1 ? 2 : 4 * euler_phi(kappa);
    r.fiber_rational += ny * fiber_quadratic_count(B, kappa);
  }
  r.fiber_quadratic = count_fiber_quadratic_family(B, workers);
  return r;
}

CountResult count_quadratic_points_V(i64 B, unsigned workers) {
  CountResult res;
  res.cutoff_B = static_cast<double>(B);
  auto q = count_quadratic_breakdown(B, workers);
  res.total = q.total();
  res.by_locus["lines"] = q.lines;
  res.by_locus["fiber_rational"] = q.fiber_rational;
  res.by_locus["fiber_quadratic"] = q.fiber_quadratic;
  return res;
}

void enumerate_quadratic_points_V(i64 B, const QuadPointVisitor& visit) {
  if (B > 8) throw std::out_of_range("enumerate_quadratic_points_V: B too large");
  const Rational RB(B);
  for (i64 disc : fundamental_discriminants(4.0 * static_cast<double>(B * B))) {
    const FieldDescriptor K = quadratic_field_basic(disc);
    const i64 m = K.m;
    std::vector<FieldElement> list;
    for (i64 q = 1; q * q <= B; ++q)
      for (i64 p = -isqrt(B); p * p <= B; ++p)
        if (std::gcd(std::abs(p), q) == 1) list.emplace_back(Rational(p, q));
    for (const auto& e : quadratic_elements_naive(disc, B).elems) {
      auto qp = make_quadratic_point(e.a, e.b, e.c);
      list.push_back(quadratic_root(qp, 1));
      list.push_back(quadratic_root(qp, -1));
    }
    auto consider = [&](const std::vector<FieldElement>& t) {
      bool irr = false;
      for (const auto& z : t) irr = irr || !z.is_rational();
      if (!irr) return;
      if (compare_height(make_point(t, K), RB) > 0) return;
      visit(t, K);
    };
    const FieldElement one(1), zero(0);
    for (const auto& z1 : list) {
      if (z1.is_zero()) {
        for (const auto& z3 : list) consider({one, zero, zero, z3});
        continue;
      }
      const FieldElement inv2 = inverse(mul(z1, z1, m), m);
      for (const auto& z2 : list) consider({one, z1, z2, mul(z2, inv2, m)});
    }
    for (const auto& z2 : list) consider({zero, one, z2, zero});
  }
}

QuadraticBreakdown quadratic_points_V_oracle(i64 B) {
  QuadraticBreakdown part;
  enumerate_quadratic_points_V(B, [&](const std::vector<FieldElement>& t, const FieldDescriptor&) {
    const bool line = (t[2].is_zero() && t[3].is_zero()) || (t[0].is_zero() && t[3].is_zero()) ||
                      (t[1].is_zero() && t[2].is_zero());
    if (line)
      part.lines += 1;
    else if (t[1].is_rational())
      part.fiber_rational += 1;
    else
      part.fiber_quadratic += 1;
  });
  if (part.lines % 2 || part.fiber_rational % 2 || part.fiber_quadratic % 2)
    throw std::logic_error("quadratic_points_V_oracle: unpaired conjugates");
  return {part.lines / 2, part.fiber_rational / 2, part.fiber_quadratic / 2};
}

i64 same_field_pairs(i64 B, unsigned workers) {
  if (B < 1) return 0;
  if (B > kQuadraticCeiling) throw std::out_of_range("same_field_pairs: B above supported ceiling");
  auto discs = fundamental_discriminants(4.0 * static_cast<double>(B));
  const i64 Xmax = static_cast<i64>(std::floor(2.0 * B / std::sqrt(3.0) * (1 + 1e-12)));
  shared_sieve(Xmax * Xmax);
  return chunked_reduce<i64>(
      static_cast<i64>(discs.size()), workers, 0,
      [&](i64 b, i64 e) {
        i64 s = 0;
        for (i64 i = b; i < e; ++i) s += same_field_count(discs[static_cast<std::size_t>(i)], B);
        return s;
      },
      [](i64 x, i64 y) { return x + y; });
}

}  // namespace cubicpts
