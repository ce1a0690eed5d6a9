#include "cubicpts/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cubicpts/parallel.hpp"

namespace cubicpts {

namespace {
constexpr double kPi = std::numbers::pi;
}

SeriesValue riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("riemann_zeta needs s > 1");
  const int N = 12;
  const int K = 10;
  long double sum = 0.0L;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  long double Nl = N;
  sum += std::pow(Nl, 1.0L - s) / (s - 1.0L);
  sum += 0.5L * std::pow(Nl, -static_cast<long double>(s));
  long double rising = s;  // s (s+1) ... (s+2k-2)
  long double last = 0.0L;
  for (int k = 1; k <= K + 1; ++k) {
    long double b2k = boost::math::bernoulli_b2n<long double>(k);
    long double fact = std::tgamma(static_cast<long double>(2 * k + 1));
    long double term = b2k / fact * rising * std::pow(Nl, -static_cast<long double>(s) - 2 * k + 1);
    if (k <= K) sum += term;
    else last = term;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
  }
  return {static_cast<double>(sum), static_cast<double>(std::fabs(last)), N - 1 + K};
}

double upper_gamma(double a, double x) {
  if (!(x > 0)) throw std::domain_error("upper_gamma needs x > 0");
  if (a == 0.5) return std::sqrt(kPi) * boost::math::erfc(std::sqrt(x));
  if (a == 1.0) return std::exp(-x);
  if (a == 0.0) return boost::math::expint(1, x);
  if (a > 0) return boost::math::tgamma(a, x);
  return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

SeriesValue dirichlet_L(double s, i64 disc, double tol) {
  if (disc == 1) return riemann_zeta(s);
  if (!is_fundamental_discriminant(disc))
    throw std::invalid_argument("dirichlet_L: non-fundamental discriminant " + std::to_string(disc));
  if (s < 0.5) throw std::domain_error("dirichlet_L: s below supported range");
  const double q = static_cast<double>(disc < 0 ? -disc : disc);
  const double a = disc < 0 ? 1.0 : 0.0;
  const double A = (s + a) / 2.0;
  const double Bp = (1.0 - s + a) / 2.0;
  const double qp = q / kPi;
  const double wA = std::pow(qp, A);
  const double wB = std::pow(qp, Bp);
  const double xstop = -std::log(tol) + 8.0;
  long double sum = 0.0L;
  double last = 0.0;
  long n = 1;
  for (;; ++n) {
    double x = kPi * static_cast<double>(n) * static_cast<double>(n) / q;
    int chi = kronecker_symbol(disc, n);
    if (chi != 0) {
      double t1 = wA * std::pow(static_cast<double>(n), -s) * upper_gamma(A, x);
      double t2 = wB * std::pow(static_cast<double>(n), s - 1.0) * upper_gamma(Bp, x);
      sum += chi * (static_cast<long double>(t1) + t2);
      last = std::fabs(t1) + std::fabs(t2);
    }
    if (x > xstop) break;
  }
  double norm = wA * std::tgamma(A);
  return {static_cast<double>(sum / norm), 2.0 * last / norm, n};
}

SeriesValue dedekind_zeta(double s, i64 disc) {
  SeriesValue z = riemann_zeta(s);
  if (disc == 1) return z;
  SeriesValue l = dirichlet_L(s, disc);
  return {z.value * l.value, z.tail_bound * std::fabs(l.value) + l.tail_bound * std::fabs(z.value),
          z.terms_used + l.terms_used};
}

std::vector<i64> p1_height_histogram(const FieldDescriptor& field, i64 hmax) {
  std::vector<i64> n(static_cast<std::size_t>(hmax + 1), 0);
  if (hmax < 1) return n;
  Sieve sv(hmax);
  if (field.is_rational()) {
    for (i64 h = 1; h <= hmax; ++h) n[h] = 4 * sv.phi(h);
    return n;
  }
  if (!field.is_imaginary()) throw std::invalid_argument("P^1 histogram: real quadratic fields unsupported");
  FieldDescriptor f = field;
  if (f.class_number == 0) f = field_invariants(field.disc);
  if (f.class_number != 1) throw std::invalid_argument("P^1 histogram: class number must be 1");
  const i64 w = f.omega;
  std::vector<int> chi(static_cast<std::size_t>(hmax + 1), 0);
  for (i64 d = 1; d <= hmax; ++d) chi[d] = kronecker_symbol(f.disc, d);
  // r(j) = w * sum_{d|j} chi(d): elements of norm j.
  std::vector<i64> r(static_cast<std::size_t>(hmax + 1), 0);
  for (i64 d = 1; d <= hmax; ++d)
    if (chi[d])
      for (i64 j = d; j <= hmax; j += d) r[j] += w * chi[d];
  std::vector<i64> A(static_cast<std::size_t>(hmax + 1), 1);
  for (i64 j = 1; j <= hmax; ++j) A[j] = A[j - 1] + r[j];
  std::vector<i64> g(static_cast<std::size_t>(hmax + 1), 0);
  for (i64 j = 1; j <= hmax; ++j) g[j] = A[j] * A[j] - A[j - 1] * A[j - 1];
  // M_K = mu * (mu chi), the coefficients of 1/zeta_K.
  std::vector<i64> M(static_cast<std::size_t>(hmax + 1), 0);
  for (i64 d = 1; d <= hmax; ++d) {
    if (!sv.mu(d)) continue;
    for (i64 e = 1; d * e <= hmax; ++e) M[d * e] += sv.mu(d) * sv.mu(e) * chi[e];
  }
  for (i64 k = 1; k <= hmax; ++k) {
    if (!M[k]) continue;
    for (i64 j = 1; k * j <= hmax; ++j) n[k * j] += M[k] * g[j];
  }
  for (i64 h = 1; h <= hmax; ++h) {
    if (n[h] % w != 0) throw std::logic_error("P^1 histogram: unit count mismatch");
    n[h] /= w;
  }
  return n;
}

SeriesValue height_zeta_P1(const FieldDescriptor& field, double s, double cutoff) {
  const bool infinite = !(cutoff > 0) || std::isinf(cutoff);
  if (infinite && !(s > 2.0)) throw std::domain_error("height_zeta_P1: s <= 2 diverges");
  i64 T = infinite ? (field.is_rational() ? 1000000 : 200000) : static_cast<i64>(std::floor(cutoff));
  if (T < 1) return {0.0, 0.0, 0};
  auto n = p1_height_histogram(field, T);
  long double sum = 0.0L;
  i64 count = 0;
  for (i64 h = T; h >= 1; --h) sum += n[h] * std::pow(static_cast<long double>(h), -static_cast<long double>(s));
  for (i64 h = 1; h <= T; ++h) count += n[h];
  if (!infinite) return {static_cast<double>(sum), 0.0, T};
  double c = schanuel_constant(field);
  double Td = static_cast<double>(T);
  // Abel summation with N(x) ~ c x^2 beyond the cutoff.
  double tail = -static_cast<double>(count) * std::pow(Td, -s) + s * c * std::pow(Td, 2.0 - s) / (s - 2.0);
  double bound;
  if (field.is_rational())
    bound = 2.0 * s * std::pow(Td, 1.0 - s) * (std::log(Td) + 1.0) / (s - 1.0);
  else
    bound = 2.0 * s * std::pow(Td, 1.5 - s) / (s - 1.5);
  return {static_cast<double>(sum) + tail, bound, T};
}

double schanuel_constant(const FieldDescriptor& field) {
  FieldDescriptor f = field;
  if (!f.is_rational() && f.class_number == 0) f = field_invariants(f.disc);
  const int r = f.r, s = f.s;
  double zK2 = dedekind_zeta(2.0, f.disc).value;
  double num = std::pow(2.0, r + s - 1) * std::pow(2.0, 2 * r) * std::pow(2.0 * kPi, 2 * s) *
               static_cast<double>(f.class_number) * f.regulator;
  double den = std::fabs(static_cast<double>(f.disc)) * f.omega * zK2;
  return num / den;
}

std::vector<NamedConstant> predicted_constants() {
  std::vector<NamedConstant> out;
  const double z2 = riemann_zeta(2).value, z3 = riemann_zeta(3).value, z5 = riemann_zeta(5).value;
  const double z6 = riemann_zeta(6).value, z8 = riemann_zeta(8).value, z9 = riemann_zeta(9).value;
  const FieldDescriptor Q = rational_field();
  const FieldDescriptor Qi = field_invariants(-4);

  const double cQ = schanuel_constant(Q);
  out.push_back({"c_P1_Q", cQ, 0.0, {{"zeta(2)", z2}}});
  const double Z3 = 4 * z2 / z3;
  out.push_back({"Z_Q_P1_3", Z3, 0.0, {{"zeta(2)", z2}, {"zeta(3)", z3}}});
  out.push_back({"c_V_Q", cQ * (Z3 + 1), 0.0, {{"c_P1_Q", cQ}, {"Z_Q_P1_3", Z3}}});
  out.push_back({"c_U_Q", cQ * (Z3 - 2), 0.0, {{"c_P1_Q", cQ}, {"Z_Q_P1_3", Z3}}});

  const double cQi = schanuel_constant(Qi);
  const double L2 = dirichlet_L(2, -4).value;
  out.push_back({"c_P1_Qi", cQi, 0.0, {{"zeta(2)", z2}, {"L(2,-4)", L2}}});
  SeriesValue ZQi = height_zeta_P1(Qi, 3.0, 0.0);
  out.push_back({"Z_Qi_P1_3", ZQi.value, ZQi.tail_bound, {{"cutoff", static_cast<double>(ZQi.terms_used)}}});
  out.push_back({"c_V_Qi", cQi * (ZQi.value + 1), cQi * ZQi.tail_bound, {{"c_P1_Qi", cQi}, {"Z_Qi_P1_3", ZQi.value}}});
  out.push_back({"c_U_Qi", cQi * (ZQi.value - 2), cQi * ZQi.tail_bound, {{"c_P1_Qi", cQi}, {"Z_Qi_P1_3", ZQi.value}}});
  const double zK32 = dedekind_zeta(1.5, -4).value;
  out.push_back({"chat_V_Qi", cQi / zK32, 0.0, {{"c_P1_Qi", cQi}, {"zeta_K(3/2)", zK32}}});

  const double cS = 4.0 / z3;
  out.push_back({"c_Sym2P1_Q", cS, 0.0, {{"zeta(3)", z3}}});
  const double Z9 = 4 * z8 / z9;
  out.push_back({"Z_Q_P1_9", Z9, 0.0, {{"zeta(8)", z8}, {"zeta(9)", z9}}});
  out.push_back({"c_Sym2V", cS * (Z9 + 1), 0.0, {{"c_Sym2P1_Q", cS}, {"Z_Q_P1_9", Z9}}});
  const double Z6 = 4 * z5 / z6;
  out.push_back({"Z_Q_P1_6", Z6, 0.0, {{"zeta(5)", z5}, {"zeta(6)", z6}}});
  out.push_back({"c_Sym2P1xP1", 2 * cS * Z6, 0.0, {{"c_Sym2P1_Q", cS}, {"Z_Q_P1_6", Z6}}});
  return out;
}

const NamedConstant& find_constant(const std::vector<NamedConstant>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::out_of_range("unknown constant " + name);
}

namespace {

struct LPair {
  double L1, L2;
};

std::vector<LPair> l_values(const std::vector<i64>& discs, unsigned workers) {
  using Vec = std::vector<LPair>;
  return chunked_reduce<Vec>(
      static_cast<i64>(discs.size()), workers, Vec{},
      [&](i64 b, i64 e) {
        Vec v;
        for (i64 i = b; i < e; ++i)
          v.push_back({dirichlet_L(1.0, discs[i], 1e-10).value, dirichlet_L(2.0, discs[i], 1e-10).value});
        return v;
      },
      [](Vec acc, Vec part) {
        acc.insert(acc.end(), part.begin(), part.end());
        return acc;
      });
}

}  // namespace

LSumRow discriminant_L_sums(double Y, unsigned workers) {
  auto fit = fit_L_sums({Y}, workers);
  return fit.rows.front();
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

LSumFit fit_L_sums(const std::vector<double>& Ys, unsigned workers) {
  LSumFit fit;
  if (Ys.empty()) return fit;
  std::vector<double> ys = Ys;
  std::sort(ys.begin(), ys.end());
  auto discs = fundamental_discriminants(ys.back());
  auto vals = l_values(discs, workers);
  std::size_t idx = 0;
  long double S1 = 0, S2 = 0;
  for (double Y : ys) {
    while (idx < discs.size() && std::fabs(static_cast<double>(discs[idx])) <= Y) {
      double ad = std::fabs(static_cast<double>(discs[idx]));
      double ratio = vals[idx].L1 / vals[idx].L2;
      S1 += ratio / std::sqrt(ad);
      S2 += ratio * ratio / ad;
      ++idx;
    }
    fit.rows.push_back({Y, static_cast<double>(S1), static_cast<double>(S2), static_cast<long>(idx)});
  }
  if (fit.rows.size() >= 2) {
    std::vector<double> lx, l1, s2;
    for (const auto& r : fit.rows) {
      lx.push_back(std::log(r.Y));
      l1.push_back(std::log(r.S1));
      s2.push_back(r.S2);
    }
    fit.s1_exponent = linear_fit(lx, l1).first;
    auto [b, a] = linear_fit(lx, s2);
    fit.s2_slope = b;
    fit.s2_intercept = a;
  }
  return fit;
}

}  // namespace cubicpts
