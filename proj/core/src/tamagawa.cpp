#include "cubicpts/tamagawa.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cubicpts {

namespace {

using Fn = std::function<double(double)>;

struct Quad {
  double value = 0.0;
  double error = 0.0;
};

Quad finite(const Fn& f, double a, double b) {
  Quad q;
  if (b <= a) return q;
  q.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13, &q.error);
  return q;
}

Quad to_inf(const Fn& f, double a) {
  Quad q;
  boost::math::quadrature::exp_sinh<double> es;
  q.value = es.integrate([&](double t) { return f(a + t); }, 0.0, std::numeric_limits<double>::infinity(), 1e-13,
                         &q.error);
  return q;
}

// Integral over the real line split at the given ordered breakpoints.
Quad whole_line(const Fn& f, const std::vector<double>& br) {
  Quad q;
  auto add = [&](Quad p) {
    q.value += p.value;
    q.error += p.error;
  };
  add(to_inf([&](double t) { return f(-t); }, -br.front()));
  for (std::size_t i = 0; i + 1 < br.size(); ++i) add(finite(f, br[i], br[i + 1]));
  add(to_inf(f, br.back()));
  return q;
}

void check_pair(i64 y0, i64 y1) {
  if (y0 == 0 && y1 == 0) throw std::invalid_argument("density: zero pair");
  if (gcd64(y0, y1) != 1) throw std::invalid_argument("density: pair not primitive");
}

}  // namespace

LocalDensity tau_inf_P1() {
  Fn f = [](double t) { return std::pow(std::max(std::fabs(t), 1.0), -2.0); };
  Quad q = whole_line(f, {-1.0, 1.0});
  return {"real", q.value, q.error};
}

LocalDensity tau_inf_V_fiber(i64 y0, i64 y1) {
  check_pair(y0, y1);
  const double a0 = std::fabs(static_cast<double>(y0)), a1 = std::fabs(static_cast<double>(y1));
  Fn f = [=](double t) {
    double m = std::max({a0 * std::fabs(t), a1 * std::fabs(t), a1 * a1, a0 * a0});
    return 1.0 / (m * m);
  };
  const double k = std::max(a0, a1);
  Quad q = whole_line(f, {-k, k});
  return {"real", q.value, q.error};
}

LocalDensity tau_p_P1(i64 p, int k) {
  if (p < 2 || factorize(p).size() != 1 || factorize(p)[0].second != 1)
    throw std::invalid_argument("tau_p_P1: p must be prime");
  if (k < 1 || k > 12) throw std::invalid_argument("tau_p_P1: k out of range");
  long double v = 1.0L;
  long double pj = 1.0L;
  for (int j = 1; j <= k; ++j) {
    pj *= static_cast<long double>(p);
    long double units;
    if (pj <= 1e6L) {
      i64 n = static_cast<i64>(pj), c = 0;
      for (i64 a = 0; a < n; ++a) c += (a % p != 0);
      units = static_cast<long double>(c);
    } else {
      units = pj - pj / static_cast<long double>(p);
    }
    v += units / (pj * pj);
  }
  double tail = std::pow(static_cast<double>(p), -(k + 1));
  return {"p=" + std::to_string(p), static_cast<double>(v), tail};
}

LocalDensity tau_inf_sym2_fiber(i64 y0, i64 y1, int target) {
  check_pair(y0, y1);
  if (target != 9 && target != 6) throw std::invalid_argument("tau_inf_sym2_fiber: target must be 9 or 6");
  const double kap = static_cast<double>(std::max(std::llabs(y0), std::llabs(y1)));
  const double c = target == 9 ? kap : 1.0;
  auto g = [=](double t) {
    double m = kap * std::max(std::fabs(t), c);
    return 1.0 / (m * m * m);
  };
  // Real roots: dt1 dt2 = (tau1 - tau2) dtau1 dtau2 over tau2 < tau1.
  Fn inner = [&](double t1) {
    std::vector<double> br;
    for (double b : {-c, c})
      if (b < t1) br.push_back(b);
    Fn h = [&](double t2) { return (t1 - t2) * g(t2); };
    Quad q;
    double lo = br.empty() ? t1 : br.front();
    Quad tail = to_inf([&](double s) { return h(-s); }, -lo);
    q.value += tail.value;
    q.error += tail.error;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      Quad p = finite(h, br[i], br[i + 1]);
      q.value += p.value;
      q.error += p.error;
    }
    if (!br.empty()) {
      Quad p = finite(h, br.back(), t1);
      q.value += p.value;
      q.error += p.error;
    }
    return g(t1) * q.value;
  };
  Quad real = whole_line(inner, {-c, c});
  // Complex pair u +- iv: dt1 dt2 = 4 v du dv; radial form 8 int r^2 g(r)^2 dr.
  Fn radial = [&](double r) { return 8.0 * r * r * g(r) * g(r); };
  Quad cplx = finite(radial, 0.0, c);
  Quad ctail = to_inf(radial, c);
  double value = real.value + cplx.value + ctail.value;
  double error = real.error + cplx.error + ctail.error;
  return {"real", value, error};
}

}  // namespace cubicpts
