#include "cubicpts/heights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubicpts {

ProjectivePoint make_point(std::vector<FieldElement> coords, const FieldDescriptor& field) {
  if (coords.empty()) throw std::invalid_argument("point needs coordinates");
  bool nz = false;
  for (const auto& c : coords) {
    if (!c.is_zero()) nz = true;
    if (field.is_rational() && !c.is_rational()) throw std::invalid_argument("irrational coordinate over Q");
  }
  if (!nz) throw std::invalid_argument("all-zero coordinates");
  return {std::move(coords), field};
}

ProjectivePoint make_point_Q(const std::vector<i64>& coords) {
  std::vector<FieldElement> xs;
  for (i64 v : coords) xs.emplace_back(v);
  return make_point(std::move(xs), rational_field());
}

std::vector<i64> primitive_normal_form(std::vector<i64> v) {
  i64 g = 0;
  for (i64 x : v) g = gcd64(g, x);
  if (g == 0) throw std::invalid_argument("all-zero coordinates");
  i64 sign = 1;
  for (i64 x : v)
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  for (i64& x : v) x = x / g * sign;
  return v;
}

i64 height_Q(const std::vector<i64>& v) {
  auto w = primitive_normal_form(v);
  i64 h = 0;
  for (i64 x : w) h = std::max(h, x < 0 ? -x : x);
  return h;
}

namespace {

Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// index of the coordinate with the largest |sigma_which(x)|, exact, m > 0.
std::size_t argmax_real_place(const std::vector<FieldElement>& xs, i64 m, int which) {
  std::size_t best = 0;
  auto sq = [&](const FieldElement& x) {
    Rational b = which == 0 ? x.b : Rational(-x.b);
    return std::pair<Rational, Rational>{x.a * x.a + Rational(m) * b * b, 2 * x.a * b};
  };
  for (std::size_t i = 1; i < xs.size(); ++i) {
    auto u = sq(xs[i]);
    auto v = sq(xs[best]);
    if (sign_quadratic(u.first - v.first, u.second - v.second, m) > 0) best = i;
  }
  return best;
}

// |sigma_which(x)| as p + q sqrt(m) with exact rationals.
std::pair<Rational, Rational> abs_real(const FieldElement& x, i64 m, int which) {
  Rational b = which == 0 ? x.b : Rational(-x.b);
  int sg = sign_quadratic(x.a, b, m);
  if (sg < 0) return {-x.a, -b};
  return {x.a, b};
}

}  // namespace

HeightValue height(const ProjectivePoint& p) {
  Rational N = ideal_gcd_norm(p.coords, p.field);
  const auto& f = p.field;
  if (f.is_rational()) {
    Rational mx = 0;
    for (const auto& x : p.coords) mx = std::max(mx, abs_rat(x.a));
    Rational h = mx / N;
    return {h, h.convert_to<double>()};
  }
  if (f.is_imaginary()) {
    Rational mx = 0;
    for (const auto& x : p.coords) mx = std::max(mx, norm(x, f.m));
    Rational h = mx / N;
    return {h, h.convert_to<double>()};
  }
  long double prod = 1.0L;
  for (int w = 0; w < 2; ++w) {
    long double best = 0.0L;
    for (const auto& x : p.coords) best = std::max(best, abs_at_place(x, f.m, w));
    prod *= best;
  }
  return {std::nullopt, static_cast<double>(prod / N.convert_to<long double>())};
}

int compare_height(const ProjectivePoint& p, const Rational& B) {
  HeightValue hv = height(p);
  if (hv.exact) return (*hv.exact > B) - (*hv.exact < B);
  const i64 m = p.field.m;
  Rational N = ideal_gcd_norm(p.coords, p.field);
  auto i1 = argmax_real_place(p.coords, m, 0);
  auto i2 = argmax_real_place(p.coords, m, 1);
  auto u = abs_real(p.coords[i1], m, 0);
  auto v = abs_real(p.coords[i2], m, 1);
  // (u1 + u2 r)(v1 + v2 r), r = sqrt(m)
  Rational P = u.first * v.first + Rational(m) * u.second * v.second;
  Rational Qc = u.first * v.second + u.second * v.first;
  return sign_quadratic(P - B * N, Qc, m);
}

QuadraticPoint make_quadratic_point(i64 a, i64 b, i64 c) {
  if (a == 0) throw std::invalid_argument("quadratic point: leading coefficient zero");
  if (gcd64(gcd64(a, b), c) != 1) throw std::invalid_argument("quadratic point: polynomial not primitive");
  i64 D = b * b - 4 * a * c;
  if (is_square(D)) throw std::invalid_argument("quadratic point: reducible polynomial");
  if (a < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {a, b, c, 0, false};
}

i64 poly_discriminant(const QuadraticPoint& q) { return q.b * q.b - 4 * q.a * q.c; }

i64 field_discriminant(const QuadraticPoint& q) {
  i64 D = poly_discriminant(q);
  i64 s = D < 0 ? -1 : 1, n = D < 0 ? -D : D;
  i64 core = 1;
  for (auto [p, e] : factorize(n))
    if (e % 2) core *= p;
  return discriminant(s * core);
}

FieldElement quadratic_root(const QuadraticPoint& q, int sign) {
  i64 D = poly_discriminant(q);
  i64 m = squarefree_kernel_of_disc(field_discriminant(q));
  i64 f = isqrt(D / m);
  if (f * f * m != D) throw std::logic_error("quadratic_root: discriminant factorisation");
  return {Rational(-q.b, 2 * q.a), Rational(sign * f, 2 * q.a)};
}

double mahler_measure(i64 a, i64 b, i64 c) {
  if (a < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  double M = static_cast<double>(std::max(a, c < 0 ? -c : c));
  if (a == 0) return static_cast<double>(std::max(b < 0 ? -b : b, c < 0 ? -c : c));
  i64 D = b * b - 4 * a * c;
  if (D >= 0) M = std::max(M, (std::fabs(static_cast<double>(b)) + std::sqrt(static_cast<double>(D))) / 2.0);
  return M;
}

double quadratic_point_height(const QuadraticPoint& q) {
  if (is_square(poly_discriminant(q))) throw std::invalid_argument("reducible minimal polynomial");
  return mahler_measure(q.a, q.b, q.c);
}

TwistedHeight twisted_fiber_height(i64 y0, i64 y1, const FiberCoord& alpha) {
  if (y0 == 0 || y1 == 0) throw std::invalid_argument("twisted height: fiber must avoid coordinate lines");
  if (gcd64(y0, y1) != 1) throw std::invalid_argument("twisted height: (y0, y1) not primitive");
  const double kappa = static_cast<double>(std::max(std::llabs(y0), std::llabs(y1)));
  TwistedHeight out;
  if (const auto* r = std::get_if<RationalFiberCoord>(&alpha)) {
    if (r->y2 == 0 || r->y3 == 0) throw std::invalid_argument("twisted height: zero fiber coordinate");
    std::vector<i64> t{y0 * r->y3, y1 * r->y3, y1 * y1 * r->y2, y0 * y0 * r->y2};
    out.direct = static_cast<double>(height_Q(t));
    i64 g = gcd64(r->y2, r->y3);
    double a2 = static_cast<double>(std::llabs(r->y2 / g)), a3 = static_cast<double>(std::llabs(r->y3 / g));
    // alpha = a3/a2, N(J(alpha,1))^{-1} = a2
    double prod = std::max(kappa * a3 / a2, kappa * kappa);
    out.factored = a2 * prod;
    out.factored_inverse = prod / a2;
    return out;
  }
  const auto& q = std::get<QuadraticPoint>(alpha);
  FieldDescriptor K = quadratic_field_basic(field_discriminant(q));
  FieldElement th = quadratic_root(q, 1);
  FieldElement Y0{Rational(y0)}, Y1{Rational(y1)};
  std::vector<FieldElement> coords{mul(Y0, th, K.m), mul(Y1, th, K.m), FieldElement{Rational(y1 * y1)},
                                   FieldElement{Rational(y0 * y0)}};
  out.direct = height(make_point(coords, K)).value;
  Rational NJ = ideal_gcd_norm({th, FieldElement{1}}, K);
  double prod = 1.0;
  if (K.is_imaginary()) {
    double absth = std::sqrt(norm(th, K.m).convert_to<double>());
    prod = std::pow(std::max(kappa * absth, kappa * kappa), 2);
  } else {
    for (int w = 0; w < 2; ++w)
      prod *= std::max(kappa * static_cast<double>(abs_at_place(th, K.m, w)), kappa * kappa);
  }
  out.factored = prod / NJ.convert_to<double>();
  out.factored_inverse = prod * NJ.convert_to<double>();
  return out;
}

double sym2_height(const ProjectivePoint& x1, const ProjectivePoint& x2) {
  if (x1.field.disc != x2.field.disc) throw std::invalid_argument("sym2_height: mismatched fields");
  double h = height(x1).value * height(x2).value;
  return x1.field.degree() == 2 ? std::sqrt(h) : h;
}

}  // namespace cubicpts
