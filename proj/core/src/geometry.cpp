#include "cubicpts/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubicpts {

const char* locus_name(Locus l) {
  switch (l) {
    case Locus::singular_line: return "singular_line";
    case Locus::base_line: return "base_line";
    case Locus::line_t0_t3: return "line_t0_t3";
    case Locus::line_t1_t2: return "line_t1_t2";
    case Locus::U_open: return "U_open";
    case Locus::V_other: return "V_other";
  }
  return "?";
}

std::vector<Locus> v_loci() {
  return {Locus::U_open, Locus::base_line, Locus::line_t0_t3, Locus::line_t1_t2, Locus::V_other};
}

bool on_surface(const Pt4& t) {
  return static_cast<i128>(t[0]) * t[0] * t[2] == static_cast<i128>(t[1]) * t[1] * t[3];
}

bool on_surface(const ProjectivePoint& p) {
  if (p.coords.size() != 4) throw std::invalid_argument("on_surface: need a point of P^3");
  const i64 m = p.field.m;
  const auto& t = p.coords;
  return mul(mul(t[0], t[0], m), t[2], m) == mul(mul(t[1], t[1], m), t[3], m);
}

Locus classify(const Pt4& t) {
  if (!on_surface(t)) throw std::invalid_argument("classify: point not on W");
  if (t[0] == 0 && t[1] == 0) return Locus::singular_line;
  if (t[2] == 0 && t[3] == 0) return Locus::base_line;
  if (t[0] == 0 && t[3] == 0) return Locus::line_t0_t3;
  if (t[1] == 0 && t[2] == 0) return Locus::line_t1_t2;
  if (t[0] && t[1] && t[2] && t[3]) return Locus::U_open;
  return Locus::V_other;
}

SurfacePoint make_surface_point(const Pt4& t) {
  auto v = primitive_normal_form({t[0], t[1], t[2], t[3]});
  Pt4 n{v[0], v[1], v[2], v[3]};
  return {n, classify(n)};
}

Pt4 rho(const Pt3& x, const Pt2& y) {
  if (x[0] * y[1] != x[1] * y[0]) throw std::invalid_argument("rho: incidence x0 y1 = x1 y0 violated");
  if ((x[0] == 0 && x[1] == 0 && x[2] == 0) || (y[0] == 0 && y[1] == 0))
    throw std::invalid_argument("rho: degenerate input");
  Pt4 t{x[2] * y[0], x[2] * y[1], x[1] * y[1], x[0] * y[0]};
  if (t[0] == 0 && t[1] == 0 && t[2] == 0 && t[3] == 0) throw std::invalid_argument("rho: image is zero");
  auto v = primitive_normal_form({t[0], t[1], t[2], t[3]});
  return {v[0], v[1], v[2], v[3]};
}

namespace {
Pt3 norm3(const Pt3& x) {
  auto v = primitive_normal_form({x[0], x[1], x[2]});
  return {v[0], v[1], v[2]};
}
Pt2 norm2(i64 a, i64 b) {
  auto v = primitive_normal_form({a, b});
  return {v[0], v[1]};
}
}  // namespace

DesingularPoint rho_inverse(const Pt4& t) {
  if (!on_surface(t)) throw std::invalid_argument("rho_inverse: point not on W");
  if (t[0] == 0 && t[1] == 0) throw std::invalid_argument("rho_inverse: point on the singular line");
  Pt2 y = norm2(t[0], t[1]);
  if (t[0] != 0 && t[1] != 0) return {norm3({t[3] * t[1], t[2] * t[0], t[1] * t[0]}), y};
  if (t[1] == 0) return {norm3({t[3], 0, t[0]}), y};
  return {norm3({0, t[2], t[1]}), y};
}

Pt2 fibration(const Pt4& t) {
  if (t[0] == 0 && t[1] == 0) throw std::invalid_argument("fibration: point on the singular line");
  return norm2(t[0], t[1]);
}

SurfacePoint parametrize(const TorsorTuple& y) {
  if (!y.y0 || !y.y1 || !y.y2 || !y.y3) throw std::invalid_argument("parametrize: zero torsor coordinate");
  if (gcd64(y.y0, y.y1) != 1 || gcd64(y.y2, y.y3) != 1)
    throw std::invalid_argument("parametrize: coprimality violated");
  Pt4 t{y.y0 * y.y3, y.y1 * y.y3, y.y1 * y.y1 * y.y2, y.y0 * y.y0 * y.y2};
  return make_surface_point(t);
}

i64 torsor_height(const TorsorTuple& y) {
  i64 k = y.kappa();
  return std::max(k * std::llabs(y.y3), k * k * std::llabs(y.y2));
}

std::vector<TorsorTuple> fibers_over(const Pt4& t) {
  if (classify(t) != Locus::U_open) throw std::invalid_argument("fibers_over: point not in U");
  auto v = primitive_normal_form({t[0], t[1], t[2], t[3]});
  const i64 g = gcd64(v[0], v[1]);
  std::vector<TorsorTuple> out;
  for (i64 e1 : {1, -1})
    for (i64 e2 : {1, -1}) {
      TorsorTuple y;
      y.y0 = e1 * v[0] / g;
      y.y1 = e1 * v[1] / g;
      y.y3 = e1 * e2 * g;
      i64 d = y.y0 * y.y0;
      if (v[3] % d != 0) throw std::logic_error("fibers_over: non-integral y2");
      y.y2 = e2 * v[3] / d;
      out.push_back(y);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubicpts
