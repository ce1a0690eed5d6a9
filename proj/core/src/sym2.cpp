#include "cubicpts/sym2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "cubicpts/heights.hpp"
#include "cubicpts/quadratic.hpp"

namespace cubicpts {

namespace {

constexpr i64 kSym2VCeiling = 1000;
constexpr i64 kSym2P1Ceiling = 2000;
constexpr i64 kSym2P1xP1Ceiling = 500;

bool on_singular_line(const std::vector<FieldElement>& x) { return x[0].is_zero() && x[1].is_zero(); }

i64 fibers_with_kappa(i64 kappa) { return kappa == 1 ? 2 : 4 * euler_phi(kappa); }

i64 cumulative(const std::vector<i64>& hist, i64 X) {
  i64 s = 0;
  for (i64 h = 1; h <= X && h < static_cast<i64>(hist.size()); ++h) s += hist[h];
  return s;
}

}  // namespace

Sym2Point make_sym2_type1(const Pt4& x1, const Pt4& x2) {
  Sym2Point p;
  p.kind = Sym2Point::Kind::type1;
  auto a = make_surface_point(x1).t;
  auto b = make_surface_point(x2).t;
  if (a[0] == 0 && a[1] == 0) throw std::invalid_argument("make_sym2_type1: point on the singular line");
  if (b[0] == 0 && b[1] == 0) throw std::invalid_argument("make_sym2_type1: point on the singular line");
  if (b < a) std::swap(a, b);
  p.x1 = a;
  p.x2 = b;
  p.field = rational_field();
  return p;
}

Sym2Point make_sym2_type2(std::vector<FieldElement> x, const FieldDescriptor& field) {
  if (x.size() != 4) throw std::invalid_argument("make_sym2_type2: need four coordinates");
  if (!field.is_imaginary() && !field.is_real_quadratic()) throw std::invalid_argument("make_sym2_type2: need a quadratic field");
  if (!on_surface(make_point(x, field))) throw std::invalid_argument("make_sym2_type2: point not on W");
  if (on_singular_line(x)) throw std::invalid_argument("make_sym2_type2: point on the singular line");
  bool irr = false;
  for (const auto& z : x) irr = irr || !z.is_rational();
  if (!irr) throw std::invalid_argument("make_sym2_type2: rational point");
  Sym2Point p;
  p.kind = Sym2Point::Kind::type2;
  p.xq = std::move(x);
  p.field = field;
  return p;
}

FiberClass classify_Z(const Sym2Point& p) {
  if (p.kind == Sym2Point::Kind::type1) {
    if (fibration(p.x1) == fibration(p.x2)) return FiberClass::in_Z;
    auto base = [](const Pt4& t) { return t[2] == 0 && t[3] == 0; };
    return base(p.x1) && base(p.x2) ? FiberClass::in_Z : FiberClass::off_Z;
  }
  const auto& x = p.xq;
  if (on_singular_line(x)) throw std::invalid_argument("classify_Z: point on the singular line");
  if (x[2].is_zero() && x[3].is_zero()) return FiberClass::in_Z;
  if (x[0].is_zero()) return FiberClass::in_Z;
  return mul(x[1], inverse(x[0], p.field.m), p.field.m).is_rational() ? FiberClass::in_Z : FiberClass::off_Z;
}

double sym2_point_height(const Sym2Point& p) {
  if (p.kind == Sym2Point::Kind::type1)
    return static_cast<double>(height_Q({p.x1[0], p.x1[1], p.x1[2], p.x1[3]})) *
           static_cast<double>(height_Q({p.x2[0], p.x2[1], p.x2[2], p.x2[3]}));
  return height(make_point(p.xq, p.field)).value;
}

std::vector<i64> v_height_histogram(i64 X) {
  std::vector<i64> hist(static_cast<std::size_t>(std::max<i64>(X, 0)) + 1, 0);
  if (X < 1) return hist;
  for (i64 kappa = 1; kappa * kappa <= X; ++kappa) {
    auto f = twisted_line_histogram(kappa, X, false);
    const i64 ny = fibers_with_kappa(kappa);
    for (i64 h = 1; h <= X; ++h) hist[h] += ny * f[h];
  }
  auto n = p1_hist(X);
  for (i64 h = 1; h <= X; ++h) hist[h] += 3 * n[h];
  hist[1] -= 4;
  return hist;
}

Sym2VCount count_sym2_V(i64 B, unsigned workers) {
  Sym2VCount r;
  if (B < 1) return r;
  if (B > kSym2VCeiling) throw std::out_of_range("count_sym2_V: B above supported ceiling");
  auto nV = v_height_histogram(B);
  const i64 type1 = unordered_pairs_leq(nV, B);
  i64 inZ = 0;
  for (i64 kappa = 1; kappa * kappa <= B; ++kappa) {
    auto f = twisted_line_histogram(kappa, B, false);
    f[kappa] += 1;
    inZ += fibers_with_kappa(kappa) * unordered_pairs_leq(f, B);
  }
  auto n = p1_hist(B);
  auto axis = n;
  axis[1] -= 1;
  inZ += 2 * unordered_pairs_leq(axis, B);
  inZ += unordered_pairs_leq(n, B) - cumulative(n, isqrt(B));
  r.type1_Z = inZ;
  r.type1_offZ = type1 - inZ;
  r.diagonal = cumulative(nV, isqrt(B));
  auto q = count_quadratic_breakdown(B, workers);
  r.type2_Z = q.lines + q.fiber_rational;
  r.type2_offZ = q.fiber_quadratic;
  return r;
}

Sym2VCount sym2_V_oracle(i64 B) {
  Sym2VCount r;
  std::vector<std::pair<Pt4, i64>> pts;
  for (i64 a = 0; a <= B; ++a)
    for (i64 b = -B; b <= B; ++b)
      for (i64 c = -B; c <= B; ++c)
        for (i64 d = -B; d <= B; ++d) {
          Pt4 t{a, b, c, d};
          if (!a && !b) continue;
          if (!on_surface(t)) continue;
          auto v = primitive_normal_form({a, b, c, d});
          if (!std::equal(v.begin(), v.end(), t.begin())) continue;
          pts.push_back({t, height_Q(v)});
        }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (pts[i].second * pts[j].second > B) continue;
      auto s = make_sym2_type1(pts[i].first, pts[j].first);
      (classify_Z(s) == FiberClass::in_Z ? r.type1_Z : r.type1_offZ) += 1;
      if (i == j) r.diagonal += 1;
    }
  i64 z2 = 0, off2 = 0;
  enumerate_quadratic_points_V(B, [&](const std::vector<FieldElement>& x, const FieldDescriptor& K) {
    (classify_Z(make_sym2_type2(x, K)) == FiberClass::in_Z ? z2 : off2) += 1;
  });
  if (z2 % 2 || off2 % 2) throw std::logic_error("sym2_V_oracle: unpaired conjugates");
  r.type2_Z = z2 / 2;
  r.type2_offZ = off2 / 2;
  return r;
}

Sym2P1Count count_sym2_P1(i64 B) {
  Sym2P1Count r;
  if (B < 1) return r;
  if (B > kSym2P1Ceiling) throw std::out_of_range("count_sym2_P1: B above supported ceiling");
  r.type1 = unordered_pairs_leq(p1_hist(B), B);
  r.type2 = quadratic_points_P1(B);
  return r;
}

Sym2P1Count sym2_P1_oracle(i64 B) {
  // Binary quadratic forms up to sign; the height is the Mahler measure,
  // evaluated from numerical roots.
  Sym2P1Count r;
  for (i64 a = -B; a <= B; ++a)
    for (i64 b = -2 * B; b <= 2 * B; ++b)
      for (i64 c = -B; c <= B; ++c) {
        if (!a && !b && !c) continue;
        auto v = primitive_normal_form({a, b, c});
        if (v[0] != a || v[1] != b || v[2] != c) continue;
        double M;
        if (a == 0) {
          M = static_cast<double>(std::max(std::abs(b), std::abs(c)));
        } else {
          std::complex<double> D(static_cast<double>(b * b - 4 * a * c), 0.0);
          auto sq = std::sqrt(D);
          auto r1 = (-static_cast<double>(b) + sq) / (2.0 * a);
          auto r2 = (-static_cast<double>(b) - sq) / (2.0 * a);
          M = std::fabs(static_cast<double>(a)) * std::max(1.0, std::abs(r1)) * std::max(1.0, std::abs(r2));
        }
        if (M > static_cast<double>(B) * (1 + 1e-9)) continue;
        const i64 disc = b * b - 4 * a * c;
        const bool split = a == 0 || (disc >= 0 && is_square(disc));
        (split ? r.type1 : r.type2) += 1;
      }
  return r;
}

Sym2P1xP1Count count_sym2_P1xP1(i64 B, unsigned workers) {
  Sym2P1xP1Count r;
  if (B < 1) return r;
  if (B > kSym2P1xP1Ceiling) throw std::out_of_range("count_sym2_P1xP1: B above supported ceiling");
  auto n = p1_hist(B);
  std::vector<i64> n2(static_cast<std::size_t>(B) + 1, 0);
  for (i64 h1 = 1; h1 <= B; ++h1)
    for (i64 h2 = 1; h1 * h2 <= B; ++h2) n2[h1 * h2] += n[h1] * n[h2];
  r.type1 = unordered_pairs_leq(n2, B);
  for (i64 h = 1; h * h <= B; ++h) r.rational_first += n[h] * quadratic_points_P1(B, h * h);
  r.quadratic_first = r.rational_first;
  r.same_field = same_field_pairs(B, workers);
  return r;
}

Sym2P1xP1Count sym2_P1xP1_oracle(i64 B) {
  if (B > 8) throw std::out_of_range("sym2_P1xP1_oracle: B too large");
  Sym2P1xP1Count r;
  std::vector<std::pair<Pt2, i64>> rat;
  for (i64 p = 0; p <= B; ++p)
    for (i64 q = -B; q <= B; ++q) {
      if (!p && !q) continue;
      auto v = primitive_normal_form({p, q});
      if (v[0] != p || v[1] != q) continue;
      rat.push_back({{p, q}, height_Q(v)});
    }
  std::vector<i64> h;
  for (const auto& [pt, hh] : rat)
    for (const auto& [pt2, hh2] : rat) h.push_back(hh * hh2);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i; j < h.size(); ++j)
      if (h[i] * h[j] <= B) r.type1 += 1;
  for (i64 disc : fundamental_discriminants(4.0 * static_cast<double>(B * B))) {
    const FieldDescriptor K = quadratic_field_basic(disc);
    struct KP {
      std::vector<FieldElement> x;
      bool rational;
      double H;
    };
    std::vector<KP> pts;
    for (const auto& [pt, hh] : rat) {
      std::vector<FieldElement> x{FieldElement(pt[0]), FieldElement(pt[1])};
      pts.push_back({x, true, height(make_point(x, K)).value});
    }
    for (const auto& e : quadratic_elements_naive(disc, B).elems) {
      auto qp = make_quadratic_point(e.a, e.b, e.c);
      for (int sg : {1, -1}) {
        std::vector<FieldElement> x{quadratic_root(qp, sg), FieldElement(1)};
        pts.push_back({x, false, height(make_point(x, K)).value});
      }
    }
    i64 rf = 0, qf = 0, sf = 0;
    for (const auto& P : pts)
      for (const auto& Q : pts) {
        if (P.rational && Q.rational) continue;
        if (P.H * Q.H > static_cast<double>(B) * (1 + 1e-9)) continue;
        if (P.rational)
          ++rf;
        else if (Q.rational)
          ++qf;
        else
          ++sf;
      }
    if (rf % 2 || qf % 2 || sf % 2) throw std::logic_error("sym2_P1xP1_oracle: unpaired conjugates");
    r.rational_first += rf / 2;
    r.quadratic_first += qf / 2;
    r.same_field += sf / 2;
  }
  return r;
}

}  // namespace cubicpts
