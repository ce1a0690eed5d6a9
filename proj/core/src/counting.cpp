#include "cubicpts/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cubicpts/parallel.hpp"
#include "cubicpts/zeta.hpp"

namespace cubicpts {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void finish(CountResult& r, double c) {
  r.predicted_main = c * r.cutoff_B * r.cutoff_B;
  r.relative_error = r.predicted_main > 0 ? std::fabs(static_cast<double>(r.total) - r.predicted_main) / r.predicted_main : 0.0;
}

void require_supported(const FieldDescriptor& f) {
  if (f.is_rational()) return;
  if (!f.is_imaginary()) throw std::invalid_argument("counting: real quadratic fields are not supported");
  FieldDescriptor g = f.class_number == 0 ? field_invariants(f.disc) : f;
  if (g.class_number != 1) throw std::invalid_argument("counting: class number must be 1");
}

}  // namespace

ImagQuadRing::ImagQuadRing(i64 disc) : disc_(disc) {
  if (disc >= 0 || !is_fundamental_discriminant(disc))
    throw std::invalid_argument("ImagQuadRing: need a negative fundamental discriminant");
  tr_ = (disc % 2 != 0) ? 1 : 0;
  nw_ = tr_ ? (1 - disc) / 4 : -disc / 4;
  omega_ = disc == -4 ? 4 : (disc == -3 ? 6 : 2);
}

i64 ImagQuadRing::norm(const OKElem& x) const { return x.u * x.u + tr_ * x.u * x.v + nw_ * x.v * x.v; }

OKElem ImagQuadRing::mul(const OKElem& x, const OKElem& y) const {
  return {x.u * y.u - nw_ * x.v * y.v, x.u * y.v + x.v * y.u + tr_ * x.v * y.v};
}

OKElem ImagQuadRing::conj(const OKElem& x) const { return {x.u + tr_ * x.v, -x.v}; }

bool ImagQuadRing::divides(const OKElem& d, const OKElem& x, OKElem* q) const {
  i64 n = norm(d);
  if (n == 0) return x.u == 0 && x.v == 0;
  OKElem p = mul(x, conj(d));
  if (p.u % n || p.v % n) return false;
  if (q) *q = {p.u / n, p.v / n};
  return true;
}

i64 ImagQuadRing::ideal_norm(const std::vector<OKElem>& xs) const {
  std::vector<std::pair<i128, i128>> vecs;
  for (const auto& x : xs) {
    if (x.u == 0 && x.v == 0) continue;
    vecs.push_back({x.u, x.v});
    vecs.push_back({-static_cast<i128>(nw_) * x.v, static_cast<i128>(x.u) + tr_ * x.v});
  }
  if (vecs.empty()) throw std::invalid_argument("ideal_norm: zero ideal");
  i128 g = 0;
  for (std::size_t i = 0; i < vecs.size() && g != 1; ++i)
    for (std::size_t j = i + 1; j < vecs.size() && g != 1; ++j)
      g = gcd128(g, vecs[i].first * vecs[j].second - vecs[i].second * vecs[j].first);
  return static_cast<i64>(g);
}

std::vector<OKElem> ImagQuadRing::elements_upto(i64 X) const {
  std::vector<OKElem> out;
  const i64 ad = -disc_;
  i64 vmax = isqrt(4 * X / ad);
  for (i64 v = -vmax; v <= vmax; ++v) {
    i64 rem = 4 * X - v * v * ad;
    if (rem < 0) continue;
    i64 s = isqrt(rem);
    i64 lo = -floor_div(s + tr_ * v, 2);
    i64 hi = floor_div(s - tr_ * v, 2);
    for (i64 u = lo; u <= hi; ++u) {
      if (u == 0 && v == 0) continue;
      OKElem e{u, v};
      if (norm(e) <= X) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [&](const OKElem& a, const OKElem& b) {
    i64 na = norm(a), nb = norm(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return out;
}

std::vector<i64> ImagQuadRing::cumulative_counts(i64 X) const {
  std::vector<i64> A(static_cast<std::size_t>(X + 1), 0);
  A[0] = 1;
  for (const auto& e : elements_upto(X)) A[norm(e)] += 1;
  for (i64 n = 1; n <= X; ++n) A[n] += A[n - 1];
  return A;
}

FieldElement ImagQuadRing::to_field(const OKElem& x) const {
  if (tr_) return {Rational(x.u) + Rational(x.v, 2), Rational(x.v, 2)};
  return {Rational(x.u), Rational(x.v)};
}

i64 count_P1(const FieldDescriptor& field, i64 B) {
  if (B < 1) return 0;
  auto n = p1_height_histogram(field, B);
  i64 s = 0;
  for (i64 h = 1; h <= B; ++h) s += n[h];
  return s;
}

i64 coprime_pairs_box(i64 X, i64 Y, const Sieve& sv) {
  i64 m = std::min(X, Y), s = 0;
  for (i64 d = 1; d <= m; ++d)
    if (sv.mu(d)) s += sv.mu(d) * (X / d) * (Y / d);
  return s;
}

i64 BruteHistogram::count(Locus l, i64 B) const {
  if (B > Bmax) throw std::out_of_range("histogram cutoff exceeded");
  auto it = per_height.find(l);
  if (it == per_height.end()) return 0;
  i64 s = 0;
  for (i64 h = 1; h <= B; ++h) s += it->second[h];
  return s;
}

BruteHistogram brute_force_histogram_Q(i64 Bmax, unsigned workers) {
  if (Bmax < 1) throw std::invalid_argument("brute force needs B >= 1");
  if (Bmax > 400) throw std::invalid_argument("brute force ceiling is 400");
  using Hist = std::map<Locus, std::vector<i64>>;
  auto empty = [&] {
    Hist h;
    for (Locus l : {Locus::singular_line, Locus::base_line, Locus::line_t0_t3, Locus::line_t1_t2, Locus::U_open,
                    Locus::V_other})
      h[l].assign(static_cast<std::size_t>(Bmax + 1), 0);
    return h;
  };
  auto record = [&](Hist& h, i64 t0, i64 t1, i64 t2, i64 t3) {
    if (gcd64(gcd64(t0, t1), gcd64(t2, t3)) != 1) return;
    for (i64 x : {t0, t1, t2, t3})
      if (x != 0) {
        if (x < 0) return;
        break;
      }
    i64 ht = std::max(std::max(std::llabs(t0), std::llabs(t1)), std::max(std::llabs(t2), std::llabs(t3)));
    h[classify({t0, t1, t2, t3})][ht] += 1;
  };
  const i64 B = Bmax;
  auto fold = [](Hist a, Hist b) {
    for (auto& [l, v] : b)
      for (std::size_t i = 0; i < v.size(); ++i) a[l][i] += v[i];
    return a;
  };
  // Rows indexed by t0 in [0, B]; t1 != 0 solves for t3, t1 == 0 loops t2, t3.
  Hist h = chunked_reduce<Hist>(
      B + 1, workers, empty(),
      [&](i64 b, i64 e) {
        Hist loc = empty();
        for (i64 t0 = b; t0 < e; ++t0) {
          for (i64 t1 = -B; t1 <= B; ++t1) {
            if (t1 == 0) {
              for (i64 t2 = -B; t2 <= B; ++t2)
                for (i64 t3 = -B; t3 <= B; ++t3)
                  if (t0 * t0 * t2 == 0 && (t0 || t1 || t2 || t3)) record(loc, t0, t1, t2, t3);
              continue;
            }
            const i64 d = t1 * t1;
            for (i64 t2 = -B; t2 <= B; ++t2) {
              i64 num = t0 * t0 * t2;
              if (num % d) continue;
              i64 t3 = num / d;
              if (t3 < -B || t3 > B) continue;
              record(loc, t0, t1, t2, t3);
            }
          }
        }
        return loc;
      },
      fold, 64);
  BruteHistogram out;
  out.Bmax = Bmax;
  out.per_height = std::move(h);
  return out;
}

namespace {

const std::vector<Locus>& lines_loci() {
  static const std::vector<Locus> l{Locus::base_line, Locus::line_t0_t3, Locus::line_t1_t2};
  return l;
}

std::vector<Locus> filter_loci(LocusFilter f) {
  switch (f) {
    case LocusFilter::V: return {Locus::U_open, Locus::base_line, Locus::line_t0_t3, Locus::line_t1_t2, Locus::V_other};
    case LocusFilter::U: return {Locus::U_open};
    case LocusFilter::lines: return lines_loci();
    case LocusFilter::base_line: return {Locus::base_line};
    case LocusFilter::line_t0_t3: return {Locus::line_t0_t3};
    case LocusFilter::line_t1_t2: return {Locus::line_t1_t2};
    case LocusFilter::singular_line: return {Locus::singular_line};
  }
  return {};
}

std::map<Locus, i64> brute_force_imag(const ImagQuadRing& R, i64 B) {
  std::vector<OKElem> E{{0, 0}};
  for (const auto& e : R.elements_upto(B)) E.push_back(e);
  std::map<Locus, i64> cnt;
  auto rec = [&](const OKElem& t0, const OKElem& t1, const OKElem& t2, const OKElem& t3) {
    if (R.ideal_norm({t0, t1, t2, t3}) != 1) return;
    auto z = [](const OKElem& x) { return x.u == 0 && x.v == 0 ? 0 : 1; };
    Pt4 pattern{z(t0), z(t1), z(t2), z(t3)};
    Locus l;
    if (!pattern[0] && !pattern[1]) l = Locus::singular_line;
    else if (!pattern[2] && !pattern[3]) l = Locus::base_line;
    else if (!pattern[0] && !pattern[3]) l = Locus::line_t0_t3;
    else if (!pattern[1] && !pattern[2]) l = Locus::line_t1_t2;
    else if (pattern[0] && pattern[1] && pattern[2] && pattern[3]) l = Locus::U_open;
    else l = Locus::V_other;
    cnt[l] += 1;
  };
  const OKElem zero{0, 0};
  for (const auto& t0 : E)
    for (const auto& t1 : E) {
      if (t1 == zero) {
        for (const auto& t2 : E)
          for (const auto& t3 : E) {
            if (t0 == zero && t2 == zero && t3 == zero) continue;
            OKElem lhs = R.mul(R.mul(t0, t0), t2);
            if (lhs == zero) rec(t0, t1, t2, t3);
          }
        continue;
      }
      OKElem d = R.mul(t1, t1);
      OKElem t00 = R.mul(t0, t0);
      for (const auto& t2 : E) {
        OKElem num = R.mul(t00, t2), t3;
        if (!R.divides(d, num, &t3)) continue;
        if (R.norm(t3) > B) continue;
        rec(t0, t1, t2, t3);
      }
    }
  for (auto& [l, c] : cnt) {
    if (c % R.omega()) throw std::logic_error("brute force: unit orbit mismatch");
    c /= R.omega();
  }
  return cnt;
}

double constant_for(const FieldDescriptor& f, const std::string& what) {
  if (f.is_rational()) {
    static const auto cs = predicted_constants();
    return find_constant(cs, what + "_Q").value;
  }
  double cP1 = schanuel_constant(f);
  if (what == "c_P1") return cP1;
  double Z = height_zeta_P1(f, 3.0, 0.0).value;
  if (what == "c_V") return cP1 * (Z + 1);
  if (what == "c_U") return cP1 * (Z - 2);
  throw std::invalid_argument("unknown constant kind");
}

}  // namespace

CountResult brute_force_count(const FieldDescriptor& field, i64 B, LocusFilter filter, unsigned workers) {
  auto t0 = std::chrono::steady_clock::now();
  require_supported(field);
  CountResult r;
  r.cutoff_B = static_cast<double>(B);
  auto loci = filter_loci(filter);
  if (field.is_rational()) {
    auto h = brute_force_histogram_Q(B, workers);
    for (Locus l : loci) r.by_locus[locus_name(l)] = h.count(l, B);
  } else {
    if (B > 40) throw std::invalid_argument("brute force ceiling over quadratic fields is 40");
    ImagQuadRing R(field.disc);
    auto cnt = brute_force_imag(R, B);
    for (Locus l : loci) r.by_locus[locus_name(l)] = cnt[l];
  }
  for (auto& [k, v] : r.by_locus) r.total += v;
  r.wall_time = seconds_since(t0);
  return r;
}

namespace {

i64 count_U_Q(i64 B, unsigned workers) {
  if (B < 1) return 0;
  const i64 K = isqrt(B);
  Sieve sv(B);
  return chunked_reduce<i64>(
      K, workers, 0,
      [&](i64 b, i64 e) {
        i64 s = 0;
        for (i64 k = b + 1; k <= e; ++k) {
          i64 P = k == 1 ? 4 : 8 * sv.phi(k);
          s += P * coprime_pairs_box(B / (k * k), B / k, sv);
        }
        return s;
      },
      [](i64 a, i64 b) { return a + b; }, 64);
}

i64 count_U_imag(const FieldDescriptor& f, i64 B, unsigned workers) {
  if (B < 1) return 0;
  ImagQuadRing R(f.disc);
  const i64 K = isqrt(B);
  auto E = R.elements_upto(K);
  // P[k]: ordered coprime pairs of nonzero elements with max norm k.
  std::vector<i64> P(static_cast<std::size_t>(K + 1), 0);
  std::vector<i64> Pparts = chunked_reduce<std::vector<i64>>(
      static_cast<i64>(E.size()), workers, std::vector<i64>(static_cast<std::size_t>(K + 1), 0),
      [&](i64 b, i64 e) {
        std::vector<i64> loc(static_cast<std::size_t>(K + 1), 0);
        for (i64 i = b; i < e; ++i)
          for (const auto& y1 : E) {
            if (R.ideal_norm({E[i], y1}) != 1) continue;
            loc[std::max(R.norm(E[i]), R.norm(y1))] += 1;
          }
        return loc;
      },
      [](std::vector<i64> a, std::vector<i64> b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
      });
  P = Pparts;
  auto A = R.cumulative_counts(B);
  Sieve sv(B);
  std::vector<i64> M(static_cast<std::size_t>(B + 1), 0);
  for (i64 d = 1; d <= B; ++d) {
    if (!sv.mu(d)) continue;
    for (i64 e = 1; d * e <= B; ++e) M[d * e] += sv.mu(d) * sv.mu(e) * kronecker_symbol(f.disc, e);
  }
  i128 total = 0;
  for (i64 k = 1; k <= K; ++k) {
    if (!P[k]) continue;
    i64 X = B / (k * k), Y = B / k;
    i128 c = 0;
    for (i64 n = 1; n <= std::min(X, Y); ++n)
      if (M[n]) c += static_cast<i128>(M[n]) * (A[X / n] - 1) * (A[Y / n] - 1);
    total += c * P[k];
  }
  const i64 w2 = static_cast<i64>(R.omega()) * R.omega();
  if (total % w2) throw std::logic_error("parametrized count: not divisible by omega^2");
  return static_cast<i64>(total / w2);
}

}  // namespace

CountResult parametrized_count_U(const FieldDescriptor& field, i64 B, unsigned workers) {
  auto t0 = std::chrono::steady_clock::now();
  require_supported(field);
  CountResult r;
  r.cutoff_B = static_cast<double>(B);
  r.total = field.is_rational() ? count_U_Q(B, workers) : count_U_imag(field, B, workers);
  r.by_locus[locus_name(Locus::U_open)] = r.total;
  finish(r, constant_for(field, "c_U"));
  r.wall_time = seconds_since(t0);
  return r;
}

CountResult count_V(const FieldDescriptor& field, i64 B, unsigned workers) {
  auto t0 = std::chrono::steady_clock::now();
  CountResult r = parametrized_count_U(field, B, workers);
  i64 n = count_P1(field, B);
  r.by_locus[locus_name(Locus::base_line)] = n;
  r.by_locus[locus_name(Locus::line_t0_t3)] = n - 2;
  r.by_locus[locus_name(Locus::line_t1_t2)] = n - 2;
  r.total = 0;
  for (auto& [k, v] : r.by_locus) r.total += v;
  finish(r, constant_for(field, "c_V"));
  r.wall_time = seconds_since(t0);
  return r;
}

CountResult count_P1_result(const FieldDescriptor& field, i64 B) {
  auto t0 = std::chrono::steady_clock::now();
  require_supported(field);
  CountResult r;
  r.cutoff_B = static_cast<double>(B);
  r.total = count_P1(field, B);
  r.by_locus["P1"] = r.total;
  finish(r, schanuel_constant(field));
  r.wall_time = seconds_since(t0);
  return r;
}

double LatticeBox::kappa() const {
  double k = 1.0;
  for (double v : kappa_per_place) k *= v;
  return k;
}

namespace {

struct LatticeContext {
  FieldDescriptor field;
  std::vector<i64> A;  // cumulative element counts, imaginary fields only
};

double main_term(const LatticeBox& box, const FieldDescriptor& f) {
  const int r = f.r, s = f.s;
  double R = f.is_rational() ? 1.0 : f.regulator;
  double c = std::pow(2.0, r + s - 1) * std::pow(2.0, 2 * r) * std::pow(2.0 * std::numbers::pi, 2 * s) * R /
             (std::fabs(static_cast<double>(f.disc)) * std::pow(box.kappa(), 3) * box.a2_norm * box.a3_norm);
  return c * box.B * box.B;
}

LatticeCount lattice_count_ctx(const LatticeBox& box, const LatticeContext& ctx) {
  const double k = box.kappa();
  LatticeCount out;
  double X2 = box.B / (k * k * box.a2_norm), X3 = box.B / (k * box.a3_norm);
  if (ctx.field.is_rational()) {
    out.count = 2 * static_cast<i64>(std::floor(X2)) * 2 * static_cast<i64>(std::floor(X3));
  } else {
    i64 x2 = static_cast<i64>(std::floor(X2)), x3 = static_cast<i64>(std::floor(X3));
    if (x2 >= static_cast<i64>(ctx.A.size()) || x3 >= static_cast<i64>(ctx.A.size()))
      throw std::logic_error("lattice count: table too small");
    out.count = (ctx.A[x2] - 1) * (ctx.A[x3] - 1);
  }
  out.main_term = main_term(box, ctx.field);
  out.deviation = static_cast<double>(out.count) - out.main_term;
  return out;
}

LatticeContext make_ctx(const FieldDescriptor& field, const LatticeBox& box, double Bmax) {
  require_supported(field);
  LatticeContext ctx{field, {}};
  if (field.is_rational()) return ctx;
  if (ctx.field.class_number == 0) ctx.field = field_invariants(field.disc);
  ImagQuadRing R(field.disc);
  for (i64 a : {box.a2_norm, box.a3_norm}) {
    bool found = false;
    for (const auto& e : R.elements_upto(a))
      if (R.norm(e) == a) found = true;
    if (!found) throw std::invalid_argument("lattice box: no ideal of norm " + std::to_string(a));
  }
  double k = box.kappa();
  i64 X = static_cast<i64>(std::floor(Bmax / std::min(k, k * k))) + 1;
  ctx.A = R.cumulative_counts(X);
  return ctx;
}

}  // namespace

LatticeCount lattice_count_M1(const LatticeBox& box, const FieldDescriptor& field) {
  return lattice_count_ctx(box, make_ctx(field, box, box.B));
}

LatticeSlope lattice_deviation_slope(LatticeBox box, const FieldDescriptor& field, const std::vector<double>& Bs,
                                     int samples) {
  LatticeSlope out;
  double Bmax = *std::max_element(Bs.begin(), Bs.end());
  auto ctx = make_ctx(field, box, Bmax);
  std::vector<double> lx, ly;
  for (double B : Bs) {
    double env = 0.0;
    for (int j = 0; j < samples; ++j) {
      box.B = B * (0.5 + 0.5 * (j + 0.5) / samples);
      env = std::max(env, std::fabs(lattice_count_ctx(box, ctx).deviation));
    }
    out.Bs.push_back(B);
    out.envelope.push_back(env);
    lx.push_back(std::log(B));
    ly.push_back(std::log(std::max(env, 1e-300)));
  }
  out.slope = linear_fit(lx, ly).first;
  box.B = Bmax;
  auto last = lattice_count_ctx(box, ctx);
  out.main_ratio = static_cast<double>(last.count) / last.main_term;
  return out;
}

int ideal_mobius(const ImagQuadRing& R, const OKElem& g) {
  i64 n = R.norm(g);
  if (n <= 0) throw std::invalid_argument("ideal_mobius: zero ideal");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    int chi = kronecker_symbol(R.disc(), p);
    if (chi == -1) {
      if (e == 2) mu = -mu;
      else return 0;
    } else if (chi == 0) {
      if (e == 1) mu = -mu;
      else return 0;
    } else {
      if (e == 1) mu = -mu;
      else if (e == 2) {
        if (!R.divides({p, 0}, g)) return 0;
      } else {
        return 0;
      }
    }
  }
  return mu;
}

MobiusCheck mobius_inversion_check(const FieldDescriptor& field, const LatticeBox& box) {
  require_supported(field);
  const double k = box.kappa();
  MobiusCheck out;
  if (field.is_rational()) {
    i64 X2 = static_cast<i64>(std::floor(box.B / (k * k))), X3 = static_cast<i64>(std::floor(box.B / k));
    for (i64 a = -X2; a <= X2; ++a)
      for (i64 b = -X3; b <= X3; ++b)
        if (a && b && gcd64(a, b) == 1) ++out.direct;
    for (i64 d = 1; d <= std::min(X2, X3); ++d) out.inverted += mobius(d) * (2 * (X2 / d)) * (2 * (X3 / d));
    return out;
  }
  ImagQuadRing R(field.disc);
  i64 X2 = static_cast<i64>(std::floor(box.B / (k * k))), X3 = static_cast<i64>(std::floor(box.B / k));
  auto E2 = R.elements_upto(X2), E3 = R.elements_upto(X3);
  for (const auto& a : E2)
    for (const auto& b : E3)
      if (R.ideal_norm({a, b}) == 1) ++out.direct;
  std::vector<OKElem> units;
  for (const auto& e : R.elements_upto(1)) units.push_back(e);
  std::vector<OKElem> reps;
  for (const auto& g : R.elements_upto(std::min(X2, X3))) {
    OKElem best = g;
    for (const auto& u : units) best = std::min(best, R.mul(u, g));
    if (best == g) reps.push_back(g);
  }
  for (const auto& g : reps) {
    int mu = ideal_mobius(R, g);
    if (!mu) continue;
    i64 c2 = 0, c3 = 0;
    for (const auto& a : E2) c2 += R.divides(g, a);
    for (const auto& b : E3) c3 += R.divides(g, b);
    out.inverted += mu * c2 * c3;
  }
  return out;
}

}  // namespace cubicpts
