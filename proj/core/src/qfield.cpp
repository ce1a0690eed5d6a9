#include "cubicpts/qfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cubicpts/zeta.hpp"

namespace cubicpts {

namespace mp = boost::multiprecision;

std::string FieldDescriptor::name() const {
  if (is_rational()) return "Q";
  return "Q(sqrt(" + std::to_string(m) + "))";
}

FieldDescriptor rational_field() { return FieldDescriptor{}; }

i64 discriminant(i64 m) {
  if (m == 0 || m == 1) throw std::invalid_argument("discriminant: m must not be 0 or 1");
  if (!is_squarefree(m)) throw std::invalid_argument("discriminant: m must be squarefree");
  i64 r = ((m % 4) + 4) % 4;
  return r == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  i64 r = ((d % 4) + 4) % 4;
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  i64 q = d / 4;
  i64 rq = ((q % 4) + 4) % 4;
  return (rq == 2 || rq == 3) && is_squarefree(q);
}

i64 squarefree_kernel_of_disc(i64 disc) {
  if (!is_fundamental_discriminant(disc))
    throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(disc));
  return (((disc % 4) + 4) % 4 == 1) ? disc : disc / 4;
}

FieldDescriptor quadratic_field_basic(i64 disc) {
  if (disc == 1) return rational_field();
  FieldDescriptor f;
  f.kind = FieldKind::quadratic;
  f.m = squarefree_kernel_of_disc(disc);
  f.disc = disc;
  if (disc > 0) {
    f.r = 2;
    f.s = 0;
  } else {
    f.r = 0;
    f.s = 1;
  }
  f.omega = disc == -4 ? 4 : (disc == -3 ? 6 : 2);
  f.class_number = 0;
  f.regulator = disc < 0 ? 1.0 : 0.0;
  return f;
}

int jacobi_symbol(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd positive");
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int kronecker_symbol(i64 disc, i64 n) {
  if (disc == 0) throw std::invalid_argument("kronecker: disc must be nonzero");
  if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
  int t = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (disc % 2 == 0) return 0;
    i64 r = ((disc % 8) + 8) % 8;
    if (r == 3 || r == 5) t = -t;
  }
  if (n == 1) return t;
  return t * jacobi_symbol(disc, n);
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return {x.a + y.a, x.b + y.b}; }
FieldElement sub(const FieldElement& x, const FieldElement& y) { return {x.a - y.a, x.b - y.b}; }

FieldElement mul(const FieldElement& x, const FieldElement& y, i64 m) {
  return {x.a * y.a + Rational(m) * x.b * y.b, x.a * y.b + x.b * y.a};
}

FieldElement conj(const FieldElement& x) { return {x.a, -x.b}; }

Rational norm(const FieldElement& x, i64 m) { return x.a * x.a - Rational(m) * x.b * x.b; }
Rational trace(const FieldElement& x) { return 2 * x.a; }

FieldElement inverse(const FieldElement& x, i64 m) {
  Rational n = norm(x, m);
  if (n == 0) throw std::domain_error("inverse of zero");
  return {x.a / n, -x.b / n};
}

bool is_integral(const FieldElement& x, i64 m) {
  if (m == 1) return mp::denominator(x.a) == 1;
  if (((m % 4) + 4) % 4 == 1) {
    Rational a2 = 2 * x.a, b2 = 2 * x.b;
    if (mp::denominator(a2) != 1 || mp::denominator(b2) != 1) return false;
    BigInt d = mp::numerator(a2) - mp::numerator(b2);
    return d % 2 == 0;
  }
  return mp::denominator(x.a) == 1 && mp::denominator(x.b) == 1;
}

long double embed(const FieldElement& x, i64 m, int which) {
  long double a = x.a.convert_to<long double>();
  long double b = x.b.convert_to<long double>();
  if (m < 0) return std::hypot(a, b * std::sqrt(static_cast<long double>(-m)));
  long double r = std::sqrt(static_cast<long double>(m));
  return which == 0 ? a + b * r : a - b * r;
}

long double abs_at_place(const FieldElement& x, i64 m, int which) {
  return std::fabs(embed(x, m, which));
}

int sign_quadratic(const Rational& p, const Rational& q, i64 m) {
  int sp = p.sign(), sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  Rational lhs = p * p, rhs = q * q * m;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

namespace {

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / mp::gcd(a, b) * b; }

// Coordinates of an integral a + b sqrt(m) in the basis {1, w} of O_K.
std::pair<BigInt, BigInt> to_basis(const BigInt& a, const BigInt& b, i64 m) {
  if (((m % 4) + 4) % 4 == 1) return {a - b, 2 * b};
  return {a, b};
}

std::pair<BigInt, BigInt> times_w(const BigInt& u, const BigInt& v, i64 m) {
  if (((m % 4) + 4) % 4 == 1) return {v * ((m - 1) / 4), u + v};
  return {v * m, u};
}

}  // namespace

Rational ideal_gcd_norm(const std::vector<FieldElement>& xs, const FieldDescriptor& field) {
  if (xs.empty()) throw std::invalid_argument("ideal_gcd_norm: empty list");
  bool any = false;
  BigInt L = 1;
  for (const auto& x : xs) {
    if (!x.is_zero()) any = true;
    L = lcm_big(L, mp::denominator(x.a));
    L = lcm_big(L, mp::denominator(x.b));
  }
  if (!any) throw std::invalid_argument("ideal_gcd_norm: all-zero input");
  if (field.is_rational()) {
    BigInt g = 0;
    for (const auto& x : xs) {
      if (!x.is_rational()) throw std::invalid_argument("ideal_gcd_norm: irrational entry over Q");
      BigInt v = mp::numerator(Rational(x.a * L));
      g = mp::gcd(g, mp::abs(v));
    }
    return Rational(g) / Rational(L);
  }
  std::vector<std::pair<BigInt, BigInt>> vecs;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    BigInt a = mp::numerator(Rational(x.a * L)), b = mp::numerator(Rational(x.b * L));
    auto uv = to_basis(a, b, field.m);
    vecs.push_back(uv);
    vecs.push_back(times_w(uv.first, uv.second, field.m));
  }
  BigInt g = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      BigInt det = vecs[i].first * vecs[j].second - vecs[i].second * vecs[j].first;
      g = mp::gcd(g, mp::abs(det));
    }
  return Rational(g) / Rational(L * L);
}

IdealData make_ideal(const std::vector<FieldElement>& xs, const FieldDescriptor& field) {
  return {xs, ideal_gcd_norm(xs, field)};
}

namespace {

BigInt floor_div_big(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

std::pair<BigInt, BigInt> fundamental_unit_xy(i64 disc) {
  if (disc <= 0 || !is_fundamental_discriminant(disc))
    throw std::invalid_argument("fundamental unit needs a positive fundamental discriminant");
  const BigInt D = disc;
  const BigInt s = isqrt(disc);
  const BigInt b0 = disc % 2;
  const BigInt nw = (b0 * b0 - D) / 4;
  BigInt P = b0, Q = 2;
  BigInt p_prev = 0, p = 1, q_prev = 1, q = 0;
  for (int iter = 0; iter < 1000000; ++iter) {
    BigInt a = Q > 0 ? floor_div_big(P + s, Q) : floor_div_big(P + s + 1, Q);
    BigInt pn = a * p + p_prev, qn = a * q + q_prev;
    p_prev = p;
    p = pn;
    q_prev = q;
    q = qn;
    BigInt nrm = p * p - p * q * b0 + q * q * nw;
    if (nrm == 1 || nrm == -1) {
      BigInt x = 2 * p - q * b0, y = q;
      if (x * x - D * y * y != 4 * nrm) throw std::logic_error("fundamental unit check failed");
      return {x, y};
    }
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  throw std::runtime_error("continued fraction did not terminate");
}

long double log_bigint(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log of nonpositive");
  std::size_t bits = mp::msb(v) + 1;
  if (bits <= 60) return std::log(v.convert_to<long double>());
  std::size_t shift = bits - 60;
  BigInt top = v >> shift;
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::numbers::ln2_v<long double>;
}

FieldDescriptor field_invariants(i64 disc) {
  if (disc == 1) return rational_field();
  FieldDescriptor f = quadratic_field_basic(disc);
  SeriesValue L1 = dirichlet_L(1.0, disc);
  long double sq = std::sqrt(std::fabs(static_cast<long double>(disc)));
  long double hR;
  if (disc < 0) {
    hR = f.omega * sq * L1.value / (2.0L * std::numbers::pi_v<long double>);
    f.regulator = 1.0;
  } else {
    auto [x, y] = fundamental_unit_xy(disc);
    // log((x + y sqrt(D))/2) = log(x) + log((1 + sqrt(1 - 4 N / x^2))/2), N = +-1
    long double lx = log_bigint(x);
    long double nrm = ((x * x - BigInt(disc) * y * y) / 4).convert_to<long double>();
    long double corr = 0.0L;
    if (lx < 40.0L) {
      long double xd = x.convert_to<long double>();
      corr = std::log((1.0L + std::sqrt(1.0L - 4.0L * nrm / (xd * xd))) / 2.0L);
    }
    f.regulator = static_cast<double>(lx + corr);
    Rational ua = Rational(x) / 2;
    Rational ub = (disc % 2 != 0) ? Rational(y) / 2 : Rational(y);
    f.fundamental_unit = FieldElement{ua, ub};
    hR = sq * L1.value / 2.0L;
  }
  long double h = hR / f.regulator;
  long double hr = std::round(h);
  if (hr < 1 || std::fabs(h - hr) > 1e-6L)
    throw std::runtime_error("class number did not round to an integer for disc " + std::to_string(disc));
  f.class_number = static_cast<i64>(hr);
  return f;
}

std::vector<i64> fundamental_discriminants(double Y) {
  std::vector<i64> out;
  i64 y = static_cast<i64>(std::floor(Y));
  for (i64 n = 2; n <= y; ++n) {
    if (is_fundamental_discriminant(-n)) out.push_back(-n);
    if (is_fundamental_discriminant(n)) out.push_back(n);
  }
  return out;
}

std::pair<FieldElement, FieldElement> unit_reduce(const std::pair<FieldElement, FieldElement>& pair,
                                                  const FieldDescriptor& field) {
  if (pair.first.is_zero() && pair.second.is_zero())
    throw std::invalid_argument("unit_reduce: zero pair");
  if (!field.is_real_quadratic()) return pair;
  if (!field.fundamental_unit) throw std::invalid_argument("unit_reduce: field invariants missing");
  const i64 m = field.m;
  long double M1 = std::max(abs_at_place(pair.first, m, 0), abs_at_place(pair.second, m, 0));
  long double M2 = std::max(abs_at_place(pair.first, m, 1), abs_at_place(pair.second, m, 1));
  long double ell = std::log(M1 / M2);
  long double twoR = 2.0L * field.regulator;
  long double kk = -std::floor(ell / twoR);
  // Guard against rounding right at the interval ends.
  long double after = ell + kk * twoR;
  if (after >= twoR * (1 - 1e-15L)) kk -= 1;
  if (after < 0) kk += 1;
  i64 k = static_cast<i64>(kk);
  FieldElement e = *field.fundamental_unit;
  if (k < 0) {
    e = inverse(e, m);
    k = -k;
  }
  FieldElement scale{1};
  for (i64 i = 0; i < k; ++i) scale = mul(scale, e, m);
  return {mul(pair.first, scale, m), mul(pair.second, scale, m)};
}

}  // namespace cubicpts
