#include "cubicpts/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace cubicpts {

i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

i64 icbrt_floor(i64 n) {
  if (n < 0) throw std::domain_error("icbrt of negative");
  i64 r = static_cast<i64>(std::cbrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 gcd64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 0) n = -n;
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

int mobius(i64 n) {
  if (n <= 0) throw std::domain_error("mobius needs n >= 1");
  int s = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

i64 euler_phi(i64 n) {
  if (n <= 0) throw std::domain_error("phi needs n >= 1");
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

Sieve::Sieve(i64 n) : n_(n < 1 ? 1 : n) {
  auto sz = static_cast<std::size_t>(n_ + 1);
  spf_.assign(sz, 0);
  mu_.assign(sz, 0);
  phi_.assign(sz, 0);
  mu_[1] = 1;
  phi_[1] = 1;
  for (i64 i = 2; i <= n_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::int32_t>(i);
      primes_.push_back(i);
      mu_[i] = -1;
      phi_[i] = static_cast<std::int32_t>(i - 1);
    }
    for (i64 p : primes_) {
      if (p > spf_[i] || i * p > n_) break;
      i64 ip = i * p;
      spf_[ip] = static_cast<std::int32_t>(p);
      if (p == spf_[i]) {
        mu_[ip] = 0;
        phi_[ip] = static_cast<std::int32_t>(phi_[i] * p);
      } else {
        mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
        phi_[ip] = static_cast<std::int32_t>(phi_[i] * (p - 1));
      }
    }
  }
}

std::vector<std::pair<i64, int>> Sieve::factor(i64 k) const {
  std::vector<std::pair<i64, int>> out;
  if (k > n_) return factorize(k);
  while (k > 1) {
    i64 p = spf_[k];
    int e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

void Sieve::divisors(i64 k, std::vector<i64>& out) const {
  out.clear();
  out.push_back(1);
  for (auto [p, e] : factor(k)) {
    std::size_t base = out.size();
    i64 pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
    }
  }
}

}  // namespace cubicpts
