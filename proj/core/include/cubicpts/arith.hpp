#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cubicpts {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

i64 isqrt(i64 n);
i64 icbrt_floor(i64 n);
bool is_square(i64 n);
i64 floor_div(i64 a, i64 b);
i64 gcd64(i64 a, i64 b);
i128 gcd128(i128 a, i128 b);
i64 ipow(i64 b, int e);

std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_squarefree(i64 n);
int mobius(i64 n);
i64 euler_phi(i64 n);

// Smallest-prime-factor sieve with mu and phi tables.
class Sieve {
public:
  explicit Sieve(i64 n);

  i64 limit() const { return n_; }
  int mu(i64 k) const { return mu_[static_cast<std::size_t>(k)]; }
  i64 phi(i64 k) const { return phi_[static_cast<std::size_t>(k)]; }
  i64 spf(i64 k) const { return spf_[static_cast<std::size_t>(k)]; }

  std::vector<std::pair<i64, int>> factor(i64 k) const;
  void divisors(i64 k, std::vector<i64>& out) const;
  const std::vector<i64>& primes() const { return primes_; }

private:
  i64 n_;
  std::vector<std::int32_t> spf_;
  std::vector<std::int8_t> mu_;
  std::vector<std::int32_t> phi_;
  std::vector<i64> primes_;
};

}  // namespace cubicpts
