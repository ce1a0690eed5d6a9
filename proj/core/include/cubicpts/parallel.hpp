#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace cubicpts {

// Splits [0, n) into a fixed number of chunks (independent of the worker
// count), evaluates body(begin, end) on each and folds the per-chunk results
// in chunk order, so the output does not depend on scheduling.
template <class T, class Body, class Fold>
T chunked_reduce(std::int64_t n, unsigned workers, T init, Body body, Fold fold,
                 std::int64_t chunks = 256) {
  if (n <= 0) return init;
  chunks = std::max<std::int64_t>(1, std::min(chunks, n));
  std::vector<T> parts(static_cast<std::size_t>(chunks), init);
  auto bounds = [&](std::int64_t c) {
    return std::pair<std::int64_t, std::int64_t>{n * c / chunks, n * (c + 1) / chunks};
  };
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      parts[c] = body(b, e);
    }
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    unsigned w = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));
    for (unsigned t = 0; t < w; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t c; (c = next.fetch_add(1)) < chunks;) {
          auto [b, e] = bounds(c);
          parts[c] = body(b, e);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  T acc = init;
  for (auto& p : parts) acc = fold(std::move(acc), std::move(p));
  return acc;
}

inline unsigned hardware_workers() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

}  // namespace cubicpts
