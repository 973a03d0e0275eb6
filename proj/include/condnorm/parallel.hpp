#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace condnorm {

// Splits [0, n) into `threads` contiguous shards and runs fn(shard, begin, end)
// on each, one thread per shard. Rethrows the first exception by shard index.
template <class Fn>
void forEachShard(std::size_t n, unsigned threads, Fn fn) {
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (shards == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> pool;
  pool.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    const std::size_t begin = n * s / shards;
    const std::size_t end = n * (s + 1) / shards;
    pool.emplace_back([&, s, begin, end] {
      try {
        fn(s, begin, end);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace condnorm
