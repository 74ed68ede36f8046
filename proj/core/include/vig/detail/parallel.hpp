#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace vig::detail {

// Runs fn(begin, end) over contiguous shards of [0, count).  With
// parallelism <= 1 the call is inlined on the current thread; results must
// not depend on the shard boundaries.  The first exception thrown by any
// shard is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned parallelism, Fn&& fn) {
  if (count == 0) return;
  unsigned workers = std::max(1u, parallelism);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = static_cast<std::size_t>(w) * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, &errors, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace vig::detail
