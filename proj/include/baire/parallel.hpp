#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace baire {

// Thread-count policy. Only elementwise maps are parallelized; every
// floating-point reduction in the library runs in fixed index order on one
// thread, so results are bit-identical for any thread count.

int hardware_threads();
void set_thread_count(int n);  // 0 restores the machine default
int thread_count();

// Runs fn(begin, end) over contiguous chunks of [begin, end). Each index is
// visited exactly once; chunk boundaries never affect results because callers
// only perform independent writes per index.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn,
                  std::size_t min_per_thread = 2048) {
  const std::size_t count = end > begin ? end - begin : 0;
  int threads = thread_count();
  if (threads > 1 && count / static_cast<std::size_t>(threads) < min_per_thread)
    threads = static_cast<int>(count / min_per_thread);
  if (threads <= 1 || count == 0) {
    if (count > 0) fn(begin, end);
    return;
  }

  const std::size_t chunk = count / static_cast<std::size_t>(threads);
  const std::size_t extra = count % static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads) - 1);

  std::size_t lo = begin;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (int t = 0; t < threads; ++t) {
    std::size_t hi = lo + chunk + (static_cast<std::size_t>(t) < extra ? 1 : 0);
    ranges.emplace_back(lo, hi);
    lo = hi;
  }

  std::vector<std::exception_ptr> errors(ranges.size());
  for (std::size_t t = 1; t < ranges.size(); ++t) {
    pool.emplace_back([&, t] {
      try {
        fn(ranges[t].first, ranges[t].second);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  try {
    fn(ranges[0].first, ranges[0].second);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace baire
