#ifndef REVSPAM_PARALLEL_H_
#define REVSPAM_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace revspam {

// Calls fn(i) for i in [0, n) on up to `threads` workers using contiguous
// blocks. Results must be written to per-index slots so the outcome does not
// depend on scheduling. The first exception (by block order) is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, int threads, Fn &&fn) {
  std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(n, (w + 1) * block); ++i) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread &t : pool) t.join();
  for (std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace revspam

#endif  // REVSPAM_PARALLEL_H_
