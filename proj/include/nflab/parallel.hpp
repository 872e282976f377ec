#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nflab {

/// Worker count: an explicit positive request wins, then NF_LAB_JOBS, then 1.
int resolve_jobs(int requested = 0);

/// Runs fn(chunk, begin, end) over `chunks` contiguous slices of [0, n).
/// Chunk boundaries depend only on n and chunks, never on timing, so callers
/// that merge per-chunk results in chunk order get deterministic output.
inline void parallel_chunks(std::size_t n, int chunks,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
  chunks = std::max(1, chunks);
  const std::size_t per = (n + static_cast<std::size_t>(chunks) - 1) / static_cast<std::size_t>(chunks);
  if (chunks == 1 || n < 2) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; ++c) {
      const std::size_t begin = std::min(n, per * static_cast<std::size_t>(c));
      const std::size_t end = std::min(n, begin + per);
      workers.emplace_back([&fn, &errors, c, begin, end] {
        try {
          fn(c, begin, end);
        } catch (...) {
          errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace nflab
