#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tsallis::detail {

/// Runs fn(i) for i in [0, count) on a small pool of threads. Each index is
/// visited exactly once; fn must not touch state shared with other indices.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t max_workers = 16) {
  if (count == 0) return;
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min(count, max_workers));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace tsallis::detail
