// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fockbasis {

/// Global worker-thread bound (the CLI --threads flag lands here).
/// 1 means fully sequential execution.
inline int& worker_threads() {
  static int count = 1;
  return count;
}

/// Run f(i) for i in [0, count).  Work is split into contiguous chunks, one
/// per worker; every index is visited exactly once, so writers that own
/// their slot need no synchronization.  Results must not depend on the
/// execution order.
template <typename F>
void parallel_for(std::size_t count, F&& f) {
  const int workers = std::max(1, worker_threads());
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  const std::size_t per = (count + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * per;
    const std::size_t end = std::min(count, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&f, begin, end] {
      for (std::size_t i = begin; i < end; ++i) f(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace fockbasis
