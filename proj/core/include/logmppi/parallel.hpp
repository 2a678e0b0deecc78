// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace logmppi {

// Runs fn(block) for every block in [0, block_count) on up to thread_count
// workers, claiming blocks through a shared counter. The caller guarantees
// that distinct blocks touch disjoint data; which worker runs a block must
// not matter, so results are independent of the thread count.
inline void parallel_for_blocks(int block_count, int thread_count,
                                const std::function<void(int)>& fn) {
  if (block_count <= 0) {
    return;
  }
  const int workers = std::clamp(thread_count, 1, block_count);
  if (workers == 1) {
    for (int b = 0; b < block_count; ++b) {
      fn(b);
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&next, &fn, block_count] {
      for (int b = next.fetch_add(1); b < block_count;
           b = next.fetch_add(1)) {
        fn(b);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

}  // namespace logmppi
