// Copyright 2026 The pmlhist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PMLHIST_SRC_PARALLEL_H_
#define PMLHIST_SRC_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace pmlhist::internal {

inline int ResolveThreadCount(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(i) for every i in [0, count), spread over `threads` workers in
// chunks. fn must only write state owned by index i.
template <typename Fn>
void ParallelFor(int64_t count, int threads, const Fn& fn) {
  constexpr int64_t kChunk = 64;
  const int64_t workers =
      std::min<int64_t>(ResolveThreadCount(threads),
                        (count + kChunk - 1) / kChunk);
  if (workers <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  auto work = [&] {
    for (int64_t start = next.fetch_add(kChunk); start < count;
         start = next.fetch_add(kChunk)) {
      const int64_t end = std::min(count, start + kChunk);
      for (int64_t i = start; i < end; ++i) fn(i);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (int64_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
}

}  // namespace pmlhist::internal

#endif  // PMLHIST_SRC_PARALLEL_H_
