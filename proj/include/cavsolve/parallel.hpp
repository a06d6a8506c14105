// Copyright 2026 The cavsolve Authors
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

#include <cstddef>
#include <thread>
#include <vector>

namespace cavsolve {

/// Worker count for element loops. Initialised from CAVSOLVE_THREADS
/// (default 1, the deterministic sequential mode).
int thread_count();
void set_thread_count(int n);

/// Splits [0, n) into thread_count() contiguous chunks and calls
/// fn(chunk, begin, end) for each, chunk 0 on the calling thread. Chunk
/// boundaries depend only on n and the thread count, so per-chunk partial
/// results combined in chunk order are reproducible.
template <class Fn>
void for_chunks(std::size_t n, Fn&& fn) {
  const auto chunks = static_cast<std::size_t>(thread_count());
  if (chunks <= 1 || n < 2 * chunks) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  auto bound = [&](std::size_t c) { return n * c / chunks; };
  std::vector<std::jthread> workers;
  workers.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    workers.emplace_back([&fn, c, b = bound(c), e = bound(c + 1)] { fn(c, b, e); });
  }
  fn(std::size_t{0}, bound(0), bound(1));
}

}  // namespace cavsolve
