// Copyright 2026 The epipelagic Authors.
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

#ifndef EPI_PARALLEL_HPP_
#define EPI_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace epi {

// Raised when a brute-force enumeration would exceed its configured bound.
// Callers report it as "skipped, infeasible" rather than as a failure.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs body(worker, begin, end) over contiguous chunks of [0, n). Each worker
// owns its own partial result; combining is up to the caller, which keeps
// reductions deterministic regardless of the thread count.
inline void parallel_chunks(uint64_t n, unsigned threads,
                            const std::function<void(unsigned, uint64_t, uint64_t)>& body) {
  unsigned t = std::max(1u, std::min<unsigned>(resolve_threads(threads), unsigned(std::max<uint64_t>(n, 1))));
  if (t == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (unsigned w = 0; w < t; ++w) {
    uint64_t b = n * w / t, e = n * (w + 1) / t;
    pool.emplace_back([&, w, b, e] {
      try {
        body(w, b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

inline unsigned chunk_count(uint64_t n, unsigned threads) {
  return std::max(1u, std::min<unsigned>(resolve_threads(threads), unsigned(std::max<uint64_t>(n, 1))));
}

}  // namespace epi

#endif  // EPI_PARALLEL_HPP_
