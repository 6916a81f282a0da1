// Copyright 2026 The lowlying Authors.
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

#ifndef LOWLYING_PARALLEL_HPP_
#define LOWLYING_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace lowlying {

// Worker count for a job of n independent items; 0 requests one worker per
// hardware thread.
inline unsigned resolve_workers(unsigned requested, std::size_t n) {
  unsigned w = requested == 0 ? std::thread::hardware_concurrency() : requested;
  if (w == 0) w = 1;
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(n, 1)));
}

// Calls body(i) for i in [0, n). Items are claimed dynamically, so body must
// write only to slot i of any shared output. If several items throw, the
// exception from the smallest index is rethrown, independent of scheduling.
inline void parallel_for(std::size_t n, unsigned workers,
                         const std::function<void(std::size_t)>& body) {
  workers = resolve_workers(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Pairwise summation in a fixed tree shape, so the result depends only on
// the order of terms.
inline double pairwise_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace lowlying

#endif  // LOWLYING_PARALLEL_HPP_
