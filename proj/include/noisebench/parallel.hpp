// Copyright 2026 The noisebench authors
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

#ifndef NOISEBENCH_PARALLEL_HPP_
#define NOISEBENCH_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noisebench {

// Process-wide worker budget. The CLI sets it once from --threads or
// NOISEBENCH_THREADS; 0 means "hardware concurrency". Results never depend
// on the value: parallel loops write disjoint index slots and reductions run
// index-ordered afterwards.
inline std::atomic<int>& thread_budget_storage() {
  static std::atomic<int> budget{0};
  return budget;
}

inline void set_thread_budget(int n) { thread_budget_storage().store(n); }

inline int thread_budget() {
  int n = thread_budget_storage().load();
  if (n > 0) return n;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

/// Runs fn(i) for i in [0, n) on up to thread_budget() workers. Nested calls
/// from inside a worker run inline, so composed parallel loops never
/// oversubscribe. The first exception thrown by any worker is rethrown on
/// the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), n);
  if (workers <= 1 || detail::inside_parallel_region()) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      detail::inside_parallel_region() = true;
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);  // stop handing out work
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace noisebench

#endif  // NOISEBENCH_PARALLEL_HPP_
