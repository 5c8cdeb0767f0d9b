// Copyright 2026 The maxleak Authors
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

#ifndef MAXLEAK_PARALLEL_H_
#define MAXLEAK_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace maxleak {

// Number of worker threads: the LEAKAGE_PUT_THREADS environment variable,
// or the hardware concurrency when it is unset or 0.
int worker_count();

// Runs fn(chunk) for chunk in [0, chunks).  Work is split into chunks by the
// caller independently of the thread count, so results that are merged in
// chunk order are identical for serial and parallel runs.  The first
// exception thrown by any chunk is rethrown.
template <typename Fn>
void parallel_chunks(std::int64_t chunks, Fn&& fn) {
  if (chunks <= 0) return;
  const int workers = static_cast<int>(
      std::min<std::int64_t>(worker_count(), chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::once_flag error_once;
  auto run = [&]() {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks || failed.load()) return;
      try {
        fn(c);
      } catch (...) {
        std::call_once(error_once,
                       [&]() { error = std::current_exception(); });
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace maxleak

#endif  // MAXLEAK_PARALLEL_H_
