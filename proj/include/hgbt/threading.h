// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*!
 * \file threading.h
 * \brief a small persistent thread pool with a blocking parallel-for
 */
#ifndef HGBT_THREADING_H_
#define HGBT_THREADING_H_

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hgbt {

class ThreadPool {
 public:
  /*! \param n_threads total threads including the caller; 0 picks hardware concurrency */
  explicit ThreadPool(std::size_t n_threads = 0);
  ~ThreadPool();
  ThreadPool(ThreadPool const&) = delete;
  ThreadPool& operator=(ThreadPool const&) = delete;

  std::size_t NumThreads() const { return helpers_.size() + 1; }

  /*!
   * \brief run fn(i) for every i in [0, n); blocks until all calls return.
   *  The first exception thrown by any task is rethrown on the caller.
   *  Not reentrant: tasks must not call ParallelFor on the same pool.
   */
  void ParallelFor(std::size_t n, std::function<void(std::size_t)> const& fn);

  /*! \brief split [0, n) into contiguous blocks of at least `grain` and run fn(begin, end) */
  void ParallelForBlocked(std::size_t n, std::size_t grain,
                          std::function<void(std::size_t, std::size_t)> const& fn);

 private:
  void HelperLoop();
  void Drain(std::function<void(std::size_t)> const& fn, std::size_t n);

  std::vector<std::thread> helpers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::function<void(std::size_t)> const* job_{nullptr};
  std::size_t job_size_{0};
  std::atomic<std::size_t> next_{0};
  std::size_t active_{0};
  std::size_t generation_{0};
  bool stop_{false};
  std::exception_ptr error_;
};

std::size_t DefaultThreads();

}  // namespace hgbt

#endif  // HGBT_THREADING_H_
