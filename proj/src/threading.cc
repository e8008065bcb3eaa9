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

#include "hgbt/threading.h"

namespace hgbt {

std::size_t DefaultThreads() {
  auto n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

ThreadPool::ThreadPool(std::size_t n_threads) {
  if (n_threads == 0) n_threads = DefaultThreads();
  helpers_.reserve(n_threads - 1);
  for (std::size_t i = 1; i < n_threads; ++i) {
    helpers_.emplace_back([this] { HelperLoop(); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lk(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : helpers_) t.join();
}

void ThreadPool::Drain(std::function<void(std::size_t)> const& fn, std::size_t n) {
  while (true) {
    std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
    if (i >= n) break;
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lk(mutex_);
      if (!error_) error_ = std::current_exception();
      // stop handing out further work
      next_.store(n, std::memory_order_relaxed);
    }
  }
}

void ThreadPool::HelperLoop() {
  std::size_t seen = 0;
  while (true) {
    std::function<void(std::size_t)> const* job = nullptr;
    std::size_t n = 0;
    {
      std::unique_lock<std::mutex> lk(mutex_);
      wake_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      // woke after the job already completed
      if (job_ == nullptr) continue;
      job = job_;
      n = job_size_;
      ++active_;
    }
    Drain(*job, n);
    {
      std::lock_guard<std::mutex> lk(mutex_);
      --active_;
    }
    done_.notify_all();
  }
}

void ThreadPool::ParallelFor(std::size_t n, std::function<void(std::size_t)> const& fn) {
  if (n == 0) return;
  if (helpers_.empty() || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard<std::mutex> lk(mutex_);
    job_ = &fn;
    job_size_ = n;
    next_.store(0, std::memory_order_relaxed);
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  Drain(fn, n);
  std::exception_ptr err;
  {
    std::unique_lock<std::mutex> lk(mutex_);
    done_.wait(lk, [&] { return active_ == 0; });
    job_ = nullptr;
    err = error_;
    error_ = nullptr;
  }
  if (err) std::rethrow_exception(err);
}

void ThreadPool::ParallelForBlocked(std::size_t n, std::size_t grain,
                                    std::function<void(std::size_t, std::size_t)> const& fn) {
  if (n == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  std::size_t n_blocks = std::min((n + grain - 1) / grain, NumThreads() * 4);
  std::size_t block = (n + n_blocks - 1) / n_blocks;
  ParallelFor(n_blocks, [&](std::size_t b) {
    std::size_t begin = b * block;
    std::size_t end = std::min(n, begin + block);
    if (begin < end) fn(begin, end);
  });
}

}  // namespace hgbt
