// Copyright 2026 The fairpar Authors
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

// Fork-join execution of synchronous steps.
//
// A step is a parallel_for over independent indices. Primitives are written
// so that each index writes only cells it owns, which makes every result
// independent of the worker count. CrewAudit checks that property at runtime
// when enabled.

#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <exception>
#include <functional>
#include <latch>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fairpar/error.hpp"

namespace fairpar::pram {

namespace detail {

inline thread_local bool in_worker = false;

class ThreadPool {
 public:
  explicit ThreadPool(std::size_t threads) {
    for (std::size_t t = 0; t < threads; ++t) {
      threads_.emplace_back([this](std::stop_token st) { loop(st); });
    }
  }

  ~ThreadPool() {
    for (auto& t : threads_) t.request_stop();
    cv_.notify_all();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  void submit(std::function<void()> task) {
    {
      std::lock_guard lock(mu_);
      queue_.push_back(std::move(task));
    }
    cv_.notify_one();
  }

 private:
  void loop(std::stop_token st) {
    in_worker = true;
    while (true) {
      std::function<void()> task;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, st, [this] { return !queue_.empty(); });
        if (queue_.empty()) return;
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      task();
    }
  }

  std::mutex mu_;
  std::condition_variable_any cv_;
  std::deque<std::function<void()>> queue_;
  std::vector<std::jthread> threads_;
};

inline std::size_t default_workers() {
  if (const char* env = std::getenv("FAIRPAR_THREADS")) {
    const long k = std::strtol(env, nullptr, 10);
    if (k >= 1) return static_cast<std::size_t>(k);
  }
  return std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
}

}  // namespace detail

class Scheduler {
 public:
  static Scheduler& instance() {
    static Scheduler s;
    return s;
  }

  std::size_t workers() const { return workers_; }

  // Not safe to call while a parallel_for is running.
  void set_workers(std::size_t k) {
    k = std::max<std::size_t>(k, 1);
    if (k == workers_ && (k == 1 || pool_)) return;
    pool_.reset();
    workers_ = k;
    if (k > 1) pool_ = std::make_unique<detail::ThreadPool>(k - 1);
  }

  // Runs fn(i) for i in [0, count). Indices are split into contiguous chunks
  // of at least `grain`; the calling thread runs the first chunk. Nested
  // calls from a worker run inline.
  template <class Fn>
  void parallel_for(std::size_t count, Fn&& fn, std::size_t grain = 2048) {
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t max_chunks = (count + grain - 1) / grain;
    const std::size_t chunks = std::min(workers_, max_chunks);
    if (chunks <= 1 || detail::in_worker || !pool_) {
      for (std::size_t i = 0; i < count; ++i) fn(i);
      return;
    }
    const std::size_t per = (count + chunks - 1) / chunks;
    std::latch done(static_cast<std::ptrdiff_t>(chunks - 1));
    std::mutex err_mu;
    std::exception_ptr err;
    auto run = [&](std::size_t c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(count, lo + per);
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    };
    for (std::size_t c = 1; c < chunks; ++c) {
      pool_->submit([&run, &done, c] {
        run(c);
        done.count_down();
      });
    }
    run(0);
    done.wait();
    if (err) std::rethrow_exception(err);
  }

 private:
  Scheduler() { set_workers(detail::default_workers()); }

  std::size_t workers_ = 0;
  std::unique_ptr<detail::ThreadPool> pool_;
};

inline void set_workers(std::size_t k) { Scheduler::instance().set_workers(k); }
inline std::size_t workers() { return Scheduler::instance().workers(); }

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t grain = 2048) {
  Scheduler::instance().parallel_for(count, std::forward<Fn>(fn), grain);
}

// Global switch for CrewAudit.
inline std::atomic<bool>& crew_checks_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}
inline void set_crew_checks(bool on) { crew_checks_flag().store(on); }
inline bool crew_checks() { return crew_checks_flag().load(std::memory_order_relaxed); }

// Exclusive-write audit for one output array. Each cell may be claimed at
// most once per step; a second claim throws CrewViolation. Inactive (and
// allocation-free) unless crew checks are on when constructed.
class CrewAudit {
 public:
  explicit CrewAudit(std::size_t cells) : active_(crew_checks()) {
    if (!active_) return;
    size_ = cells;
    stamps_ = std::make_unique<std::atomic<std::uint8_t>[]>(cells);
    next_step();
  }

  bool active() const { return active_; }

  void claim(std::size_t cell) {
    if (!active_) return;
    if (stamps_[cell].exchange(1, std::memory_order_relaxed) != 0) {
      throw CrewViolation("exclusive-write violation: cell " + std::to_string(cell) +
                          " written twice in one step");
    }
  }

  void next_step() {
    if (!active_) return;
    for (std::size_t i = 0; i < size_; ++i) stamps_[i].store(0, std::memory_order_relaxed);
  }

 private:
  bool active_;
  std::size_t size_ = 0;
  std::unique_ptr<std::atomic<std::uint8_t>[]> stamps_;
};

}  // namespace fairpar::pram
