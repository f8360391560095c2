// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_PARALLEL_HPP
#define BLOCHHOM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace blochhom
{

// Number of worker threads used by ParallelFor. Zero selects the hardware concurrency.
void SetWorkerCount(unsigned count);
unsigned WorkerCount();

//
// Calls fn(i) for i in [0, n) on a pool of threads. Each index is processed exactly once;
// callers store per-index results and reduce them in index order afterwards, which keeps
// results independent of scheduling. The first exception thrown by any call is rethrown.
//
template <typename Fn>
void ParallelFor(std::size_t n, Fn &&fn)
{
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, WorkerCount()), n));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]()
  {
    for (std::size_t i = next++; i < n; i = next++)
    {
      try
      {
        fn(i);
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
        {
          error = std::current_exception();
        }
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; w++)
  {
    pool.emplace_back(body);
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace blochhom

#endif  // BLOCHHOM_PARALLEL_HPP
