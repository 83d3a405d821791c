// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BRICKWORK_PARALLEL_HPP
#define BRICKWORK_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace brickwork
{

// Calls body(i) for i in [0, n) on a small pool of threads. Each index is visited once;
// results must be written to per-index slots. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t n, Body &&body)
{
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back(
        [&]
        {
          for (std::size_t i = next++; i < n; i = next++)
          {
            try
            {
              body(i);
            }
            catch (...)
            {
              std::lock_guard lock(error_mutex);
              if (!error)
              {
                error = std::current_exception();
              }
            }
          }
        });
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

}  // namespace brickwork

#endif  // BRICKWORK_PARALLEL_HPP
