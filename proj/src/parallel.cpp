// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/parallel.hpp"

namespace blochhom
{

namespace
{

std::atomic<unsigned> worker_count{0};

}  // namespace

void SetWorkerCount(unsigned count)
{
  worker_count = count;
}

unsigned WorkerCount()
{
  const unsigned count = worker_count;
  if (count == 0)
  {
    return std::max(1u, std::thread::hardware_concurrency());
  }
  return count;
}

}  // namespace blochhom
