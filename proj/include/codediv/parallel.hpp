// SPDX-License-Identifier: Apache-2.0
//
// codediv: code diversity simulation library for space-time block codes
// Copyright (C) 2026 The codediv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Deterministic block-parallel Monte Carlo helpers. Work is split into
// fixed-size blocks, each with its own seed derived from (seed, stream,
// block); results are combined in block order, so the outcome does not
// depend on the worker count.

#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <random>

#include "codediv/channel.hpp"

namespace codediv {

inline Rng block_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return Rng(seq);
}

/// Number of OpenMP threads available (1 without OpenMP).
int available_workers() noexcept;

/// Runs f(i) for i in [begin, end). Uses OpenMP when workers > 1; the first
/// exception thrown by any iteration is rethrown after the loop.
template <class F>
void for_each_block(std::size_t begin, std::size_t end, int workers, F&& f) {
#ifdef _OPENMP
  if (workers > 1 && end - begin > 1) {
    std::exception_ptr error;
    std::mutex lock;
    const auto n = static_cast<long long>(end - begin);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long i = 0; i < n; ++i) {
      try {
        f(begin + static_cast<std::size_t>(i));
      } catch (...) {
        const std::lock_guard<std::mutex> g(lock);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  (void)workers;
  for (std::size_t i = begin; i < end; ++i) f(i);
}

}  // namespace codediv
