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

// Serial reference driver vs the OpenMP block driver on the same workload.
// Both produce identical counts; only wall time differs.

#include <benchmark/benchmark.h>

#include "codediv/harness.hpp"
#include "codediv/parallel.hpp"

using namespace codediv;

namespace {

ExperimentConfig workload(const char* code, const char* decoder, const char* feedback) {
  ExperimentConfig c;
  c.code = code;
  c.decoder = decoder;
  c.feedback = feedback;
  c.snr_grid_db = {10.0};
  c.min_errors = 1u << 30;  // never reached: fixed frame budget
  c.max_frames = 8 * kFramesPerBlock;
  return c;
}

const ExperimentConfig& pick(int which) {
  static const ExperimentConfig w[] = {workload("qostbc", "ml", "closed-form"), workload("golden-g1", "ml", "none"),
                                       workload("alamouti", "mu-zf", "multiuser")};
  return w[which];
}

void BM_Serial(benchmark::State& state) {
  const ExperimentConfig& cfg = pick(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_ber_serial(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.max_frames));
}

void BM_OpenMP(benchmark::State& state) {
  const ExperimentConfig& cfg = pick(static_cast<int>(state.range(0)));
  const int w = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_ber(cfg, w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.max_frames));
}

void workers_args(benchmark::internal::Benchmark* b) {
  const int hw = available_workers();
  for (int which = 0; which < 3; ++which)
    for (int w = 1; w <= hw; w *= 2) b->Args({which, w});
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Apply(workers_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
