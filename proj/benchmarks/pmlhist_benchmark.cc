// Copyright 2026 The pmlhist Authors
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

#include <benchmark/benchmark.h>

#include <vector>

#include "pmlhist/bounds.h"
#include "pmlhist/experiments.h"
#include "pmlhist/mechanism.h"
#include "pmlhist/oracle.h"
#include "pmlhist/random_stream.h"

namespace pmlhist {
namespace {

void BM_EpsPmlTight(benchmark::State& state) {
  const AlphaFloor alpha = *AlphaFloor::Create(0.05, 10);
  double b = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EpsPmlTight(*NoiseScale::Create(b), alpha));
    b = b < 100 ? b * 1.01 : 0.5;
  }
}
BENCHMARK(BM_EpsPmlTight);

void BM_CalibratePml(benchmark::State& state) {
  const AlphaFloor alpha = *AlphaFloor::Create(0.05, 10);
  const PrivacyLevel target = *PrivacyLevel::Create(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CalibratePml(target, alpha));
  }
}
BENCHMARK(BM_CalibratePml);

void BM_Privatize(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Histogram h = *Histogram::FromCounts(std::vector<int64_t>(k, 100));
  const NoiseScale b = *NoiseScale::Create(4.0);
  RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Privatize(h, b, stream));
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_Privatize)->Arg(5)->Arg(20)->Arg(1000);

// Enumeration cost grows as binomial(n + k - 2, k - 1).
void BM_ExactPml(benchmark::State& state) {
  const int64_t n = state.range(0);
  const int k = static_cast<int>(state.range(1));
  const ClassDistribution p =
      *ClassDistribution::Create(std::vector<double>(k, 1.0 / k));
  const NoisyHistogram y = *TightnessWitness(n, k);
  const NoiseScale b = *NoiseScale::Create(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactPml(y, p, n, b));
  }
  state.counters["terms"] = CountCompositions(n - 1, k);
}
BENCHMARK(BM_ExactPml)->Args({3, 3})->Args({10, 3})->Args({10, 5})->Args({20, 5});

void BM_RunCell(benchmark::State& state) {
  ExperimentConfig config;
  config.n = 1000;
  config.reps = static_cast<int>(state.range(0));
  config.threads = 1;
  const Cell cell{0.5, 10, 0.05, Mechanism::kPml};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunCell(config, cell));
  }
  state.SetItemsProcessed(state.iterations() * config.reps);
}
BENCHMARK(BM_RunCell)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pmlhist

BENCHMARK_MAIN();
