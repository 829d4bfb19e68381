// Copyright 2026 The uavflow Authors
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

#include "uavflow/model.hpp"
#include "uavflow/scenario.hpp"

namespace uavflow {
namespace {

void BM_Solve(benchmark::State& state) {
  const ModelParams p = Preset(PresetId::kB).model;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(p));
}
BENCHMARK(BM_Solve);

void BM_Forecast(benchmark::State& state) {
  const ScenarioConfig c = Preset(PresetId::kB);
  const ModelSolution sol = Solve(c.model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Forecast(c.n_uavs, c.duration_s, c.model, sol.partition, sol.rates));
  }
}
BENCHMARK(BM_Forecast);

void BM_ParseScenario(benchmark::State& state) {
  const std::string doc = EmitScenario(Preset(PresetId::kA));
  for (auto _ : state) benchmark::DoNotOptimize(ParseScenario(doc));
}
BENCHMARK(BM_ParseScenario);

}  // namespace
}  // namespace uavflow
