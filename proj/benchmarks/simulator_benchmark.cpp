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

#include "uavflow/scenario.hpp"
#include "uavflow/simulator.hpp"

namespace uavflow {
namespace {

struct Fixture {
  ScenarioConfig config;
  ModelSolution model;
  UavAssignment assignment;
};

Fixture PresetB(std::uint64_t n_uavs, double duration_s) {
  Fixture f{Preset(PresetId::kB), {}, {}};
  f.config.n_uavs = n_uavs;
  f.config.duration_s = duration_s;
  f.model = Solve(f.config.model);
  f.assignment = AssignUavs(n_uavs, f.model.partition);
  return f;
}

void BM_GenerateChunks(benchmark::State& state) {
  const Fixture f = PresetB(100, 10.0);
  GeneratorOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  std::uint64_t events = 0;
  std::vector<PacketEvent> chunk;
  for (auto _ : state) {
    EventGenerator gen(f.config, f.model.partition, f.model.rates, f.assignment, opts);
    while (gen.NextChunk(chunk)) events += chunk.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_GenerateChunks)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SimulateSummary(benchmark::State& state) {
  const Fixture f = PresetB(100, 10.0);
  std::uint64_t events = 0;
  for (auto _ : state) {
    const TraceSummary s = SimulateSummary(f.config, f.model.partition, f.model.rates, f.assignment);
    events += s.TotalEvents();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulateSummary)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace uavflow
