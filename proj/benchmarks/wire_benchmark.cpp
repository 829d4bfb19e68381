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

#include "uavflow/trace_io.hpp"
#include "uavflow/wire.hpp"

namespace uavflow {
namespace {

const PacketEvent kEvent{12.345678, 4242, Subgroup::kRich, Service::kIoT, 991, 1024};

void BM_Encode(benchmark::State& state) {
  std::vector<std::uint8_t> buf;
  for (auto _ : state) {
    wire::EncodeInto(kEvent, buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * kEvent.size_bytes));
}
BENCHMARK(BM_Encode);

void BM_DecodeHeader(benchmark::State& state) {
  const auto buf = wire::EncodePacket(kEvent);
  for (auto _ : state) benchmark::DoNotOptimize(wire::DecodeHeader(buf));
}
BENCHMARK(BM_DecodeHeader);

void BM_TraceLineRoundTrip(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ParseTraceLine(FormatTraceLine(kEvent)));
}
BENCHMARK(BM_TraceLineRoundTrip);

}  // namespace
}  // namespace uavflow
