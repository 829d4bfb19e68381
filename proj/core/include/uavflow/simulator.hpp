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

// Packet-level simulation of a swarm under the traffic model.
//
// Each UAV runs one homogeneous Poisson process per service at its segment
// rate. Randomness comes from one Philox stream per (UAV, service), so the
// trace is a pure function of (scenario, seed) whatever the thread count.

#ifndef UAVFLOW_SIMULATOR_HPP_
#define UAVFLOW_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "uavflow/model.hpp"
#include "uavflow/rng.hpp"
#include "uavflow/scenario.hpp"

namespace uavflow {

using Counts3 = std::array<std::uint64_t, 3>;
using CountMatrix = std::array<Counts3, 3>;

/// Subgroup sizes; UAV ids are handed out contiguously poor, middle, rich.
struct UavAssignment {
  Counts3 counts{};

  std::uint64_t total() const { return counts[0] + counts[1] + counts[2]; }
  Subgroup SubgroupOf(std::uint64_t uav_id) const;
  /// First UAV id of subgroup `g`.
  std::uint64_t FirstId(Subgroup g) const;
};

/// Largest-remainder rounding of F_j * N; ties go to the lower subgroup.
UavAssignment AssignUavs(std::uint64_t n_uavs, const SubgroupPartition& part);

struct PacketEvent {
  double timestamp_s = 0.0;
  std::uint32_t uav_id = 0;
  Subgroup subgroup = Subgroup::kPoor;
  Service service = Service::kTelemetry;
  std::uint64_t seq = 0;  // per (uav, service), from 0
  std::uint64_t size_bytes = 0;

  bool operator==(const PacketEvent&) const = default;
};

/// Canonical trace order: (timestamp, uav_id, service, seq).
bool CanonicalLess(const PacketEvent& a, const PacketEvent& b);

struct GeneratorOptions {
  unsigned threads = 1;
  /// Refuse scenarios expected to produce more events than this.
  double max_expected_events = 1e9;
  /// Approximate events per emitted chunk.
  std::size_t chunk_events = std::size_t{1} << 18;
};

/// Expected event count N * T * sum_ij lambda_ij F_j.
double ExpectedEventCount(const ScenarioConfig& config,
                          const SubgroupPartition& part,
                          const RateMatrix& rates);

/// Streams the trace in time-window chunks, each in canonical order.
///
///     EventGenerator gen(cfg, part, rates, assignment);
///     std::vector<PacketEvent> chunk;
///     while (gen.NextChunk(chunk)) { ... }
class EventGenerator {
 public:
  /// Throws CapacityError past `options.max_expected_events` and InputError
  /// if the assignment does not cover config.n_uavs.
  EventGenerator(const ScenarioConfig& config, const SubgroupPartition& part,
                 const RateMatrix& rates, const UavAssignment& assignment,
                 GeneratorOptions options = {});

  /// Replaces `out` with the next chunk. Returns false once the trace is
  /// exhausted (and leaves `out` empty).
  bool NextChunk(std::vector<PacketEvent>& out);

  double window_s() const { return window_s_; }

 private:
  struct Stream {
    PhiloxStream rng;
    double rate;
    double next_time;
    std::uint64_t seq;
    std::uint32_t uav_id;
    Subgroup subgroup;
    Service service;
  };

  void Drain(std::size_t begin, std::size_t end, double until,
             std::vector<PacketEvent>& out);

  double duration_s_;
  std::array<SizeModel, kNumServices> sizes_;
  std::vector<Stream> streams_;
  GeneratorOptions options_;
  double window_s_ = 0.0;
  double cursor_ = 0.0;
  bool done_ = false;
};

/// Whole trace in memory. For tests and small scenarios.
std::vector<PacketEvent> GenerateEvents(const ScenarioConfig& config,
                                        const SubgroupPartition& part,
                                        const RateMatrix& rates,
                                        const UavAssignment& assignment,
                                        GeneratorOptions options = {});

struct TraceSummary {
  CountMatrix count{};  // [service][subgroup]
  CountMatrix bytes{};

  std::uint64_t ServiceCount(Service s) const;
  std::uint64_t ServiceBytes(Service s) const;
  std::uint64_t TotalEvents() const;

  TraceSummary& operator+=(const TraceSummary& other);
  bool operator==(const TraceSummary&) const = default;
};

/// Single-pass, order-insensitive accumulator. Add() throws
/// MalformedEventError on out-of-range fields.
class TraceSummarizer {
 public:
  /// With a duration, timestamps must also lie in [0, duration).
  explicit TraceSummarizer(std::optional<double> duration_s = std::nullopt)
      : duration_s_(duration_s) {}

  void Add(const PacketEvent& e);
  const TraceSummary& summary() const { return summary_; }

 private:
  std::optional<double> duration_s_;
  TraceSummary summary_;
};

TraceSummary SummarizeTrace(const std::vector<PacketEvent>& events);

/// Same result as SummarizeTrace(GenerateEvents(...)) without building or
/// ordering the trace. Streams are folded in parallel.
TraceSummary SimulateSummary(const ScenarioConfig& config,
                             const SubgroupPartition& part,
                             const RateMatrix& rates,
                             const UavAssignment& assignment,
                             GeneratorOptions options = {});

/// Lambda_ij = n_j * T * lambda_ij using the rounded subgroup sizes.
Mat3 ExpectedSegmentCounts(const UavAssignment& assignment, double duration_s,
                           const RateMatrix& rates);

inline constexpr double kOutlierZ = 4.0;

struct SegmentComparison {
  double expected = 0.0;
  std::uint64_t observed = 0;
  std::optional<double> rel_err;  // (observed - expected) / expected
  std::optional<double> z;        // (observed - expected) / sqrt(expected)
  bool degenerate = false;        // expected == 0
  bool outlier = false;
};

struct ServiceComparison {
  double expected_packets = 0.0;
  std::uint64_t observed_packets = 0;
  std::optional<double> rel_err_packets;
  std::optional<double> z;
  double expected_bytes = 0.0;
  std::uint64_t observed_bytes = 0;
  std::optional<double> rel_err_bytes;
};

struct ComparisonReport {
  std::array<std::array<SegmentComparison, 3>, 3> segments{};
  std::array<ServiceComparison, 3> services{};
  std::vector<std::pair<Service, Subgroup>> outliers;
};

ComparisonReport CompareForecast(const TrafficForecast& forecast,
                                 const Mat3& expected_segments,
                                 const TraceSummary& summary);

}  // namespace uavflow

#endif  // UAVFLOW_SIMULATOR_HPP_
