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

// Closed-form multi-service UAV traffic model.
//
// UAV traffic is split into three services (telemetry, IoT, streaming) and
// the swarm into three usage subgroups (poor, middle, rich) whose sizes come
// from Pareto Lorenz curves. Each (service, subgroup) cell is a "segment"
// with a transaction share and a per-UAV packet rate; packet and byte
// forecasts follow from the rates.
//
// Every function here is pure.

#ifndef UAVFLOW_MODEL_HPP_
#define UAVFLOW_MODEL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uavflow {

enum class Service : std::uint8_t { kTelemetry = 1, kIoT = 2, kStreaming = 3 };
enum class Subgroup : std::uint8_t { kPoor = 1, kMiddle = 2, kRich = 3 };

inline constexpr std::size_t kNumServices = 3;
inline constexpr std::size_t kNumSubgroups = 3;

inline constexpr std::array<Service, kNumServices> kAllServices = {
    Service::kTelemetry, Service::kIoT, Service::kStreaming};
inline constexpr std::array<Subgroup, kNumSubgroups> kAllSubgroups = {
    Subgroup::kPoor, Subgroup::kMiddle, Subgroup::kRich};

/// Zero-based matrix row/column for a service or subgroup.
constexpr std::size_t Index(Service s) { return static_cast<std::size_t>(s) - 1; }
constexpr std::size_t Index(Subgroup g) { return static_cast<std::size_t>(g) - 1; }

std::string_view ToString(Service s);
std::string_view ToString(Subgroup g);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct ModelParams {
  Vec3 alpha{};    // Pareto shape per service, > 1
  Vec3 gamma{};    // share of the total transaction rate per service
  Vec3 w_bytes{};  // mean transaction size per service
  double q_stream = 0.9;  // streaming share produced by the rich subgroup
  double q_iot = 0.9;     // IoT share produced by middle + rich
  double lambda_11 = 0.0;  // telemetry rate of one poor UAV, packets/s

  /// Every violated invariant, human readable. Empty when valid.
  std::vector<std::string> Violations() const;
  /// Throws ValidationError listing all violations.
  void Validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Population fractions of the poor, middle and rich subgroups.
struct SubgroupPartition {
  Vec3 fraction{};

  double operator[](Subgroup g) const { return fraction[Index(g)]; }
};

/// beta[i][j]: share of service i transactions issued by subgroup j.
struct ShareMatrix {
  Mat3 beta{};
};

/// lambda[i][j]: packets/s of service i sent by one UAV of subgroup j.
struct RateMatrix {
  Mat3 lambda{};
};

struct SegmentRates {
  Mat3 segment{};  // aggregate packets/s per segment
  Vec3 service{};  // aggregate packets/s per service
};

struct TrafficForecast {
  std::uint64_t n_uavs = 0;
  double duration_s = 0.0;
  Vec3 packets{};
  Vec3 bytes{};
  double total_bytes = 0.0;
};

/// Share of total usage produced by the bottom `p` of a Pareto(alpha)
/// population: 1 - (1 - p)^((alpha - 1) / alpha).
double LorenzShare(double alpha, double p);

/// Pareto shape with Gini coefficient `gini`, inverting G = 1 / (2 alpha - 1).
double AlphaFromGini(double gini);

/// Subgroup sizes fixed by the streaming and IoT concentration thresholds.
/// Throws InfeasiblePartitionError if a fraction would be negative.
SubgroupPartition PartitionSubgroups(const ModelParams& params);

/// Transaction shares read off each service's Lorenz curve at the subgroup
/// boundaries.
ShareMatrix FrequencyShareMatrix(const ModelParams& params,
                                 const SubgroupPartition& part);

/// Per-UAV rates for all nine segments, seeded by params.lambda_11 and
/// scaled across services by gamma.
RateMatrix DeriveRateMatrix(const ModelParams& params,
                            const SubgroupPartition& part,
                            const ShareMatrix& beta);

SegmentRates ComputeSegmentRates(std::uint64_t n_uavs,
                                 const SubgroupPartition& part,
                                 const RateMatrix& rates);

/// Shares recovered from aggregate rates; rows are normalized by service.
ShareMatrix RateShareMatrix(const SegmentRates& seg);

TrafficForecast Forecast(std::uint64_t n_uavs, double duration_s,
                         const ModelParams& params,
                         const SubgroupPartition& part,
                         const RateMatrix& rates);

/// Partition, frequency shares and rates for one parameter set.
struct ModelSolution {
  SubgroupPartition partition;
  ShareMatrix shares;
  RateMatrix rates;
};

ModelSolution Solve(const ModelParams& params);

}  // namespace uavflow

#endif  // UAVFLOW_MODEL_HPP_
