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

#ifndef UAVFLOW_SCENARIO_HPP_
#define UAVFLOW_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavflow/model.hpp"

namespace uavflow {

enum class SizeKind : std::uint8_t { kDeterministic, kExponential };

std::string_view ToString(SizeKind kind);

/// Per-packet size distribution for one service. Only the mean is pinned by
/// the model; the shape is a simulation choice.
struct SizeModel {
  SizeKind kind = SizeKind::kDeterministic;
  double mean = 0.0;  // bytes

  bool operator==(const SizeModel&) const = default;
};

/// Everything needed to forecast and simulate one swarm.
///
/// JSON schema (unknown keys are rejected):
///
///     {
///       "name": "...",                        optional, default "scenario"
///       "n_uavs": 1000,
///       "duration_s": 60,
///       "seed": 42,                           optional, default 1
///       "model": {
///         "alpha": [a1, a2, a3],
///         "gamma": [g1, g2, g3],
///         "w_bytes": [w1, w2, w3],
///         "q_stream": 0.9,                    optional
///         "q_iot": 0.9,                       optional
///         "lambda_11": 1.0
///       },
///       "sizes": [{"kind": "deterministic" | "exponential", "mean": w}, x3],
///       "notes": ["..."]                      optional, free text
///     }
///
/// `sizes` defaults to deterministic sizes equal to `w_bytes`.
struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t n_uavs = 0;
  double duration_s = 0.0;
  ModelParams model;
  std::array<SizeModel, kNumServices> sizes{};
  std::uint64_t seed = 1;
  std::vector<std::string> notes;

  std::vector<std::string> Violations() const;
  void Validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ParseError on malformed JSON and ValidationError listing every
/// schema or invariant problem.
ScenarioConfig ParseScenario(std::string_view document);
ScenarioConfig LoadScenario(const std::filesystem::path& path);

/// Canonical pretty-printed JSON; ParseScenario(EmitScenario(c)) == c.
std::string EmitScenario(const ScenarioConfig& config);

/// 16 hex digits identifying the canonical form of `config`.
std::string ScenarioDigest(const ScenarioConfig& config);

enum class PresetId : std::uint8_t { kA, kB };

std::optional<PresetId> ParsePresetId(std::string_view text);

/// Built-in case studies.
///
/// A: weather measurement with video streaming.
/// B: BVLoS IoT data collection. The IoT transaction share is double A's
///    before renormalization, the swarm-average telemetry rate is 100
///    packets/s and a rich UAV sends 10 IoT packets/s.
///
/// Shapes, sizes, swarm size and duration are illustrative and flagged as
/// such in `notes`.
ScenarioConfig Preset(PresetId which);

}  // namespace uavflow

#endif  // UAVFLOW_SCENARIO_HPP_
