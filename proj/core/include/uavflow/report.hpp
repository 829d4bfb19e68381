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

// Machine-readable exports. JSON documents carry the scenario digest so a
// summary cannot be compared against a different scenario; CSV files are
// long-format tables ready for bar charts on a log axis.

#ifndef UAVFLOW_REPORT_HPP_
#define UAVFLOW_REPORT_HPP_

#include <string>
#include <string_view>

#include "uavflow/model.hpp"
#include "uavflow/simulator.hpp"

namespace uavflow {

struct SummaryDocument {
  std::string scenario_digest;
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::uint64_t n_uavs = 0;
  double duration_s = 0.0;
  Counts3 subgroup_counts{};
  TraceSummary summary;

  bool operator==(const SummaryDocument&) const = default;
};

std::string SummaryToJson(const SummaryDocument& doc);
/// Throws ParseError / ValidationError on a malformed document.
SummaryDocument SummaryFromJson(std::string_view text);
std::string SummaryToCsv(const TraceSummary& summary);

std::string ForecastToJson(const TrafficForecast& forecast, const ModelSolution& model,
                           const std::string& scenario_digest);
std::string ForecastToCsv(const TrafficForecast& forecast);

std::string ComparisonToJson(const ComparisonReport& report, const std::string& scenario_digest);
std::string ComparisonToCsv(const ComparisonReport& report);

/// Fixed-width text tables for terminals.
std::string FormatModelTables(const ModelSolution& model);
std::string FormatForecastTable(const TrafficForecast& forecast);
std::string FormatComparisonTable(const ComparisonReport& report);

}  // namespace uavflow

#endif  // UAVFLOW_REPORT_HPP_
