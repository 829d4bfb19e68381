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


#include "uavflow/report.hpp"

#include <nlohmann/json.hpp>
#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "uavflow/error.hpp"

namespace uavflow {
namespace {

using nlohmann::json;

SummaryDocument SampleDocument() {
  SummaryDocument d;
  d.scenario_digest = "0123456789abcdef";
  d.scenario_name = "small";
  d.seed = 99;
  d.n_uavs = 10;
  d.duration_s = 2.5;
  d.subgroup_counts = {2, 3, 5};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      d.summary.count[i][j] = 10 * i + j;
      d.summary.bytes[i][j] = (10 * i + j) * 64;
    }
  }
  d.summary.count[2][2] = std::uint64_t{1} << 60;
  return d;
}

TEST(SummaryJson, RoundTrips) {
  const auto d = SampleDocument();
  const std::string text = SummaryToJson(d);
  EXPECT_EQ(SummaryFromJson(text), d);
  const auto j = json::parse(text);
  EXPECT_EQ(j["kind"], "trace_summary");
  EXPECT_EQ(j["total_events"].get<std::uint64_t>(), d.summary.TotalEvents());
}

TEST(SummaryJson, RejectsWrongKindAndShape) {
  EXPECT_THROW(SummaryFromJson(R"({"kind": "forecast"})"), ValidationError);
  EXPECT_THROW(SummaryFromJson("{"), ParseError);
  auto j = json::parse(SummaryToJson(SampleDocument()));
  j["count"][1] = json::array({1, 2});
  EXPECT_THROW(SummaryFromJson(j.dump()), ValidationError);
  j = json::parse(SummaryToJson(SampleDocument()));
  j.erase("seed");
  EXPECT_THROW(SummaryFromJson(j.dump()), ValidationError);
}

TEST(SummaryCsv, OneRowPerSegment) {
  const std::string csv = SummaryToCsv(SampleDocument().summary);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_NE(csv.find("iot,middle,11,704\n"), std::string::npos) << csv;
}

TEST(ForecastReport, CarriesModelAndLogHint) {
  const auto c = testing::SmallScenario(100, 60.0, 1);
  const auto sol = Solve(c.model);
  const auto f = Forecast(c.n_uavs, c.duration_s, c.model, sol.partition, sol.rates);
  const auto j = json::parse(ForecastToJson(f, sol, "abc"));
  EXPECT_EQ(j["kind"], "forecast");
  EXPECT_EQ(j["log_scale"], true);
  EXPECT_EQ(j["scenario_digest"], "abc");
  EXPECT_DOUBLE_EQ(j["services"][0]["packets"].get<double>(), f.packets[0]);
  EXPECT_DOUBLE_EQ(j["lambda"][1][2].get<double>(), sol.rates.lambda[1][2]);
  const std::string csv = ForecastToCsv(f);
  EXPECT_EQ(csv.rfind("service,packets,bytes,log10_packets,log10_bytes\n", 0), 0u);
  EXPECT_NE(csv.find("total,"), std::string::npos);
  EXPECT_NE(FormatModelTables(sol).find("subgroup fractions F"), std::string::npos);
  EXPECT_FALSE(FormatForecastTable(f).empty());
}

TEST(ComparisonReportJson, NullsForDegenerateEntries) {
  Mat3 expected{};
  expected[0][0] = 100.0;
  TraceSummary s;
  s.count[0][0] = 110;
  const auto r = CompareForecast(TrafficForecast{}, expected, s);
  const auto j = json::parse(ComparisonToJson(r, "d"));
  ASSERT_EQ(j["segments"].size(), 9u);
  EXPECT_DOUBLE_EQ(j["segments"][0]["z"].get<double>(), 1.0);
  EXPECT_TRUE(j["segments"][1]["z"].is_null());
  EXPECT_EQ(j["segments"][1]["degenerate"], true);
  const std::string csv = ComparisonToCsv(r);
  EXPECT_NE(csv.find("telemetry,poor,packets,100,110,0.1,1,2,"), std::string::npos) << csv;
  EXPECT_FALSE(FormatComparisonTable(r).empty());
}

}  // namespace
}  // namespace uavflow
