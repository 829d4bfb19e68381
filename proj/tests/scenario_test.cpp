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


#include "uavflow/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "uavflow/error.hpp"

namespace uavflow {
namespace {

constexpr const char* kMinimal = R"({
  "n_uavs": 10,
  "duration_s": 5,
  "model": {
    "alpha": [2, 3, 2],
    "gamma": [0.5, 0.3, 0.2],
    "w_bytes": [100, 500, 2000],
    "lambda_11": 1.5
  }
})";

bool HasIssueContaining(const ValidationError& e, const std::string& needle) {
  return std::any_of(e.issues().begin(), e.issues().end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::string Replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(ParseScenario, MinimalDocumentUsesDefaults) {
  const auto c = ParseScenario(kMinimal);
  EXPECT_EQ(c.name, "scenario");
  EXPECT_EQ(c.n_uavs, 10u);
  EXPECT_EQ(c.duration_s, 5.0);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.model.q_stream, 0.9);
  EXPECT_EQ(c.model.q_iot, 0.9);
  EXPECT_EQ(c.model.lambda_11, 1.5);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(c.sizes[i].kind, SizeKind::kDeterministic);
    EXPECT_EQ(c.sizes[i].mean, c.model.w_bytes[i]);
  }
}

TEST(ParseScenario, MissingGammaIsNamed) {
  const std::string doc = Replace(kMinimal, R"("gamma": [0.5, 0.3, 0.2],)", "");
  try {
    ParseScenario(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(HasIssueContaining(e, "missing required field `gamma`")) << e.what();
  }
}

TEST(ParseScenario, AlphaAtMostOneIsRejected) {
  const std::string doc = Replace(kMinimal, "[2, 3, 2]", "[2, 0.9, 2]");
  try {
    ParseScenario(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(HasIssueContaining(e, "alpha must exceed 1")) << e.what();
    EXPECT_TRUE(HasIssueContaining(e, "alpha[1]")) << e.what();
  }
}

TEST(ParseScenario, CollectsEveryIssue) {
  std::string doc = Replace(kMinimal, "[2, 3, 2]", "[0.5, 3, 1]");
  doc = Replace(doc, R"("lambda_11": 1.5)", R"("lambda_11": -1, "colour": 3)");
  try {
    ParseScenario(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(HasIssueContaining(e, "model.colour: unknown key")) << e.what();
    EXPECT_TRUE(HasIssueContaining(e, "alpha[0]")) << e.what();
    EXPECT_TRUE(HasIssueContaining(e, "alpha[2]")) << e.what();
    EXPECT_TRUE(HasIssueContaining(e, "lambda_11")) << e.what();
  }
}

TEST(ParseScenario, UnknownTopLevelKey) {
  const std::string doc = Replace(kMinimal, R"("n_uavs": 10,)", R"("n_uavs": 10, "extra": true,)");
  EXPECT_THROW(ParseScenario(doc), ValidationError);
}

TEST(ParseScenario, TypeErrors) {
  EXPECT_THROW(ParseScenario(Replace(kMinimal, R"("n_uavs": 10)", R"("n_uavs": -3)")),
               ValidationError);
  EXPECT_THROW(ParseScenario(Replace(kMinimal, R"("n_uavs": 10)", R"("n_uavs": 2.5)")),
               ValidationError);
  EXPECT_THROW(ParseScenario(Replace(kMinimal, "[2, 3, 2]", "[2, 3]")), ValidationError);
  EXPECT_THROW(ParseScenario("[1, 2, 3]"), ParseError);
}

TEST(ParseScenario, SyntaxErrorReportsLine) {
  const std::string doc = Replace(kMinimal, R"("duration_s": 5,)", R"("duration_s": 5,,)");
  try {
    ParseScenario(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u) << e.what();
  }
}

TEST(ParseScenario, SizeMeanMustMatchWeight) {
  const std::string doc = Replace(
      kMinimal, R"("n_uavs": 10,)",
      R"("n_uavs": 10, "sizes": [{"kind": "exponential", "mean": 100},
          {"kind": "deterministic"}, {"kind": "deterministic", "mean": 1999}],)");
  try {
    ParseScenario(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.issues().size(), 1u) << e.what();
    EXPECT_TRUE(HasIssueContaining(e, "sizes[2].mean")) << e.what();
  }
}

TEST(ParseScenario, ExponentialSizes) {
  const std::string doc = Replace(
      kMinimal, R"("n_uavs": 10,)",
      R"("n_uavs": 10, "sizes": [{"kind": "exponential"}, {"kind": "deterministic"},
          {"kind": "exponential", "mean": 2000}],)");
  const auto c = ParseScenario(doc);
  EXPECT_EQ(c.sizes[0].kind, SizeKind::kExponential);
  EXPECT_EQ(c.sizes[0].mean, 100.0);
  EXPECT_EQ(c.sizes[2].kind, SizeKind::kExponential);
}

TEST(EmitScenario, RoundTrips) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    ScenarioConfig c = testing::SmallScenario(rng() % 100000, 0.1 * (rng() % 10000), rng());
    c.model = testing::RandomFeasibleParams(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      c.sizes[i] = SizeModel{(rng() & 1) ? SizeKind::kExponential : SizeKind::kDeterministic,
                             c.model.w_bytes[i]};
    }
    if (k % 2) c.notes = {"first", "second"};
    const auto back = ParseScenario(EmitScenario(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(ScenarioDigest(back), ScenarioDigest(c));
  }
}

TEST(ScenarioDigest, SensitiveToEveryField) {
  const ScenarioConfig base = testing::SmallScenario(10, 5.0, 1);
  const std::string d0 = ScenarioDigest(base);
  EXPECT_EQ(d0.size(), 16u);
  ScenarioConfig c = base;
  c.seed = 2;
  EXPECT_NE(ScenarioDigest(c), d0);
  c = base;
  c.model.alpha[1] = 3.0000001;
  EXPECT_NE(ScenarioDigest(c), d0);
  c = base;
  c.n_uavs = 11;
  EXPECT_NE(ScenarioDigest(c), d0);
}

TEST(LoadScenario, ReadsFileAndReportsMissing) {
  const auto dir = testing::TempDir("load_scenario");
  const auto path = dir / "s.json";
  std::ofstream(path) << kMinimal;
  EXPECT_EQ(LoadScenario(path), ParseScenario(kMinimal));
  EXPECT_THROW(LoadScenario(dir / "absent.json"), IoError);
}

TEST(Preset, ParsesIds) {
  EXPECT_EQ(ParsePresetId("A"), PresetId::kA);
  EXPECT_EQ(ParsePresetId("b"), PresetId::kB);
  EXPECT_FALSE(ParsePresetId("C").has_value());
}

TEST(Preset, BothAreValidAndFeasible) {
  for (PresetId id : {PresetId::kA, PresetId::kB}) {
    const auto c = Preset(id);
    EXPECT_NO_THROW(c.Validate());
    const auto sol = Solve(c.model);
    for (double f : sol.partition.fraction) EXPECT_GT(f, 0.0);
    EXPECT_EQ(ParseScenario(EmitScenario(c)), c);
    EXPECT_TRUE(std::any_of(c.notes.begin(), c.notes.end(), [](const std::string& n) {
      return n.find("illustrative") != std::string::npos;
    }));
  }
}

TEST(Preset, BDoublesTheIotShareOfA) {
  const auto a = Preset(PresetId::kA).model.gamma;
  const auto b = Preset(PresetId::kB).model.gamma;
  EXPECT_NEAR(b[1] / b[0], 2.0 * a[1] / a[0], 1e-12);
  EXPECT_NEAR(b[2] / b[0], a[2] / a[0], 1e-12);
}

TEST(Preset, BHitsQuotedRates) {
  const auto c = Preset(PresetId::kB);
  const auto sol = Solve(c.model);
  const auto& f = sol.partition.fraction;
  double telemetry = 0.0;
  for (std::size_t j = 0; j < 3; ++j) telemetry += sol.rates.lambda[0][j] * f[j];
  EXPECT_NEAR(telemetry, 100.0, 1e-9);
  EXPECT_NEAR(sol.rates.lambda[1][2], 10.0, 1e-9);
  const auto fc = Forecast(c.n_uavs, c.duration_s, c.model, sol.partition, sol.rates);
  EXPECT_GT(fc.packets[0], fc.packets[1]);
}

}  // namespace
}  // namespace uavflow
