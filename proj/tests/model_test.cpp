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

#include "uavflow/model.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle/hp_oracle.hpp"
#include "support/test_support.hpp"
#include "uavflow/error.hpp"

namespace uavflow {
namespace {

// Frozen from tests/oracle/print_oracle.cpp (50-digit evaluation).
constexpr double kPoor = 0.14618503175453758036;
constexpr double kMiddle = 0.04381496824546241964;
constexpr double kRich = 0.81;
constexpr double kBetaPoorAlpha2 = 0.075978913527693124842;
constexpr double kBetaMiddleAlpha2 = 0.024021086472306875158;
constexpr Vec3 kGoldenLambdaRow = {1.0, 1.0548239276078776, 2.1378012071914520835};

ModelParams WorkedParams() {
  ModelParams p;
  p.alpha = {2.0, 3.0, 2.0};
  p.gamma = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  p.w_bytes = {100.0, 500.0, 1e6};
  p.lambda_11 = 1.0;
  return p;
}

SubgroupPartition WorkedPartition() { return SubgroupPartition{{kPoor, kMiddle, kRich}}; }

// ── LorenzShare ──────────────────────────────────────────────────────────────

TEST(LorenzShare, Endpoints) {
  EXPECT_EQ(LorenzShare(2.0, 0.0), 0.0);
  EXPECT_EQ(LorenzShare(2.0, 1.0), 1.0);
}

TEST(LorenzShare, ClosedFormValue) { EXPECT_NEAR(LorenzShare(2.0, 0.75), 0.5, 1e-15); }

TEST(LorenzShare, DomainErrors) {
  EXPECT_THROW(LorenzShare(1.0, 0.5), DomainError);
  EXPECT_THROW(LorenzShare(0.5, 0.5), DomainError);
  EXPECT_THROW(LorenzShare(2.0, -0.01), DomainError);
  EXPECT_THROW(LorenzShare(2.0, 1.01), DomainError);
  EXPECT_THROW(LorenzShare(2.0, std::nan("")), DomainError);
}

TEST(LorenzShare, MonotoneInPopulationAndShape) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(1.05, 8.0);
  std::uniform_real_distribution<double> p(0.01, 0.99);
  for (int k = 0; k < 2000; ++k) {
    const double a = alpha(rng);
    double p1 = p(rng), p2 = p(rng);
    if (p1 > p2) std::swap(p1, p2);
    if (p2 - p1 > 1e-9) EXPECT_LT(LorenzShare(a, p1), LorenzShare(a, p2));
    const double a2 = a * 1.1;
    EXPECT_LT(LorenzShare(a, p1), LorenzShare(a2, p1));
  }
}

TEST(LorenzShare, AgreesWithSampledParetoPopulation) {
  const double mc = testing::MonteCarloLorenzShare(2.0, 0.5, 1'000'000, 11);
  EXPECT_NEAR(mc / LorenzShare(2.0, 0.5), 1.0, 0.01);
}

// ── AlphaFromGini ────────────────────────────────────────────────────────────

TEST(AlphaFromGini, InvertsParetoGini) {
  EXPECT_NEAR(AlphaFromGini(1.0 / 3.0), 2.0, 1e-15);
  EXPECT_NEAR(AlphaFromGini(0.2), 3.0, 1e-15);
  for (double g : {0.05, 0.3, 0.5, 0.9, 0.999}) {
    const double a = AlphaFromGini(g);
    EXPECT_GT(a, 1.0);
    EXPECT_NEAR(1.0 / (2.0 * a - 1.0), g, 1e-14);
  }
}

TEST(AlphaFromGini, RejectsBoundaries) {
  EXPECT_THROW(AlphaFromGini(1.0), DomainError);
  EXPECT_THROW(AlphaFromGini(0.0), DomainError);
  EXPECT_THROW(AlphaFromGini(-0.5), DomainError);
  EXPECT_THROW(AlphaFromGini(1.5), DomainError);
}

// ── PartitionSubgroups ───────────────────────────────────────────────────────

TEST(PartitionSubgroups, WorkedExample) {
  const auto part = PartitionSubgroups(WorkedParams());
  EXPECT_NEAR(part[Subgroup::kRich], kRich, 1e-15);
  EXPECT_NEAR(part[Subgroup::kMiddle], kMiddle, 1e-15);
  EXPECT_NEAR(part[Subgroup::kPoor], kPoor, 1e-15);
}

TEST(PartitionSubgroups, AllRichAtUnitThresholds) {
  ModelParams p = WorkedParams();
  p.q_stream = 1.0;
  p.q_iot = 1.0;
  const auto part = PartitionSubgroups(p);
  EXPECT_EQ(part.fraction[2], 1.0);
  EXPECT_EQ(part.fraction[1], 0.0);
  EXPECT_EQ(part.fraction[0], 0.0);
}

TEST(PartitionSubgroups, InfeasibleShapesNameTheCulprits) {
  ModelParams p = WorkedParams();
  p.alpha[1] = 1.5;  // 0.9^3 = 0.729 < 0.81
  try {
    PartitionSubgroups(p);
    FAIL() << "expected InfeasiblePartitionError";
  } catch (const InfeasiblePartitionError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha_iot=1.5"), std::string::npos) << e.what();
  }
}

TEST(PartitionSubgroups, ValidatesParams) {
  ModelParams p = WorkedParams();
  p.gamma = {0.5, 0.5, 0.5};
  p.lambda_11 = 0.0;
  try {
    PartitionSubgroups(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.issues().size(), 2u);
  }
}

// ── FrequencyShareMatrix ─────────────────────────────────────────────────────

TEST(FrequencyShareMatrix, RichStreamingShareEqualsThreshold) {
  const ModelParams p = WorkedParams();
  const auto beta = FrequencyShareMatrix(p, PartitionSubgroups(p));
  EXPECT_NEAR(beta.beta[2][2], 0.9, 1e-12);
  EXPECT_NEAR(beta.beta[1][1] + beta.beta[1][2], 0.9, 1e-12);
}

TEST(FrequencyShareMatrix, GoldenAlphaTwoRow) {
  ModelParams p = WorkedParams();
  p.alpha = {2.0, 2.0, 2.0};
  const auto beta = FrequencyShareMatrix(p, WorkedPartition());
  for (const auto& row : beta.beta) {
    EXPECT_NEAR(row[0], kBetaPoorAlpha2, 1e-15);
    EXPECT_NEAR(row[1], kBetaMiddleAlpha2, 1e-15);
    EXPECT_NEAR(row[2], 0.9, 1e-15);
  }
}

TEST(FrequencyShareMatrix, RowsAreStochastic) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = testing::RandomFeasibleParams(rng);
    const auto beta = FrequencyShareMatrix(p, PartitionSubgroups(p));
    for (const auto& row : beta.beta) {
      EXPECT_NEAR(row[0] + row[1] + row[2], 1.0, 1e-12);
      for (double b : row) {
        EXPECT_GE(b, 0.0);
        EXPECT_LE(b, 1.0);
      }
    }
  }
}

// ── DeriveRateMatrix ─────────────────────────────────────────────────────────

TEST(DeriveRateMatrix, UniformUsageGivesUniformTelemetry) {
  ModelParams p = WorkedParams();
  p.lambda_11 = 3.5;
  const SubgroupPartition part{{0.2, 0.3, 0.5}};
  ShareMatrix beta;
  for (auto& row : beta.beta) row = part.fraction;
  const auto rates = DeriveRateMatrix(p, part, beta);
  EXPECT_DOUBLE_EQ(rates.lambda[0][0], 3.5);
  EXPECT_DOUBLE_EQ(rates.lambda[0][1], 3.5);
  EXPECT_DOUBLE_EQ(rates.lambda[0][2], 3.5);
}

TEST(DeriveRateMatrix, EmptySubgroupIsDegenerate) {
  const SubgroupPartition part{{0.19, 0.0, 0.81}};
  ShareMatrix beta;
  for (auto& row : beta.beta) row = {0.1, 0.0, 0.9};
  EXPECT_THROW(DeriveRateMatrix(WorkedParams(), part, beta), DegenerateSegmentError);
}

TEST(DeriveRateMatrix, ZeroPoorTelemetryShareIsDegenerate) {
  ShareMatrix beta;
  for (auto& row : beta.beta) row = {0.0, 0.1, 0.9};
  EXPECT_THROW(DeriveRateMatrix(WorkedParams(), WorkedPartition(), beta), DegenerateSegmentError);
}

TEST(DeriveRateMatrix, GoldenMatrix) {
  ModelParams p = WorkedParams();
  p.alpha = {2.0, 2.0, 2.0};
  const auto part = WorkedPartition();
  const auto rates = DeriveRateMatrix(p, part, FrequencyShareMatrix(p, part));
  EXPECT_EQ(rates.lambda[0][0], 1.0);
  for (const auto& row : rates.lambda) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(row[j], kGoldenLambdaRow[j], 1e-13);
  }
}

// ── Segment rates and shares ─────────────────────────────────────────────────

TEST(ComputeSegmentRates, EmptySwarm) {
  RateMatrix r;
  for (auto& row : r.lambda) row = {1.0, 2.0, 3.0};
  const auto seg = ComputeSegmentRates(0, WorkedPartition(), r);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(seg.service[i], 0.0);
    for (double s : seg.segment[i]) EXPECT_EQ(s, 0.0);
  }
}

TEST(ComputeSegmentRates, UnitRatesSumToPopulation) {
  RateMatrix r;
  for (auto& row : r.lambda) row = {1.0, 1.0, 1.0};
  const auto seg = ComputeSegmentRates(10, SubgroupPartition{{0.2, 0.3, 0.5}}, r);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(seg.service[i], 10.0, 1e-12);
    EXPECT_NEAR(seg.segment[i][0] + seg.segment[i][1] + seg.segment[i][2], seg.service[i], 1e-12);
  }
}

TEST(RateShareMatrix, ConstantRowIsUniform) {
  SegmentRates seg;
  for (std::size_t i = 0; i < 3; ++i) {
    seg.segment[i] = {4.0, 4.0, 4.0};
    seg.service[i] = 12.0;
  }
  for (const auto& row : RateShareMatrix(seg).beta) {
    for (double b : row) EXPECT_DOUBLE_EQ(b, 1.0 / 3.0);
  }
}

TEST(RateShareMatrix, ZeroServiceIsDegenerate) {
  SegmentRates seg;
  seg.segment[0] = {1.0, 1.0, 1.0};
  seg.service[0] = 3.0;
  EXPECT_THROW(RateShareMatrix(seg), DegenerateServiceError);
}

// ── Forecast ─────────────────────────────────────────────────────────────────

TEST(Forecast, ZeroDuration) {
  const ModelParams p = WorkedParams();
  const auto sol = Solve(p);
  const auto f = Forecast(100, 0.0, p, sol.partition, sol.rates);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(f.packets[i], 0.0);
    EXPECT_EQ(f.bytes[i], 0.0);
  }
  EXPECT_EQ(f.total_bytes, 0.0);
}

TEST(Forecast, UnitRatesGiveOnePacket) {
  RateMatrix r;
  for (auto& row : r.lambda) row = {1.0, 1.0, 1.0};
  const auto f = Forecast(1, 1.0, WorkedParams(), WorkedPartition(), r);
  for (double p : f.packets) EXPECT_NEAR(p, 1.0, 1e-15);
}

TEST(Forecast, HundredPacketsPerSecondTelemetry) {
  RateMatrix r;
  r.lambda[0] = {100.0, 100.0, 100.0};
  const auto f = Forecast(100, 60.0, WorkedParams(), WorkedPartition(), r);
  EXPECT_NEAR(f.packets[0], 600000.0, 1e-6);
}

TEST(Forecast, BytesFollowPackets) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = testing::RandomFeasibleParams(rng);
    const auto sol = Solve(p);
    const auto f = Forecast(250, 37.5, p, sol.partition, sol.rates);
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(f.packets[i], 0.0);
      EXPECT_DOUBLE_EQ(f.bytes[i], p.w_bytes[i] * f.packets[i]);
      total += f.bytes[i];
    }
    EXPECT_DOUBLE_EQ(f.total_bytes, total);
  }
}

TEST(Forecast, RejectsNegativeDuration) {
  EXPECT_THROW(Forecast(1, -1.0, WorkedParams(), WorkedPartition(), RateMatrix{}), DomainError);
}

// ── Properties over random feasible parameters ───────────────────────────────

TEST(ModelProperties, IdentitiesHoldOnRandomParams) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = testing::RandomFeasibleParams(rng);
    const auto sol = Solve(p);
    const auto& f = sol.partition.fraction;
    ASSERT_NEAR(f[0] + f[1] + f[2], 1.0, 1e-12);
    ASSERT_NEAR(sol.shares.beta[2][2], p.q_stream, 1e-9);
    ASSERT_NEAR(sol.shares.beta[1][1] + sol.shares.beta[1][2], p.q_iot, 1e-9);
    EXPECT_EQ(sol.rates.lambda[0][0], p.lambda_11);

    const std::uint64_t n = 1 + rng() % 5000;
    const auto seg = ComputeSegmentRates(n, sol.partition, sol.rates);
    const auto back = RateShareMatrix(seg);
    const double total = seg.service[0] + seg.service[1] + seg.service[2];
    const auto fc = Forecast(n, 12.0, p, sol.partition, sol.rates);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        ASSERT_NEAR(back.beta[i][j], sol.shares.beta[i][j], 1e-9);
        ASSERT_GE(sol.rates.lambda[i][j], 0.0);
      }
      ASSERT_NEAR(seg.service[i] / total, p.gamma[i], 1e-9);
      ASSERT_NEAR(fc.packets[i] / (12.0 * seg.service[i]), 1.0, 1e-9);
    }
  }
}

TEST(ModelProperties, MatchesHighPrecisionOracle) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = testing::RandomFeasibleParams(rng);
    const auto sol = Solve(p);
    const oracle::Vec f = oracle::Partition(p.alpha[1], p.alpha[2], p.q_iot, p.q_stream);
    const oracle::Vec alpha{p.alpha[0], p.alpha[1], p.alpha[2]};
    const oracle::Mat beta = oracle::Shares(alpha, f);
    const oracle::Mat lambda =
        oracle::Rates({p.gamma[0], p.gamma[1], p.gamma[2]}, f, beta, p.lambda_11);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(sol.partition.fraction[j], f[j].convert_to<double>(), 1e-12);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(sol.shares.beta[i][j], beta[i][j].convert_to<double>(), 1e-9);
        const double want = lambda[i][j].convert_to<double>();
        EXPECT_NEAR(sol.rates.lambda[i][j] / want, 1.0, 1e-6) << "k=" << k;
      }
    }
  }
}

}  // namespace
}  // namespace uavflow
