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


#include "uavflow/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace uavflow {
namespace {

// Reference vectors published with the Random123 library (philox4x32, 10 rounds).
TEST(Philox4x32, KnownAnswerZero) {
  const auto out = Philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox4x32, KnownAnswerOnes) {
  const auto out = Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox4x32, KnownAnswerPi) {
  const auto out = Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox4x32, UsableAtCompileTime) {
  constexpr auto out = Philox4x32({0, 0, 0, 0}, {0, 0});
  static_assert(out[0] == 0x6627e8d5);
}

TEST(PhiloxStream, DeterministicPerSeedAndStream) {
  PhiloxStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> first;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    EXPECT_NE(x, c.NextU64());
    EXPECT_NE(x, d.NextU64());
    first.insert(x);
  }
  EXPECT_EQ(first.size(), 100u);
  EXPECT_EQ(a.blocks_used(), 50u);
}

TEST(PhiloxStream, UniformMomentsAndRange) {
  PhiloxStream s(1, 0);
  constexpr int kN = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < kN; ++k) {
    const double u = s.NextOpenClosed();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / kN;
  const double var = sum_sq / kN - mean * mean;
  EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / kN));
  EXPECT_NEAR(var, 1.0 / 12, 1e-3);
}

TEST(PhiloxStream, ExponentialMean) {
  PhiloxStream s(9, 3);
  constexpr int kN = 1'000'000;
  double sum = 0.0;
  for (int k = 0; k < kN; ++k) {
    const double x = s.NextExponential();
    ASSERT_GE(x, 0.0);
    sum += x;
  }
  EXPECT_NEAR(sum / kN, 1.0, 5.0 / std::sqrt(kN));
}

}  // namespace
}  // namespace uavflow
