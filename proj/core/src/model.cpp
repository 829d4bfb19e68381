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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uavflow/error.hpp"

namespace uavflow {
namespace {

constexpr double kGammaSumTolerance = 1e-9;

std::string Describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

// (1 - p)^((alpha - 1) / alpha) without the domain checks.
double UpperTailShare(double alpha, double one_minus_p) {
  return std::pow(one_minus_p, (alpha - 1.0) / alpha);
}

}  // namespace

std::string_view ToString(Service s) {
  switch (s) {
    case Service::kTelemetry:
      return "telemetry";
    case Service::kIoT:
      return "iot";
    case Service::kStreaming:
      return "streaming";
  }
  return "unknown";
}

std::string_view ToString(Subgroup g) {
  switch (g) {
    case Subgroup::kPoor:
      return "poor";
    case Subgroup::kMiddle:
      return "middle";
    case Subgroup::kRich:
      return "rich";
  }
  return "unknown";
}

std::vector<std::string> ModelParams::Violations() const {
  std::vector<std::string> out;
  double gamma_sum = 0.0;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    if (!(alpha[i] > 1.0) || !std::isfinite(alpha[i])) {
      out.push_back(Describe(("alpha" + idx + ": alpha must exceed 1").c_str(),
                             alpha[i]));
    }
    if (!(gamma[i] > 0.0) || !std::isfinite(gamma[i])) {
      out.push_back(Describe(("gamma" + idx + ": gamma must be positive").c_str(),
                             gamma[i]));
    }
    if (!(w_bytes[i] >= 0.0) || !std::isfinite(w_bytes[i])) {
      out.push_back(Describe(
          ("w_bytes" + idx + ": mean size must be non-negative").c_str(),
          w_bytes[i]));
    }
    gamma_sum += gamma[i];
  }
  if (std::isfinite(gamma_sum) && std::abs(gamma_sum - 1.0) > kGammaSumTolerance) {
    out.push_back(Describe("gamma: shares must sum to 1", gamma_sum));
  }
  if (!(q_stream > 0.0 && q_stream <= 1.0)) {
    out.push_back(Describe("q_stream: must lie in (0, 1]", q_stream));
  }
  if (!(q_iot > 0.0 && q_iot <= 1.0)) {
    out.push_back(Describe("q_iot: must lie in (0, 1]", q_iot));
  }
  if (!(lambda_11 > 0.0) || !std::isfinite(lambda_11)) {
    out.push_back(Describe("lambda_11: must be positive", lambda_11));
  }
  return out;
}

void ModelParams::Validate() const {
  auto issues = Violations();
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double LorenzShare(double alpha, double p) {
  if (!(alpha > 1.0)) throw DomainError(Describe("lorenz: alpha must exceed 1", alpha));
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(Describe("lorenz: population fraction must lie in [0, 1]", p));
  }
  return 1.0 - UpperTailShare(alpha, 1.0 - p);
}

double AlphaFromGini(double gini) {
  if (!(gini > 0.0 && gini < 1.0)) {
    throw DomainError(Describe("gini coefficient must lie in (0, 1)", gini));
  }
  const double alpha = (1.0 / gini + 1.0) / 2.0;
  if (!(alpha > 1.0)) {
    throw DomainError(Describe("gini coefficient too close to 1", gini));
  }
  return alpha;
}

SubgroupPartition PartitionSubgroups(const ModelParams& params) {
  params.Validate();
  const double a_iot = params.alpha[Index(Service::kIoT)];
  const double a_stream = params.alpha[Index(Service::kStreaming)];

  // The top F fraction of a Pareto(alpha) population holds F^((alpha-1)/alpha)
  // of the usage; solve for the F that holds the threshold share.
  const double rich = std::pow(params.q_stream, a_stream / (a_stream - 1.0));
  const double middle = std::pow(params.q_iot, a_iot / (a_iot - 1.0)) - rich;
  const double poor = 1.0 - middle - rich;

  if (middle < 0.0 || poor < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "infeasible subgroup partition: alpha_iot=" << a_iot
       << " alpha_stream=" << a_stream << " q_iot=" << params.q_iot
       << " q_stream=" << params.q_stream << " give F=(" << poor << ", "
       << middle << ", " << rich << ")";
    throw InfeasiblePartitionError(os.str());
  }
  return SubgroupPartition{{poor, middle, rich}};
}

ShareMatrix FrequencyShareMatrix(const ModelParams& params,
                                 const SubgroupPartition& part) {
  const Vec3& f = part.fraction;
  for (double x : f) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError(Describe("subgroup fraction must lie in [0, 1]", x));
    }
  }
  // Lorenz curve at p = F1 and p = F1 + F2, with the complements 1 - p
  // taken as F2 + F3 and F3 so a tiny rich fraction is not lost to
  // cancellation.
  const double above_poor = f[1] + f[2];
  const double rich = f[2];
  ShareMatrix out;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    const double alpha = params.alpha[i];
    if (!(alpha > 1.0)) throw DomainError(Describe("lorenz: alpha must exceed 1", alpha));
    auto& row = out.beta[i];
    const double upper_middle = UpperTailShare(alpha, std::min(above_poor, 1.0));
    const double upper_rich = UpperTailShare(alpha, rich);
    row[0] = 1.0 - upper_middle;
    row[1] = upper_middle - upper_rich;
    row[2] = upper_rich;
  }
  return out;
}

RateMatrix DeriveRateMatrix(const ModelParams& params,
                            const SubgroupPartition& part,
                            const ShareMatrix& shares) {
  const Vec3& f = part.fraction;
  const Mat3& beta = shares.beta;
  for (std::size_t j = 0; j < kNumSubgroups; ++j) {
    if (!(f[j] > 0.0)) {
      throw DegenerateSegmentError(
          "rate derivation needs every subgroup populated; F[" +
          std::to_string(j) + "] = " + std::to_string(f[j]));
    }
  }
  if (!(beta[0][0] > 0.0)) {
    throw DegenerateSegmentError("rate derivation needs beta[0][0] > 0");
  }
  if (!(params.gamma[0] > 0.0)) {
    throw DegenerateSegmentError("rate derivation needs gamma[0] > 0");
  }

  RateMatrix out;
  auto& lambda = out.lambda;
  const double seed = params.lambda_11;
  lambda[0][0] = seed;
  lambda[0][1] = seed * beta[0][1] * f[0] / (beta[0][0] * f[1]);
  lambda[0][2] = seed * beta[0][2] * f[0] / (beta[0][0] * f[2]);

  double telemetry_per_uav = 0.0;
  for (std::size_t j = 0; j < kNumSubgroups; ++j) telemetry_per_uav += lambda[0][j] * f[j];

  for (std::size_t i = 1; i < kNumServices; ++i) {
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      lambda[i][j] = params.gamma[i] * beta[i][j] / (params.gamma[0] * f[j]) *
                     telemetry_per_uav;
    }
  }
  return out;
}

SegmentRates ComputeSegmentRates(std::uint64_t n_uavs,
                                 const SubgroupPartition& part,
                                 const RateMatrix& rates) {
  const double n = static_cast<double>(n_uavs);
  SegmentRates out;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    double per_uav = 0.0;
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      out.segment[i][j] = part.fraction[j] * n * rates.lambda[i][j];
      per_uav += rates.lambda[i][j] * part.fraction[j];
    }
    out.service[i] = n * per_uav;
  }
  return out;
}

ShareMatrix RateShareMatrix(const SegmentRates& seg) {
  ShareMatrix out;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    if (!(seg.service[i] > 0.0)) {
      throw DegenerateServiceError("service " +
                                   std::string(ToString(kAllServices[i])) +
                                   " has zero aggregate rate");
    }
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      out.beta[i][j] = seg.segment[i][j] / seg.service[i];
    }
  }
  return out;
}

TrafficForecast Forecast(std::uint64_t n_uavs, double duration_s,
                         const ModelParams& params,
                         const SubgroupPartition& part,
                         const RateMatrix& rates) {
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    throw DomainError(Describe("duration must be non-negative", duration_s));
  }
  TrafficForecast out;
  out.n_uavs = n_uavs;
  out.duration_s = duration_s;
  const double scale = static_cast<double>(n_uavs) * duration_s;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    double per_uav = 0.0;
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      per_uav += rates.lambda[i][j] * part.fraction[j];
    }
    out.packets[i] = scale * per_uav;
    out.bytes[i] = params.w_bytes[i] * out.packets[i];
    out.total_bytes += out.bytes[i];
  }
  return out;
}

ModelSolution Solve(const ModelParams& params) {
  ModelSolution out;
  out.partition = PartitionSubgroups(params);
  out.shares = FrequencyShareMatrix(params, out.partition);
  out.rates = DeriveRateMatrix(params, out.partition, out.shares);
  return out;
}

}  // namespace uavflow
