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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include <nlohmann/json.hpp>

#include "uavflow/error.hpp"

namespace uavflow {
namespace {

using Json = nlohmann::ordered_json;

std::string Num(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string Num(const std::optional<double>& v) { return v ? Num(*v) : std::string(); }

std::string Log10(double v) { return v > 0.0 ? Num(std::log10(v)) : std::string(); }

Json Opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json MatrixJson(const CountMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json::array({row[0], row[1], row[2]}));
  return out;
}

Json MatrixJson(const Mat3& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json::array({row[0], row[1], row[2]}));
  return out;
}

Json VecJson(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

CountMatrix ReadCountMatrix(const Json& v, const char* field) {
  if (!v.is_array() || v.size() != 3) throw ValidationError({std::string(field) + ": expected 3x3"});
  CountMatrix out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_array() || v[i].size() != 3) {
      throw ValidationError({std::string(field) + ": expected 3x3"});
    }
    for (std::size_t j = 0; j < 3; ++j) {
      if (!v[i][j].is_number_unsigned()) {
        throw ValidationError({std::string(field) + ": expected non-negative integers"});
      }
      out[i][j] = v[i][j].get<std::uint64_t>();
    }
  }
  return out;
}

const char* Name(std::size_t service) {
  static constexpr const char* kNames[] = {"telemetry", "iot", "streaming"};
  return kNames[service];
}

const char* GroupName(std::size_t subgroup) {
  static constexpr const char* kNames[] = {"poor", "middle", "rich"};
  return kNames[subgroup];
}

}  // namespace

std::string SummaryToJson(const SummaryDocument& doc) {
  const auto& s = doc.summary;
  Json j;
  j["kind"] = "trace_summary";
  j["scenario_digest"] = doc.scenario_digest;
  j["scenario_name"] = doc.scenario_name;
  j["seed"] = doc.seed;
  j["n_uavs"] = doc.n_uavs;
  j["duration_s"] = doc.duration_s;
  j["subgroup_counts"] = Json::array({doc.subgroup_counts[0], doc.subgroup_counts[1],
                                      doc.subgroup_counts[2]});
  j["count"] = MatrixJson(s.count);
  j["bytes"] = MatrixJson(s.bytes);
  Json svc_count = Json::array();
  Json svc_bytes = Json::array();
  for (Service svc : kAllServices) {
    svc_count.push_back(s.ServiceCount(svc));
    svc_bytes.push_back(s.ServiceBytes(svc));
  }
  j["service_count"] = svc_count;
  j["service_bytes"] = svc_bytes;
  j["total_events"] = s.TotalEvents();
  return j.dump(2) + "\n";
}

SummaryDocument SummaryFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), 0, "");
  }
  try {
    if (j.value("kind", "") != "trace_summary") {
      throw ValidationError({"kind: expected \"trace_summary\""});
    }
    SummaryDocument doc;
    doc.scenario_digest = j.at("scenario_digest").get<std::string>();
    doc.scenario_name = j.at("scenario_name").get<std::string>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.n_uavs = j.at("n_uavs").get<std::uint64_t>();
    doc.duration_s = j.at("duration_s").get<double>();
    const auto& sc = j.at("subgroup_counts");
    for (std::size_t k = 0; k < 3; ++k) doc.subgroup_counts[k] = sc.at(k).get<std::uint64_t>();
    doc.summary.count = ReadCountMatrix(j.at("count"), "count");
    doc.summary.bytes = ReadCountMatrix(j.at("bytes"), "bytes");
    return doc;
  } catch (const Json::exception& e) {
    throw ValidationError({std::string("summary document: ") + e.what()});
  }
}

std::string SummaryToCsv(const TraceSummary& summary) {
  std::string out = "service,subgroup,packets,bytes\n";
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      out += std::string(Name(i)) + "," + GroupName(j) + "," +
             std::to_string(summary.count[i][j]) + "," + std::to_string(summary.bytes[i][j]) + "\n";
    }
  }
  return out;
}

std::string ForecastToJson(const TrafficForecast& f, const ModelSolution& model,
                           const std::string& scenario_digest) {
  Json j;
  j["kind"] = "forecast";
  j["scenario_digest"] = scenario_digest;
  j["n_uavs"] = f.n_uavs;
  j["duration_s"] = f.duration_s;
  j["log_scale"] = true;
  j["partition"] = VecJson(model.partition.fraction);
  j["beta"] = MatrixJson(model.shares.beta);
  j["lambda"] = MatrixJson(model.rates.lambda);
  Json services = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    services.push_back({{"service", Name(i)}, {"packets", f.packets[i]}, {"bytes", f.bytes[i]}});
  }
  j["services"] = services;
  j["total_bytes"] = f.total_bytes;
  return j.dump(2) + "\n";
}

std::string ForecastToCsv(const TrafficForecast& f) {
  std::string out = "service,packets,bytes,log10_packets,log10_bytes\n";
  for (std::size_t i = 0; i < 3; ++i) {
    out += std::string(Name(i)) + "," + Num(f.packets[i]) + "," + Num(f.bytes[i]) + "," +
           Log10(f.packets[i]) + "," + Log10(f.bytes[i]) + "\n";
  }
  out += "total,," + Num(f.total_bytes) + ",," + Log10(f.total_bytes) + "\n";
  return out;
}

std::string ComparisonToJson(const ComparisonReport& report, const std::string& scenario_digest) {
  Json j;
  j["kind"] = "comparison";
  j["scenario_digest"] = scenario_digest;
  j["log_scale"] = true;
  Json segments = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& c = report.segments[i][k];
      segments.push_back({{"service", Name(i)},
                          {"subgroup", GroupName(k)},
                          {"theoretical", c.expected},
                          {"simulated", c.observed},
                          {"rel_err", Opt(c.rel_err)},
                          {"z", Opt(c.z)},
                          {"degenerate", c.degenerate},
                          {"outlier", c.outlier}});
    }
  }
  j["segments"] = segments;
  Json services = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = report.services[i];
    services.push_back({{"service", Name(i)},
                        {"theoretical_packets", s.expected_packets},
                        {"simulated_packets", s.observed_packets},
                        {"rel_err_packets", Opt(s.rel_err_packets)},
                        {"z", Opt(s.z)},
                        {"theoretical_bytes", s.expected_bytes},
                        {"simulated_bytes", s.observed_bytes},
                        {"rel_err_bytes", Opt(s.rel_err_bytes)}});
  }
  j["services"] = services;
  Json outliers = Json::array();
  for (const auto& [svc, grp] : report.outliers) {
    outliers.push_back({{"service", ToString(svc)}, {"subgroup", ToString(grp)}});
  }
  j["outliers"] = outliers;
  return j.dump(2) + "\n";
}

std::string ComparisonToCsv(const ComparisonReport& report) {
  std::string out =
      "service,subgroup,metric,theoretical,simulated,rel_err,z,log10_theoretical,log10_simulated\n";
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& c = report.segments[i][k];
      const double obs = static_cast<double>(c.observed);
      out += std::string(Name(i)) + "," + GroupName(k) + ",packets," + Num(c.expected) + "," +
             std::to_string(c.observed) + "," + Num(c.rel_err) + "," + Num(c.z) + "," +
             Log10(c.expected) + "," + Log10(obs) + "\n";
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = report.services[i];
    const double p = static_cast<double>(s.observed_packets);
    const double b = static_cast<double>(s.observed_bytes);
    out += std::string(Name(i)) + ",all,packets," + Num(s.expected_packets) + "," +
           std::to_string(s.observed_packets) + "," + Num(s.rel_err_packets) + "," + Num(s.z) +
           "," + Log10(s.expected_packets) + "," + Log10(p) + "\n";
    out += std::string(Name(i)) + ",all,bytes," + Num(s.expected_bytes) + "," +
           std::to_string(s.observed_bytes) + "," + Num(s.rel_err_bytes) + ",," +
           Log10(s.expected_bytes) + "," + Log10(b) + "\n";
  }
  return out;
}

std::string FormatModelTables(const ModelSolution& model) {
  char line[256];
  std::string out;
  const auto& f = model.partition.fraction;
  std::snprintf(line, sizeof(line), "subgroup fractions F: poor=%.6f middle=%.6f rich=%.6f\n",
                f[0], f[1], f[2]);
  out += line;
  out += "\nshares beta[i][j]        poor        middle      rich\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& b = model.shares.beta[i];
    std::snprintf(line, sizeof(line), "  %-20s %-11.6f %-11.6f %-11.6f\n", Name(i), b[0], b[1],
                  b[2]);
    out += line;
  }
  out += "\nrates lambda[i][j] (pkt/s per UAV)\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& l = model.rates.lambda[i];
    std::snprintf(line, sizeof(line), "  %-20s %-11.6g %-11.6g %-11.6g\n", Name(i), l[0], l[1],
                  l[2]);
    out += line;
  }
  return out;
}

std::string FormatForecastTable(const TrafficForecast& f) {
  char line[256];
  std::snprintf(line, sizeof(line), "forecast: N=%llu T=%gs\n",
                static_cast<unsigned long long>(f.n_uavs), f.duration_s);
  std::string out = line;
  out += "  service      packets P_i          bytes D_i\n";
  for (std::size_t i = 0; i < 3; ++i) {
    std::snprintf(line, sizeof(line), "  %-12s %-20.10g %-20.10g\n", Name(i), f.packets[i],
                  f.bytes[i]);
    out += line;
  }
  std::snprintf(line, sizeof(line), "  %-12s %-20s %-20.10g\n", "total", "", f.total_bytes);
  out += line;
  return out;
}

std::string FormatComparisonTable(const ComparisonReport& report) {
  char line[256];
  std::string out = "  service    subgroup  theoretical     simulated       rel_err     z\n";
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& c = report.segments[i][k];
      if (c.degenerate) {
        std::snprintf(line, sizeof(line), "  %-10s %-9s %-15.8g %-15llu degenerate\n", Name(i),
                      GroupName(k), c.expected, static_cast<unsigned long long>(c.observed));
      } else {
        std::snprintf(line, sizeof(line), "  %-10s %-9s %-15.8g %-15llu %-+11.3e %+.3f%s\n",
                      Name(i), GroupName(k), c.expected,
                      static_cast<unsigned long long>(c.observed), *c.rel_err, *c.z,
                      c.outlier ? "  OUTLIER" : "");
      }
      out += line;
    }
  }
  out += "  service    packets(theory/sim)                 bytes(theory/sim)\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = report.services[i];
    std::snprintf(line, sizeof(line), "  %-10s %-15.8g %-15llu     %-15.8g %-15llu\n", Name(i),
                  s.expected_packets, static_cast<unsigned long long>(s.observed_packets),
                  s.expected_bytes, static_cast<unsigned long long>(s.observed_bytes));
    out += line;
  }
  std::snprintf(line, sizeof(line), "  outliers (|z| > %.0f): %zu\n", kOutlierZ,
                report.outliers.size());
  out += line;
  return out;
}

}  // namespace uavflow
