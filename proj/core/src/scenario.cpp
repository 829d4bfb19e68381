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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uavflow/error.hpp"

namespace uavflow {
namespace {

using nlohmann::json;

constexpr double kSizeMeanTolerance = 1e-9;

// Collects schema problems instead of stopping at the first one.
class SchemaReader {
 public:
  void Reject(std::string issue) { issues_.push_back(std::move(issue)); }

  void CheckKeys(const json& object, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Reject(path + key + ": unknown key");
      }
    }
  }

  const json* Find(const json& object, const std::string& path,
                   const std::string& key, bool required) {
    auto it = object.find(key);
    if (it == object.end()) {
      if (required) Reject(path + key + ": missing required field `" + key + "`");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> Number(const json& v, const std::string& field) {
    if (!v.is_number()) {
      Reject(field + ": expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::uint64_t> Unsigned(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) {
      Reject(field + ": expected a non-negative integer");
      return std::nullopt;
    }
    return v.get<std::uint64_t>();
  }

  std::optional<Vec3> Triple(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) {
      Reject(field + ": expected an array of 3 numbers");
      return std::nullopt;
    }
    Vec3 out{};
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
      auto x = Number(v[i], field + "[" + std::to_string(i) + "]");
      if (x) {
        out[i] = *x;
      } else {
        ok = false;
      }
    }
    return ok ? std::optional<Vec3>(out) : std::nullopt;
  }

  std::vector<std::string> TakeIssues() { return std::move(issues_); }

 private:
  std::vector<std::string> issues_;
};

std::size_t LineOfByte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::optional<SizeKind> ParseSizeKind(std::string_view text) {
  if (text == "deterministic") return SizeKind::kDeterministic;
  if (text == "exponential") return SizeKind::kExponential;
  return std::nullopt;
}

json ToJson(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

std::string_view ToString(SizeKind kind) {
  return kind == SizeKind::kDeterministic ? "deterministic" : "exponential";
}

std::vector<std::string> ScenarioConfig::Violations() const {
  std::vector<std::string> out;
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    out.push_back("duration_s: must be a finite non-negative number");
  }
  for (auto& issue : model.Violations()) out.push_back("model." + issue);
  for (std::size_t i = 0; i < kNumServices; ++i) {
    const double w = model.w_bytes[i];
    const double mean = sizes[i].mean;
    if (std::abs(mean - w) > kSizeMeanTolerance * std::max(1.0, std::abs(w))) {
      std::ostringstream os;
      os.precision(17);
      os << "sizes[" << i << "].mean: must equal model.w_bytes[" << i << "] (got "
         << mean << " vs " << w << ")";
      out.push_back(os.str());
    }
  }
  return out;
}

void ScenarioConfig::Validate() const {
  auto issues = Violations();
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

ScenarioConfig ParseScenario(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), LineOfByte(document, e.byte == 0 ? 0 : e.byte - 1), "");
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object", 1, "/");

  SchemaReader r;
  ScenarioConfig cfg;
  r.CheckKeys(doc, "", {"name", "n_uavs", "duration_s", "seed", "model", "sizes", "notes"});

  if (auto* v = r.Find(doc, "", "name", false)) {
    if (v->is_string()) {
      cfg.name = v->get<std::string>();
    } else {
      r.Reject("name: expected a string");
    }
  }
  if (auto* v = r.Find(doc, "", "n_uavs", true)) {
    if (auto n = r.Unsigned(*v, "n_uavs")) cfg.n_uavs = *n;
  }
  if (auto* v = r.Find(doc, "", "duration_s", true)) {
    if (auto t = r.Number(*v, "duration_s")) cfg.duration_s = *t;
  }
  if (auto* v = r.Find(doc, "", "seed", false)) {
    if (auto s = r.Unsigned(*v, "seed")) cfg.seed = *s;
  }
  if (auto* v = r.Find(doc, "", "notes", false)) {
    if (v->is_array() && std::all_of(v->begin(), v->end(),
                                     [](const json& x) { return x.is_string(); })) {
      cfg.notes = v->get<std::vector<std::string>>();
    } else {
      r.Reject("notes: expected an array of strings");
    }
  }

  bool have_w = false;
  if (auto* m = r.Find(doc, "", "model", true)) {
    if (!m->is_object()) {
      r.Reject("model: expected an object");
    } else {
      r.CheckKeys(*m, "model.",
                  {"alpha", "gamma", "w_bytes", "q_stream", "q_iot", "lambda_11"});
      auto& p = cfg.model;
      if (auto* v = r.Find(*m, "model.", "alpha", true)) {
        if (auto x = r.Triple(*v, "model.alpha")) p.alpha = *x;
      }
      if (auto* v = r.Find(*m, "model.", "gamma", true)) {
        if (auto x = r.Triple(*v, "model.gamma")) p.gamma = *x;
      }
      if (auto* v = r.Find(*m, "model.", "w_bytes", true)) {
        if (auto x = r.Triple(*v, "model.w_bytes")) {
          p.w_bytes = *x;
          have_w = true;
        }
      }
      if (auto* v = r.Find(*m, "model.", "q_stream", false)) {
        if (auto x = r.Number(*v, "model.q_stream")) p.q_stream = *x;
      }
      if (auto* v = r.Find(*m, "model.", "q_iot", false)) {
        if (auto x = r.Number(*v, "model.q_iot")) p.q_iot = *x;
      }
      if (auto* v = r.Find(*m, "model.", "lambda_11", true)) {
        if (auto x = r.Number(*v, "model.lambda_11")) p.lambda_11 = *x;
      }
    }
  }

  for (std::size_t i = 0; i < kNumServices; ++i) {
    cfg.sizes[i] = SizeModel{SizeKind::kDeterministic, cfg.model.w_bytes[i]};
  }
  if (auto* s = r.Find(doc, "", "sizes", false)) {
    if (!s->is_array() || s->size() != kNumServices) {
      r.Reject("sizes: expected an array of 3 objects");
    } else {
      for (std::size_t i = 0; i < kNumServices; ++i) {
        const std::string path = "sizes[" + std::to_string(i) + "]";
        const json& entry = (*s)[i];
        if (!entry.is_object()) {
          r.Reject(path + ": expected an object");
          continue;
        }
        r.CheckKeys(entry, path + ".", {"kind", "mean"});
        if (auto* k = r.Find(entry, path + ".", "kind", true)) {
          auto kind = k->is_string() ? ParseSizeKind(k->get<std::string>()) : std::nullopt;
          if (kind) {
            cfg.sizes[i].kind = *kind;
          } else {
            r.Reject(path + ".kind: expected \"deterministic\" or \"exponential\"");
          }
        }
        if (auto* v = r.Find(entry, path + ".", "mean", false)) {
          if (auto x = r.Number(*v, path + ".mean")) cfg.sizes[i].mean = *x;
        }
      }
    }
  }

  auto issues = r.TakeIssues();
  if (have_w || issues.empty()) {
    for (auto& issue : cfg.Violations()) {
      if (std::find(issues.begin(), issues.end(), issue) == issues.end()) {
        issues.push_back(std::move(issue));
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return cfg;
}

ScenarioConfig LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string EmitScenario(const ScenarioConfig& c) {
  json sizes = json::array();
  for (const auto& s : c.sizes) {
    sizes.push_back({{"kind", ToString(s.kind)}, {"mean", s.mean}});
  }
  json doc = {
      {"name", c.name},
      {"n_uavs", c.n_uavs},
      {"duration_s", c.duration_s},
      {"seed", c.seed},
      {"model",
       {{"alpha", ToJson(c.model.alpha)},
        {"gamma", ToJson(c.model.gamma)},
        {"w_bytes", ToJson(c.model.w_bytes)},
        {"q_stream", c.model.q_stream},
        {"q_iot", c.model.q_iot},
        {"lambda_11", c.model.lambda_11}}},
      {"sizes", sizes},
  };
  if (!c.notes.empty()) doc["notes"] = c.notes;
  return doc.dump(2) + "\n";
}

std::string ScenarioDigest(const ScenarioConfig& config) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : EmitScenario(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<PresetId> ParsePresetId(std::string_view text) {
  if (text == "A" || text == "a") return PresetId::kA;
  if (text == "B" || text == "b") return PresetId::kB;
  return std::nullopt;
}

namespace {

// Illustrative values shared by both case studies.
constexpr Vec3 kPresetAlpha = {4.0, 3.0, 2.0};
constexpr Vec3 kPresetWBytes = {64.0, 1024.0, 5.0e6};
constexpr double kTelemetryPerUav = 100.0;  // packets/s, swarm average
constexpr double kRichIotRateB = 10.0;      // packets/s per rich UAV
constexpr double kStreamingRelative = 1e-3;  // gamma_3 / gamma_1

Vec3 Normalized(Vec3 v) {
  const double sum = v[0] + v[1] + v[2];
  for (auto& x : v) x /= sum;
  return v;
}

ScenarioConfig PresetBase() {
  ScenarioConfig c;
  c.n_uavs = 1000;
  c.duration_s = 60.0;
  c.model.alpha = kPresetAlpha;
  c.model.w_bytes = kPresetWBytes;
  c.model.q_stream = 0.9;
  c.model.q_iot = 0.9;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    c.sizes[i] = SizeModel{SizeKind::kDeterministic, kPresetWBytes[i]};
  }

  // The partition and shares do not depend on gamma or lambda_11, so solve
  // them with placeholders first.
  ModelParams probe = c.model;
  probe.gamma = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  probe.lambda_11 = 1.0;
  const auto part = PartitionSubgroups(probe);
  const auto beta = FrequencyShareMatrix(probe, part);

  // Swarm-average telemetry rate is lambda_11 * F1 / beta_11.
  c.model.lambda_11 = kTelemetryPerUav * beta.beta[0][0] / part.fraction[0];

  // With that telemetry mix, a rich UAV's IoT rate is
  // 100 * (gamma_2 / gamma_1) * beta_23 / F3. Scenario B doubles A's IoT
  // share, so A carries half of the ratio B needs.
  const double iot_ratio_b = kRichIotRateB / kTelemetryPerUav * part.fraction[2] /
                             beta.beta[1][2];
  c.model.gamma = Normalized({1.0, iot_ratio_b / 2.0, kStreamingRelative});
  return c;
}

const char* const kIllustrativeNote =
    "illustrative: alpha, w_bytes, n_uavs, duration_s and the streaming share "
    "are placeholder values, not published figures";

}  // namespace

ScenarioConfig Preset(PresetId which) {
  ScenarioConfig c = PresetBase();
  if (which == PresetId::kA) {
    c.name = "A-weather-video";
    c.seed = 20201;
    c.notes = {
        "weather measurement and video streaming case study",
        kIllustrativeNote,
        "telemetry averages 100 packets/s per UAV",
    };
    return c;
  }
  const Vec3 a = c.model.gamma;
  c.model.gamma = Normalized({a[0], 2.0 * a[1], a[2]});
  c.name = "B-bvlos-iot";
  c.seed = 20202;
  c.notes = {
      "BVLoS IoT data-collection case study",
      kIllustrativeNote,
      "telemetry averages 100 packets/s per UAV; a rich UAV sends 10 IoT packets/s",
      "IoT transaction share is double preset A's before renormalization",
  };
  return c;
}

}  // namespace uavflow
