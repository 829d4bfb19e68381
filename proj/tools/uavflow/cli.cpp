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

#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uavflow/error.hpp"
#include "uavflow/loadgen.hpp"
#include "uavflow/model.hpp"
#include "uavflow/report.hpp"
#include "uavflow/scenario.hpp"
#include "uavflow/simulator.hpp"
#include "uavflow/trace_io.hpp"
#include "uavflow/version.hpp"

namespace uavflow::cli {
namespace fs = std::filesystem;

namespace {

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool csv = false;
  std::string out_dir;
  unsigned threads = 1;
};

void AddGlobalFlags(CLI::App* cmd, GlobalFlags& g) {
  cmd->add_option("--seed", g.seed, "Override the scenario RNG seed");
  cmd->add_flag("--json", g.json, "Also write JSON output");
  cmd->add_flag("--csv", g.csv, "Also write CSV output");
  cmd->add_option("--out", g.out_dir, "Output directory");
  cmd->add_option("--threads", g.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
}

// Records what an artifact-producing command did.
class Manifest {
 public:
  Manifest(std::string command, std::string out_dir)
      : command_(std::move(command)),
        out_dir_(std::move(out_dir)),
        started_(std::chrono::steady_clock::now()) {}

  void SetScenario(const std::string& digest, std::uint64_t seed) {
    digest_ = digest;
    seed_ = seed;
  }

  void SetInvocation(std::string invocation) { invocation_ = std::move(invocation); }

  fs::path Output(const std::string& name) {
    fs::path p = fs::path(out_dir_.empty() ? "." : out_dir_) / name;
    outputs_.push_back(p.string());
    return p;
  }

  void AddOutput(const fs::path& p) { outputs_.push_back(p.string()); }

  bool empty() const { return outputs_.empty(); }

  fs::path Write() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    nlohmann::ordered_json j;
    j["kind"] = "run_manifest";
    j["command"] = command_;
    j["invocation"] = invocation_;
    j["tool_version"] = kVersionString;
    j["scenario_digest"] = digest_ ? nlohmann::ordered_json(*digest_) : nlohmann::ordered_json(nullptr);
    j["seed"] = seed_ ? nlohmann::ordered_json(*seed_) : nlohmann::ordered_json(nullptr);
    j["outputs"] = outputs_;
    j["wall_clock_s"] = wall;
    const fs::path path = fs::path(out_dir_.empty() ? "." : out_dir_) / (command_ + ".manifest.json");
    WriteFile(path, j.dump(2) + "\n");
    return path;
  }

  static void WriteFile(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw IoError("cannot write " + path.string());
  }

 private:
  std::string command_;
  std::string out_dir_;
  std::string invocation_;
  std::chrono::steady_clock::time_point started_;
  std::optional<std::string> digest_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The digest identifies the scenario file as written; --seed overrides are
// recorded separately so a re-seeded run still compares against its file.
struct LoadedScenario {
  ScenarioConfig config;
  std::string digest;
};

LoadedScenario Load(const std::string& path, const GlobalFlags& g) {
  LoadedScenario s;
  s.config = LoadScenario(path);
  s.digest = ScenarioDigest(s.config);
  if (g.seed) s.config.seed = *g.seed;
  return s;
}

int Forecast(const std::string& path, const GlobalFlags& g, const std::string& invocation,
             std::ostream& out) {
  const LoadedScenario s = Load(path, g);
  const auto& c = s.config;
  const ModelSolution model = Solve(c.model);
  const TrafficForecast f = uavflow::Forecast(c.n_uavs, c.duration_s, c.model, model.partition,
                                              model.rates);
  out << "scenario " << c.name << " (" << s.digest << ")\n"
      << FormatModelTables(model) << "\n"
      << FormatForecastTable(f);

  Manifest m("forecast", g.out_dir);
  m.SetScenario(s.digest, c.seed);
  m.SetInvocation(invocation);
  if (g.json) Manifest::WriteFile(m.Output("forecast.json"), ForecastToJson(f, model, s.digest));
  if (g.csv) Manifest::WriteFile(m.Output("forecast.csv"), ForecastToCsv(f));
  if (!m.empty()) m.Write();
  return kExitOk;
}

int Simulate(const std::string& path, std::string trace_path, double max_events,
             const GlobalFlags& g, const std::string& invocation, std::ostream& out) {
  const LoadedScenario s = Load(path, g);
  const auto& c = s.config;
  const ModelSolution model = Solve(c.model);
  const UavAssignment assignment = AssignUavs(c.n_uavs, model.partition);

  Manifest m("simulate", g.out_dir);
  m.SetScenario(s.digest, c.seed);
  m.SetInvocation(invocation);
  fs::path trace_file;
  if (trace_path.empty()) {
    trace_file = m.Output("trace.csv");
  } else {
    trace_file = trace_path;
    m.AddOutput(trace_file);
  }
  if (trace_file.has_parent_path()) fs::create_directories(trace_file.parent_path());

  GeneratorOptions opts;
  opts.threads = g.threads;
  opts.max_expected_events = max_events;
  EventGenerator gen(c, model.partition, model.rates, assignment, opts);
  TraceWriter writer(trace_file);
  TraceSummarizer summarizer(c.duration_s);
  std::vector<PacketEvent> chunk;
  while (gen.NextChunk(chunk)) {
    for (const auto& e : chunk) {
      summarizer.Add(e);
      writer.Write(e);
    }
  }
  writer.Close();

  SummaryDocument doc;
  doc.scenario_digest = s.digest;
  doc.scenario_name = c.name;
  doc.seed = c.seed;
  doc.n_uavs = c.n_uavs;
  doc.duration_s = c.duration_s;
  doc.subgroup_counts = assignment.counts;
  doc.summary = summarizer.summary();
  Manifest::WriteFile(m.Output("summary.json"), SummaryToJson(doc));
  if (g.csv) Manifest::WriteFile(m.Output("summary.csv"), SummaryToCsv(doc.summary));
  const fs::path manifest = m.Write();

  out << "simulated " << doc.summary.TotalEvents() << " events (seed " << c.seed << ", "
      << assignment.counts[0] << "/" << assignment.counts[1] << "/" << assignment.counts[2]
      << " poor/middle/rich UAVs)\n"
      << SummaryToCsv(doc.summary) << "trace: " << trace_file.string() << "\n"
      << "manifest: " << manifest.string() << "\n";
  return kExitOk;
}

int Compare(const std::string& scenario_path, const std::string& summary_path,
            const GlobalFlags& g, const std::string& invocation, std::ostream& out) {
  const LoadedScenario s = Load(scenario_path, g);
  const SummaryDocument doc = SummaryFromJson(ReadFile(summary_path));
  if (doc.scenario_digest != s.digest) {
    throw DigestMismatchError("summary " + summary_path + " was produced from scenario digest " +
                              doc.scenario_digest + " but " + scenario_path + " has digest " +
                              s.digest);
  }
  const auto& c = s.config;
  const ModelSolution model = Solve(c.model);
  const UavAssignment assignment = AssignUavs(c.n_uavs, model.partition);
  const TrafficForecast f =
      uavflow::Forecast(c.n_uavs, c.duration_s, c.model, model.partition, model.rates);
  const ComparisonReport report =
      CompareForecast(f, ExpectedSegmentCounts(assignment, c.duration_s, model.rates), doc.summary);

  out << "theoretical vs simulated, scenario " << c.name << " seed " << doc.seed << "\n"
      << FormatComparisonTable(report);

  Manifest m("compare", g.out_dir);
  m.SetScenario(s.digest, doc.seed);
  m.SetInvocation(invocation);
  if (g.json) Manifest::WriteFile(m.Output("comparison.json"), ComparisonToJson(report, s.digest));
  if (g.csv) Manifest::WriteFile(m.Output("comparison.csv"), ComparisonToCsv(report));
  if (!m.empty()) m.Write();
  return kExitOk;
}

int Replay(const std::string& trace_path, const std::string& target, const ReplayOptions& opts,
           const GlobalFlags& g, const std::string& invocation, std::ostream& out) {
  std::vector<PacketEvent> events;
  {
    TraceReader reader(trace_path);
    PacketEvent e;
    while (reader.Next(e)) events.push_back(e);
  }
  const ReplayStats stats = ReplayTrace(events, Endpoint::Parse(target), opts);
  const std::string json = ReplayStatsToJson(stats);
  out << json;
  if (!g.out_dir.empty()) {
    Manifest m("replay", g.out_dir);
    m.SetInvocation(invocation);
    Manifest::WriteFile(m.Output("replay.json"), json);
    m.Write();
  }
  return kExitOk;
}

int RunSinkCommand(const std::string& bind, double duration, const GlobalFlags& g,
                   const std::string& invocation, std::ostream& out) {
  const SinkReport report = RunSink(Endpoint::Parse(bind), duration, &StopFlag());
  const std::string json = SinkReportToJson(report);
  out << json;
  if (!g.out_dir.empty()) {
    Manifest m("sink", g.out_dir);
    m.SetInvocation(invocation);
    Manifest::WriteFile(m.Output("sink_report.json"), json);
    m.Write();
  }
  return kExitOk;
}

int PresetCommand(const std::string& which, const GlobalFlags& g, const std::string& invocation,
                  std::ostream& out) {
  const auto id = ParsePresetId(which);
  if (!id) throw InputError("unknown preset '" + which + "' (expected A or B)");
  ScenarioConfig c = Preset(*id);
  if (g.seed) c.seed = *g.seed;
  const std::string doc = EmitScenario(c);
  if (g.out_dir.empty()) {
    out << doc;
    return kExitOk;
  }
  Manifest m("preset", g.out_dir);
  m.SetScenario(ScenarioDigest(c), c.seed);
  m.SetInvocation(invocation);
  const fs::path p = m.Output(std::string("preset-") + (*id == PresetId::kA ? "A" : "B") + ".json");
  Manifest::WriteFile(p, doc);
  m.Write();
  out << p.string() << "\n";
  return kExitOk;
}

}  // namespace

std::atomic<bool>& StopFlag() {
  static std::atomic<bool> flag{false};
  return flag;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-service UAV traffic model: forecast, simulate, compare and replay"};
  app.name(args.empty() ? "uavflow" : args[0]);
  app.set_version_flag("--version", kVersionString);
  app.require_subcommand(1);

  GlobalFlags g;
  std::string scenario_path;
  std::string summary_path;
  std::string trace_path;
  std::string target;
  std::string bind;
  std::string preset_name;
  double duration = 0.0;
  double max_events = 1e9;
  double speedup = 1.0;
  unsigned max_lateness_ms = 100;
  ReplayOptions replay_opts;

  auto* forecast = app.add_subcommand("forecast", "Closed-form packet and byte forecast");
  forecast->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  AddGlobalFlags(forecast, g);

  auto* simulate = app.add_subcommand("simulate", "Generate a packet trace and its summary");
  simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--trace", trace_path, "Trace output path (.gz compresses); default OUT/trace.csv");
  simulate->add_option("--max-events", max_events, "Refuse scenarios expecting more events");
  AddGlobalFlags(simulate, g);

  auto* compare = app.add_subcommand("compare", "Compare a simulated summary against the forecast");
  compare->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  compare->add_option("summary", summary_path, "summary.json written by simulate")->required();
  AddGlobalFlags(compare, g);

  auto* replay = app.add_subcommand("replay", "Replay a trace as UDP datagrams");
  replay->add_option("trace", trace_path, "Trace file")->required();
  replay->add_option("--target", target, "Destination host:port")->required();
  auto* speed_opt = replay->add_option("--speedup", speedup, "Time compression factor");
  replay->add_flag("--as-fast-as-possible", replay_opts.as_fast_as_possible, "Disable pacing")
      ->excludes(speed_opt);
  replay->add_option("--max-lateness-ms", max_lateness_ms, "Abort when pacing falls this far behind");
  replay->add_option("--shards", replay_opts.shards, "1, or 3 for one sender per subgroup");
  AddGlobalFlags(replay, g);

  auto* sink = app.add_subcommand("sink", "Receive replayed datagrams and report per segment");
  sink->add_option("--bind", bind, "Listen host:port")->required();
  sink->add_option("--duration", duration, "Seconds to listen")->required()->check(CLI::NonNegativeNumber);
  AddGlobalFlags(sink, g);

  auto* preset = app.add_subcommand("preset", "Emit a built-in case-study scenario");
  preset->add_option("which", preset_name, "A or B")->required();
  AddGlobalFlags(preset, g);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("uavflow");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::string invocation;
  for (const auto& a : args) invocation += (invocation.empty() ? "" : " ") + a;

  try {
    if (*forecast) return Forecast(scenario_path, g, invocation, out);
    if (*simulate) return Simulate(scenario_path, trace_path, max_events, g, invocation, out);
    if (*compare) return Compare(scenario_path, summary_path, g, invocation, out);
    if (*replay) {
      replay_opts.speedup = speedup;
      replay_opts.max_lateness = std::chrono::milliseconds(max_lateness_ms);
      return Replay(trace_path, target, replay_opts, g, invocation, out);
    }
    if (*sink) return RunSinkCommand(bind, duration, g, invocation, out);
    if (*preset) return PresetCommand(preset_name, g, invocation, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace uavflow::cli
