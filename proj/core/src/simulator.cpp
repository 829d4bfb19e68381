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

#include "uavflow/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "uavflow/error.hpp"

namespace uavflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t StreamId(std::uint32_t uav_id, Service s) {
  return (std::uint64_t{uav_id} << 8) | static_cast<std::uint64_t>(s);
}

std::uint64_t DrawSize(PhiloxStream& rng, const SizeModel& model) {
  if (model.kind == SizeKind::kDeterministic) {
    return static_cast<std::uint64_t>(std::llround(model.mean));
  }
  return static_cast<std::uint64_t>(std::llround(model.mean * rng.NextExponential()));
}

// Emits every arrival of one stream strictly before `until`. Both the trace
// generator and the direct summarizer go through here, so they consume the
// random streams identically.
template <typename Stream, typename Emit>
void Advance(Stream& s, double until, const SizeModel& size_model, Emit&& emit) {
  while (s.next_time < until) {
    const std::uint64_t size = DrawSize(s.rng, size_model);
    emit(s.next_time, s.seq, size);
    ++s.seq;
    s.next_time += s.rng.NextExponential() / s.rate;
  }
}

// Runs fn(thread_index, begin, end) over `threads` contiguous slices of
// [0, n). Slices are joined before returning.
template <typename Fn>
void ParallelSlices(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = n * t / threads;
    const std::size_t end = n * (t + 1) / threads;
    workers.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
  }
}

void CheckConsistent(const ScenarioConfig& config, const UavAssignment& assignment) {
  if (assignment.total() != config.n_uavs) {
    throw InputError("UAV assignment covers " + std::to_string(assignment.total()) +
                     " UAVs but the scenario has " + std::to_string(config.n_uavs));
  }
  if (config.n_uavs > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("n_uavs exceeds the 32-bit UAV id space");
  }
  if (!(config.duration_s >= 0.0) || !std::isfinite(config.duration_s)) {
    throw InputError("duration_s must be finite and non-negative");
  }
}

}  // namespace

Subgroup UavAssignment::SubgroupOf(std::uint64_t uav_id) const {
  if (uav_id < counts[0]) return Subgroup::kPoor;
  if (uav_id < counts[0] + counts[1]) return Subgroup::kMiddle;
  return Subgroup::kRich;
}

std::uint64_t UavAssignment::FirstId(Subgroup g) const {
  std::uint64_t first = 0;
  for (std::size_t j = 0; j < Index(g); ++j) first += counts[j];
  return first;
}

UavAssignment AssignUavs(std::uint64_t n_uavs, const SubgroupPartition& part) {
  UavAssignment out;
  std::array<double, 3> remainder{};
  std::uint64_t assigned = 0;
  for (std::size_t j = 0; j < kNumSubgroups; ++j) {
    const double exact = part.fraction[j] * static_cast<double>(n_uavs);
    const double floor = std::floor(exact);
    out.counts[j] = static_cast<std::uint64_t>(floor);
    remainder[j] = exact - floor;
    assigned += out.counts[j];
  }
  // Rounding noise can push the floors one past N.
  while (assigned > n_uavs) {
    auto j = static_cast<std::size_t>(
        std::max_element(out.counts.begin(), out.counts.end()) - out.counts.begin());
    --out.counts[j];
    --assigned;
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < n_uavs; k = (k + 1) % 3) {
    ++out.counts[order[k]];
    ++assigned;
  }
  return out;
}

bool CanonicalLess(const PacketEvent& a, const PacketEvent& b) {
  if (a.timestamp_s != b.timestamp_s) return a.timestamp_s < b.timestamp_s;
  if (a.uav_id != b.uav_id) return a.uav_id < b.uav_id;
  if (a.service != b.service) return a.service < b.service;
  return a.seq < b.seq;
}

double ExpectedEventCount(const ScenarioConfig& config, const SubgroupPartition& part,
                          const RateMatrix& rates) {
  double per_uav = 0.0;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      per_uav += rates.lambda[i][j] * part.fraction[j];
    }
  }
  return static_cast<double>(config.n_uavs) * config.duration_s * per_uav;
}

EventGenerator::EventGenerator(const ScenarioConfig& config, const SubgroupPartition& part,
                               const RateMatrix& rates, const UavAssignment& assignment,
                               GeneratorOptions options)
    : duration_s_(config.duration_s), sizes_(config.sizes), options_(options) {
  CheckConsistent(config, assignment);
  const double expected = ExpectedEventCount(config, part, rates);
  if (expected > options_.max_expected_events) {
    std::ostringstream os;
    os << "scenario expects " << expected << " events, above the cap of "
       << options_.max_expected_events;
    throw CapacityError(os.str());
  }

  double total_rate = 0.0;
  streams_.reserve(config.n_uavs * kNumServices);
  for (std::uint64_t u = 0; u < config.n_uavs; ++u) {
    const auto uav = static_cast<std::uint32_t>(u);
    const Subgroup g = assignment.SubgroupOf(u);
    for (Service s : kAllServices) {
      const double rate = rates.lambda[Index(s)][Index(g)];
      if (!(rate > 0.0)) continue;
      Stream st{PhiloxStream(config.seed, StreamId(uav, s)), rate, 0.0, 0, uav, g, s};
      st.next_time = st.rng.NextExponential() / rate;
      streams_.push_back(st);
      total_rate += rate;
    }
  }
  window_s_ = duration_s_;
  if (total_rate > 0.0) {
    window_s_ = std::min(duration_s_,
                         static_cast<double>(std::max<std::size_t>(options_.chunk_events, 1)) /
                             total_rate);
  }
  done_ = streams_.empty() || duration_s_ <= 0.0;
}

void EventGenerator::Drain(std::size_t begin, std::size_t end, double until,
                           std::vector<PacketEvent>& out) {
  for (std::size_t k = begin; k < end; ++k) {
    Stream& s = streams_[k];
    Advance(s, until, sizes_[Index(s.service)],
            [&](double t, std::uint64_t seq, std::uint64_t size) {
              out.push_back(PacketEvent{t, s.uav_id, s.subgroup, s.service, seq, size});
            });
  }
}

bool EventGenerator::NextChunk(std::vector<PacketEvent>& out) {
  out.clear();
  while (!done_ && out.empty()) {
    double until = cursor_ + window_s_;
    if (until >= duration_s_ || window_s_ <= 0.0) {
      until = duration_s_;
      done_ = true;
    }
    cursor_ = until;

    const unsigned threads = std::max(1u, options_.threads);
    if (threads == 1) {
      Drain(0, streams_.size(), until, out);
    } else {
      std::vector<std::vector<PacketEvent>> parts(threads);
      ParallelSlices(streams_.size(), threads,
                     [&](unsigned t, std::size_t b, std::size_t e) { Drain(b, e, until, parts[t]); });
      for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    }
    std::sort(out.begin(), out.end(), CanonicalLess);
  }
  return !out.empty();
}

std::vector<PacketEvent> GenerateEvents(const ScenarioConfig& config,
                                        const SubgroupPartition& part,
                                        const RateMatrix& rates,
                                        const UavAssignment& assignment,
                                        GeneratorOptions options) {
  EventGenerator gen(config, part, rates, assignment, options);
  std::vector<PacketEvent> all;
  std::vector<PacketEvent> chunk;
  while (gen.NextChunk(chunk)) all.insert(all.end(), chunk.begin(), chunk.end());
  return all;
}

std::uint64_t TraceSummary::ServiceCount(Service s) const {
  const auto& row = count[Index(s)];
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

std::uint64_t TraceSummary::ServiceBytes(Service s) const {
  const auto& row = bytes[Index(s)];
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

std::uint64_t TraceSummary::TotalEvents() const {
  std::uint64_t total = 0;
  for (Service s : kAllServices) total += ServiceCount(s);
  return total;
}

TraceSummary& TraceSummary::operator+=(const TraceSummary& other) {
  for (std::size_t i = 0; i < kNumServices; ++i) {
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      count[i][j] += other.count[i][j];
      bytes[i][j] += other.bytes[i][j];
    }
  }
  return *this;
}

void TraceSummarizer::Add(const PacketEvent& e) {
  const auto svc = static_cast<unsigned>(e.service);
  const auto grp = static_cast<unsigned>(e.subgroup);
  if (svc < 1 || svc > 3 || grp < 1 || grp > 3) {
    throw MalformedEventError("event with service " + std::to_string(svc) +
                              " / subgroup " + std::to_string(grp) + " is out of range");
  }
  if (!(e.timestamp_s >= 0.0) || !std::isfinite(e.timestamp_s) ||
      (duration_s_ && !(e.timestamp_s < *duration_s_))) {
    std::ostringstream os;
    os.precision(17);
    os << "event timestamp " << e.timestamp_s << " outside the experiment window";
    throw MalformedEventError(os.str());
  }
  summary_.count[svc - 1][grp - 1] += 1;
  summary_.bytes[svc - 1][grp - 1] += e.size_bytes;
}

TraceSummary SummarizeTrace(const std::vector<PacketEvent>& events) {
  TraceSummarizer acc;
  for (const auto& e : events) acc.Add(e);
  return acc.summary();
}

TraceSummary SimulateSummary(const ScenarioConfig& config, const SubgroupPartition& part,
                             const RateMatrix& rates, const UavAssignment& assignment,
                             GeneratorOptions options) {
  CheckConsistent(config, assignment);
  const double expected = ExpectedEventCount(config, part, rates);
  if (expected > options.max_expected_events) {
    throw CapacityError("scenario expects more events than the configured cap");
  }

  const unsigned threads = std::max(1u, options.threads);
  std::vector<TraceSummary> partial(threads);
  ParallelSlices(config.n_uavs, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
    TraceSummary& acc = partial[t];
    for (std::size_t u = begin; u < end; ++u) {
      const auto uav = static_cast<std::uint32_t>(u);
      const Subgroup g = assignment.SubgroupOf(u);
      for (Service s : kAllServices) {
        const double rate = rates.lambda[Index(s)][Index(g)];
        if (!(rate > 0.0)) continue;
        struct {
          PhiloxStream rng;
          double rate;
          double next_time;
          std::uint64_t seq;
        } st{PhiloxStream(config.seed, StreamId(uav, s)), rate, 0.0, 0};
        st.next_time = st.rng.NextExponential() / rate;
        auto& count = acc.count[Index(s)][Index(g)];
        auto& bytes = acc.bytes[Index(s)][Index(g)];
        Advance(st, config.duration_s, config.sizes[Index(s)],
                [&](double, std::uint64_t, std::uint64_t size) {
                  ++count;
                  bytes += size;
                });
      }
    }
  });
  TraceSummary total;
  for (const auto& p : partial) total += p;
  return total;
}

Mat3 ExpectedSegmentCounts(const UavAssignment& assignment, double duration_s,
                           const RateMatrix& rates) {
  Mat3 out{};
  for (std::size_t i = 0; i < kNumServices; ++i) {
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      out[i][j] = static_cast<double>(assignment.counts[j]) * duration_s * rates.lambda[i][j];
    }
  }
  return out;
}

ComparisonReport CompareForecast(const TrafficForecast& forecast, const Mat3& expected_segments,
                                 const TraceSummary& summary) {
  ComparisonReport report;
  for (std::size_t i = 0; i < kNumServices; ++i) {
    for (std::size_t j = 0; j < kNumSubgroups; ++j) {
      SegmentComparison& c = report.segments[i][j];
      c.expected = expected_segments[i][j];
      c.observed = summary.count[i][j];
      const double obs = static_cast<double>(c.observed);
      if (c.expected > 0.0) {
        c.rel_err = (obs - c.expected) / c.expected;
        c.z = (obs - c.expected) / std::sqrt(c.expected);
        c.outlier = std::abs(*c.z) > kOutlierZ;
      } else {
        c.degenerate = true;
        c.outlier = c.observed > 0;
      }
      if (c.outlier) report.outliers.emplace_back(kAllServices[i], kAllSubgroups[j]);
    }

    ServiceComparison& s = report.services[i];
    s.expected_packets = forecast.packets[i];
    s.observed_packets = summary.ServiceCount(kAllServices[i]);
    s.expected_bytes = forecast.bytes[i];
    s.observed_bytes = summary.ServiceBytes(kAllServices[i]);
    const double obs_p = static_cast<double>(s.observed_packets);
    if (s.expected_packets > 0.0) {
      s.rel_err_packets = (obs_p - s.expected_packets) / s.expected_packets;
      s.z = (obs_p - s.expected_packets) / std::sqrt(s.expected_packets);
    }
    if (s.expected_bytes > 0.0) {
      s.rel_err_bytes =
          (static_cast<double>(s.observed_bytes) - s.expected_bytes) / s.expected_bytes;
    }
  }
  return report;
}

}  // namespace uavflow
