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

// UDP trace replay and the matching receive-side sink.

#ifndef UAVFLOW_LOADGEN_HPP_
#define UAVFLOW_LOADGEN_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "uavflow/simulator.hpp"

namespace uavflow {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  /// "host:port" or "[v6addr]:port". Throws InputError.
  static Endpoint Parse(std::string_view text);
  std::string ToString() const;
};

struct ReplayOptions {
  double speedup = 1.0;
  bool as_fast_as_possible = false;
  /// Abort once this many consecutive packets go out later than
  /// `max_lateness`.
  std::chrono::microseconds max_lateness{100'000};
  std::size_t sustained_packets = 64;
  /// 1 sends everything from one thread; 3 uses one sender per subgroup.
  unsigned shards = 1;
};

struct ReplayStats {
  CountMatrix sent{};  // [service][subgroup]
  CountMatrix sent_bytes{};  // true event sizes
  std::uint64_t total_sent = 0;
  std::uint64_t wire_bytes = 0;
  std::uint64_t truncated = 0;  // sent in extended form
  double max_lateness_s = 0.0;
  double mean_lateness_s = 0.0;
  double elapsed_s = 0.0;
};

/// Sends each event at start + timestamp / speedup. `trace` must be sorted
/// by timestamp. Throws InputError on bad options, IoError on socket
/// failures and LatenessError when pacing cannot be kept.
ReplayStats ReplayTrace(std::span<const PacketEvent> trace, const Endpoint& target,
                        const ReplayOptions& options = {});

struct SinkReport {
  CountMatrix received{};
  CountMatrix bytes{};  // true event sizes
  std::uint64_t total_received = 0;
  std::uint64_t wire_bytes = 0;
  std::uint64_t malformed = 0;
  /// Packets whose subgroup disagrees with the expected assignment.
  std::uint64_t misattributed = 0;
  /// Sum over (uav, service) of (max seq + 1) - received.
  std::uint64_t gaps = 0;
  std::optional<double> first_arrival_unix_s;
  std::optional<double> last_arrival_unix_s;
};

std::string SinkReportToJson(const SinkReport& report);
std::string ReplayStatsToJson(const ReplayStats& stats);

class Sink {
 public:
  /// Binds immediately; port 0 picks an ephemeral port. Throws IoError.
  explicit Sink(const Endpoint& bind);
  ~Sink();
  Sink(const Sink&) = delete;
  Sink& operator=(const Sink&) = delete;

  std::uint16_t port() const { return port_; }

  /// When set, every packet's subgroup is checked against it.
  void ExpectAssignment(const UavAssignment& assignment) { expected_ = assignment; }

  /// Receives until `duration` elapses or `*stop` becomes true.
  SinkReport Run(std::chrono::duration<double> duration, const std::atomic<bool>* stop = nullptr);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
  std::optional<UavAssignment> expected_;
};

SinkReport RunSink(const Endpoint& bind, double duration_s, const std::atomic<bool>* stop = nullptr);

}  // namespace uavflow

#endif  // UAVFLOW_LOADGEN_HPP_
