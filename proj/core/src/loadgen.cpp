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

#include "uavflow/loadgen.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "uavflow/error.hpp"
#include "uavflow/wire.hpp"

namespace uavflow {
namespace {

using Clock = std::chrono::steady_clock;

constexpr auto kSpinThreshold = std::chrono::microseconds(300);
constexpr auto kSleepSlack = std::chrono::microseconds(150);
constexpr int kSocketBuffer = 8 << 20;

std::string Errno(const std::string& what) { return what + ": " + std::strerror(errno); }

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

struct Resolved {
  sockaddr_storage addr{};
  socklen_t len = 0;
  int family = AF_INET;
};

Resolved Resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(ep.port);
  const char* host = ep.host.empty() ? nullptr : ep.host.c_str();
  if (int rc = ::getaddrinfo(host, port.c_str(), &hints, &res); rc != 0) {
    throw IoError("cannot resolve " + ep.ToString() + ": " + ::gai_strerror(rc));
  }
  Resolved out;
  std::memcpy(&out.addr, res->ai_addr, res->ai_addrlen);
  out.len = static_cast<socklen_t>(res->ai_addrlen);
  out.family = res->ai_family;
  ::freeaddrinfo(res);
  return out;
}

double UnixNow() {
  return std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
}

struct ShardResult {
  ReplayStats stats;
  double lateness_sum = 0.0;
  std::exception_ptr error;
};

void ReplayShard(std::span<const PacketEvent> trace, std::optional<Subgroup> only,
                 const Resolved& target, const ReplayOptions& options, Clock::time_point start,
                 ShardResult& result) {
  try {
    Fd sock(::socket(target.family, SOCK_DGRAM, 0));
    if (sock.get() < 0) throw IoError(Errno("socket"));
    ::setsockopt(sock.get(), SOL_SOCKET, SO_SNDBUF, &kSocketBuffer, sizeof(kSocketBuffer));

    ReplayStats& st = result.stats;
    std::vector<std::uint8_t> buf;
    std::size_t late_run = 0;
    const wire::EncodeOptions enc{.allow_truncation = true};

    for (const PacketEvent& e : trace) {
      if (only && e.subgroup != *only) continue;
      wire::EncodeInto(e, buf, enc);

      if (!options.as_fast_as_possible) {
        const auto target_time =
            start + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(e.timestamp_s / options.speedup));
        auto now = Clock::now();
        if (target_time - now > kSpinThreshold) {
          std::this_thread::sleep_until(target_time - kSleepSlack);
          now = Clock::now();
        }
        // Yielding spin: the sink may share the core on loopback.
        while (now < target_time) {
          std::this_thread::yield();
          now = Clock::now();
        }
        const auto late = now - target_time;
        const double late_s = std::chrono::duration<double>(late).count();
        st.max_lateness_s = std::max(st.max_lateness_s, late_s);
        result.lateness_sum += late_s;
        if (late > options.max_lateness) {
          if (++late_run >= options.sustained_packets) {
            throw LatenessError("replay fell more than " +
                                std::to_string(options.max_lateness.count() / 1000) +
                                " ms behind schedule for " + std::to_string(late_run) +
                                " consecutive packets; lower the speedup");
          }
        } else {
          late_run = 0;
        }
      }

      while (true) {
        const ssize_t n = ::sendto(sock.get(), buf.data(), buf.size(), 0,
                                   reinterpret_cast<const sockaddr*>(&target.addr), target.len);
        if (n >= 0) break;
        if (errno == ENOBUFS || errno == EAGAIN || errno == EINTR) {
          std::this_thread::yield();
          continue;
        }
        throw IoError(Errno("sendto"));
      }
      const auto i = Index(e.service);
      const auto j = Index(e.subgroup);
      ++st.sent[i][j];
      st.sent_bytes[i][j] += e.size_bytes;
      ++st.total_sent;
      st.wire_bytes += buf.size();
      if (buf[4] == wire::kVersionExtended) ++st.truncated;
    }
  } catch (...) {
    result.error = std::current_exception();
  }
}

}  // namespace

Endpoint Endpoint::Parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw InputError("expected host:port, got '" + std::string(text) + "'");
  }
  std::string_view host = text.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  const std::string_view port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port > 65535) {
    throw InputError("bad port in '" + std::string(text) + "'");
  }
  return Endpoint{std::string(host), static_cast<std::uint16_t>(port)};
}

std::string Endpoint::ToString() const {
  if (host.find(':') != std::string::npos) return "[" + host + "]:" + std::to_string(port);
  return host + ":" + std::to_string(port);
}

ReplayStats ReplayTrace(std::span<const PacketEvent> trace, const Endpoint& target,
                        const ReplayOptions& options) {
  if (!options.as_fast_as_possible && !(options.speedup > 0.0 && std::isfinite(options.speedup))) {
    throw InputError("speedup must be a positive finite factor");
  }
  if (options.shards != 1 && options.shards != 3) {
    throw InputError("shards must be 1 or 3 (one sender per subgroup)");
  }
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k].timestamp_s < trace[k - 1].timestamp_s) {
      throw InputError("trace is not sorted by timestamp at event " + std::to_string(k));
    }
  }
  if (trace.empty()) return {};

  const Resolved addr = Resolve(target, false);
  const auto start = Clock::now();
  std::vector<ShardResult> results(options.shards);
  if (options.shards == 1) {
    ReplayShard(trace, std::nullopt, addr, options, start, results[0]);
  } else {
    std::vector<std::jthread> senders;
    for (unsigned s = 0; s < options.shards; ++s) {
      senders.emplace_back([&, s] {
        ReplayShard(trace, kAllSubgroups[s], addr, options, start, results[s]);
      });
    }
  }

  ReplayStats total;
  double lateness_sum = 0.0;
  for (auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        total.sent[i][j] += r.stats.sent[i][j];
        total.sent_bytes[i][j] += r.stats.sent_bytes[i][j];
      }
    }
    total.total_sent += r.stats.total_sent;
    total.wire_bytes += r.stats.wire_bytes;
    total.truncated += r.stats.truncated;
    total.max_lateness_s = std::max(total.max_lateness_s, r.stats.max_lateness_s);
    lateness_sum += r.lateness_sum;
  }
  if (total.total_sent > 0) total.mean_lateness_s = lateness_sum / static_cast<double>(total.total_sent);
  total.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
  return total;
}

Sink::Sink(const Endpoint& bind) {
  const Resolved addr = Resolve(bind, true);
  Fd sock(::socket(addr.family, SOCK_DGRAM, 0));
  if (sock.get() < 0) throw IoError(Errno("socket"));
  ::setsockopt(sock.get(), SOL_SOCKET, SO_RCVBUF, &kSocketBuffer, sizeof(kSocketBuffer));
  if (::bind(sock.get(), reinterpret_cast<const sockaddr*>(&addr.addr), addr.len) != 0) {
    throw IoError(Errno("bind " + bind.ToString()));
  }
  sockaddr_storage local{};
  socklen_t len = sizeof(local);
  if (::getsockname(sock.get(), reinterpret_cast<sockaddr*>(&local), &len) != 0) {
    throw IoError(Errno("getsockname"));
  }
  port_ = local.ss_family == AF_INET6
              ? ntohs(reinterpret_cast<const sockaddr_in6*>(&local)->sin6_port)
              : ntohs(reinterpret_cast<const sockaddr_in*>(&local)->sin_port);
  fd_ = sock.release();
}

Sink::~Sink() {
  if (fd_ >= 0) ::close(fd_);
}

SinkReport Sink::Run(std::chrono::duration<double> duration, const std::atomic<bool>* stop) {
  struct StreamSeen {
    std::uint64_t max_seq = 0;
    std::uint64_t received = 0;
  };
  std::unordered_map<std::uint64_t, StreamSeen> streams;
  SinkReport report;
  std::vector<std::uint8_t> buf(65536);

  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(duration);
  while (true) {
    if (stop != nullptr && stop->load(std::memory_order_relaxed)) break;
    const auto now = Clock::now();
    if (now >= deadline) break;
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd pfd{fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(std::clamp<long long>(remaining, 1, 50)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw IoError(Errno("poll"));
    }
    if (rc == 0) continue;

    // Drain everything queued before polling again.
    while (true) {
      const ssize_t n = ::recv(fd_, buf.data(), buf.size(), MSG_DONTWAIT);
      if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) break;
        throw IoError(Errno("recv"));
      }
      const double arrival = UnixNow();
      if (!report.first_arrival_unix_s) report.first_arrival_unix_s = arrival;
      report.last_arrival_unix_s = arrival;
      report.wire_bytes += static_cast<std::uint64_t>(n);

      wire::WirePacket pkt;
      try {
        pkt = wire::DecodeHeader(std::span<const std::uint8_t>(buf.data(), static_cast<std::size_t>(n)));
      } catch (const DecodeError&) {
        ++report.malformed;
        continue;
      }
      const auto i = Index(pkt.service);
      const auto j = Index(pkt.subgroup);
      ++report.received[i][j];
      report.bytes[i][j] += pkt.size_bytes;
      ++report.total_received;
      if (expected_ && expected_->SubgroupOf(pkt.uav_id) != pkt.subgroup) ++report.misattributed;

      auto& seen = streams[(std::uint64_t{pkt.uav_id} << 8) | static_cast<std::uint64_t>(pkt.service)];
      seen.max_seq = std::max(seen.max_seq, pkt.seq);
      ++seen.received;
    }
  }
  for (const auto& [key, seen] : streams) {
    const std::uint64_t span = seen.max_seq + 1;
    if (span > seen.received) report.gaps += span - seen.received;
  }
  return report;
}

SinkReport RunSink(const Endpoint& bind, double duration_s, const std::atomic<bool>* stop) {
  Sink sink(bind);
  return sink.Run(std::chrono::duration<double>(duration_s), stop);
}

namespace {

nlohmann::ordered_json Matrix(const CountMatrix& m) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : m) out.push_back({row[0], row[1], row[2]});
  return out;
}

}  // namespace

std::string SinkReportToJson(const SinkReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = "sink_report";
  j["received"] = Matrix(r.received);
  j["bytes"] = Matrix(r.bytes);
  j["total_received"] = r.total_received;
  j["wire_bytes"] = r.wire_bytes;
  j["malformed"] = r.malformed;
  j["misattributed"] = r.misattributed;
  j["gaps"] = r.gaps;
  j["first_arrival_unix_s"] = r.first_arrival_unix_s ? nlohmann::ordered_json(*r.first_arrival_unix_s)
                                                     : nlohmann::ordered_json(nullptr);
  j["last_arrival_unix_s"] = r.last_arrival_unix_s ? nlohmann::ordered_json(*r.last_arrival_unix_s)
                                                   : nlohmann::ordered_json(nullptr);
  return j.dump(2) + "\n";
}

std::string ReplayStatsToJson(const ReplayStats& s) {
  nlohmann::ordered_json j;
  j["kind"] = "replay_stats";
  j["sent"] = Matrix(s.sent);
  j["sent_bytes"] = Matrix(s.sent_bytes);
  j["total_sent"] = s.total_sent;
  j["wire_bytes"] = s.wire_bytes;
  j["truncated"] = s.truncated;
  j["max_lateness_s"] = s.max_lateness_s;
  j["mean_lateness_s"] = s.mean_lateness_s;
  j["elapsed_s"] = s.elapsed_s;
  return j.dump(2) + "\n";
}

}  // namespace uavflow
