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

// UDP datagram layout for replayed trace events. All integers big-endian.
//
//   offset  size  field
//        0     4  magic "UAVF"
//        4     1  version (0x01 plain, 0x81 with size extension)
//        5     4  uav_id
//        9     1  service code (1..3)
//       10     1  subgroup code (1..3)
//       11     8  seq
//       19     8  timestamp_us
//       27     4  payload_len
//       31     8  true size in bytes (extended datagrams only)
//   31 or 39     payload_len zero bytes
//
// A plain datagram is exactly `size` bytes long. Events that cannot be
// represented that way (smaller than the header, or larger than one UDP
// datagram when truncation is allowed) use the extended form, which carries
// the true size and no payload.

#ifndef UAVFLOW_WIRE_HPP_
#define UAVFLOW_WIRE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavflow/simulator.hpp"

namespace uavflow::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'U', 'A', 'V', 'F'};
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::uint8_t kVersionExtended = 0x81;
inline constexpr std::size_t kHeaderSize = 31;
inline constexpr std::size_t kExtensionSize = 8;
inline constexpr std::size_t kMaxDatagram = 65507;

struct EncodeOptions {
  /// Send oversized events as a header-only extended datagram instead of
  /// failing.
  bool allow_truncation = false;
};

struct WirePacket {
  std::uint8_t version = kVersion;
  std::uint32_t uav_id = 0;
  Service service = Service::kTelemetry;
  Subgroup subgroup = Subgroup::kPoor;
  std::uint64_t seq = 0;
  std::uint64_t timestamp_us = 0;
  std::uint32_t payload_len = 0;
  std::uint64_t size_bytes = 0;  // true event size

  bool extended() const { return version == kVersionExtended; }
  PacketEvent ToEvent() const;
};

std::uint64_t ToMicros(double seconds);

/// Appends the datagram for `e` to `out` (cleared first). Throws EncodeError
/// when the event exceeds one datagram and truncation is not allowed.
void EncodeInto(const PacketEvent& e, std::vector<std::uint8_t>& out, EncodeOptions options = {});
std::vector<std::uint8_t> EncodePacket(const PacketEvent& e, EncodeOptions options = {});

/// Throws DecodeError on bad magic, unknown version, bad codes or a length
/// that disagrees with the header.
WirePacket DecodeHeader(std::span<const std::uint8_t> datagram);
PacketEvent DecodePacket(std::span<const std::uint8_t> datagram);

}  // namespace uavflow::wire

#endif  // UAVFLOW_WIRE_HPP_
