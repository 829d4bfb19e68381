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

#include "uavflow/wire.hpp"

#include <algorithm>
#include <cmath>

#include "uavflow/error.hpp"

namespace uavflow::wire {
namespace {

template <typename T>
void PutBig(std::uint8_t* p, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    p[i] = static_cast<std::uint8_t>(v >> (8 * (sizeof(T) - 1 - i)));
  }
}

template <typename T>
T GetBig(const std::uint8_t* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | p[i]);
  return v;
}

}  // namespace

PacketEvent WirePacket::ToEvent() const {
  PacketEvent e;
  e.timestamp_s = static_cast<double>(timestamp_us) / 1e6;
  e.uav_id = uav_id;
  e.subgroup = subgroup;
  e.service = service;
  e.seq = seq;
  e.size_bytes = size_bytes;
  return e;
}

std::uint64_t ToMicros(double seconds) {
  if (!(seconds >= 0.0)) return 0;
  return static_cast<std::uint64_t>(std::llround(seconds * 1e6));
}

void EncodeInto(const PacketEvent& e, std::vector<std::uint8_t>& out, EncodeOptions options) {
  const bool fits = e.size_bytes >= kHeaderSize && e.size_bytes <= kMaxDatagram;
  if (e.size_bytes > kMaxDatagram && !options.allow_truncation) {
    throw EncodeError("event of " + std::to_string(e.size_bytes) +
                      " bytes exceeds one UDP datagram (" + std::to_string(kMaxDatagram) +
                      "); fragmentation is not supported, allow truncation instead");
  }
  const std::uint32_t payload_len = fits ? static_cast<std::uint32_t>(e.size_bytes - kHeaderSize) : 0;
  const std::size_t total = fits ? e.size_bytes : kHeaderSize + kExtensionSize;

  out.assign(total, 0);
  std::uint8_t* p = out.data();
  std::copy(kMagic.begin(), kMagic.end(), p);
  p[4] = fits ? kVersion : kVersionExtended;
  PutBig<std::uint32_t>(p + 5, e.uav_id);
  p[9] = static_cast<std::uint8_t>(e.service);
  p[10] = static_cast<std::uint8_t>(e.subgroup);
  PutBig<std::uint64_t>(p + 11, e.seq);
  PutBig<std::uint64_t>(p + 19, ToMicros(e.timestamp_s));
  PutBig<std::uint32_t>(p + 27, payload_len);
  if (!fits) PutBig<std::uint64_t>(p + kHeaderSize, e.size_bytes);
}

std::vector<std::uint8_t> EncodePacket(const PacketEvent& e, EncodeOptions options) {
  std::vector<std::uint8_t> out;
  EncodeInto(e, out, options);
  return out;
}

WirePacket DecodeHeader(std::span<const std::uint8_t> d) {
  if (d.size() < kHeaderSize) {
    throw DecodeError("datagram of " + std::to_string(d.size()) + " bytes is shorter than the header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), d.begin())) throw DecodeError("bad magic");
  WirePacket w;
  w.version = d[4];
  if (w.version != kVersion && w.version != kVersionExtended) {
    throw DecodeError("unsupported version " + std::to_string(w.version));
  }
  w.uav_id = GetBig<std::uint32_t>(&d[5]);
  const std::uint8_t svc = d[9];
  const std::uint8_t grp = d[10];
  if (svc < 1 || svc > 3) throw DecodeError("bad service code " + std::to_string(svc));
  if (grp < 1 || grp > 3) throw DecodeError("bad subgroup code " + std::to_string(grp));
  w.service = static_cast<Service>(svc);
  w.subgroup = static_cast<Subgroup>(grp);
  w.seq = GetBig<std::uint64_t>(&d[11]);
  w.timestamp_us = GetBig<std::uint64_t>(&d[19]);
  w.payload_len = GetBig<std::uint32_t>(&d[27]);

  const std::size_t fixed = w.extended() ? kHeaderSize + kExtensionSize : kHeaderSize;
  if (d.size() < fixed || d.size() - fixed != w.payload_len) {
    throw DecodeError("length mismatch: datagram has " + std::to_string(d.size()) +
                      " bytes, header announces " + std::to_string(fixed + w.payload_len));
  }
  w.size_bytes = w.extended() ? GetBig<std::uint64_t>(&d[kHeaderSize]) : d.size();
  return w;
}

PacketEvent DecodePacket(std::span<const std::uint8_t> datagram) {
  return DecodeHeader(datagram).ToEvent();
}

}  // namespace uavflow::wire
