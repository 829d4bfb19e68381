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

#include "uavflow/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstring>

#include <zlib.h>

#include "uavflow/error.hpp"

namespace uavflow {
namespace {

constexpr std::size_t kWriteBuffer = 1 << 16;

gzFile AsGz(void* p) { return static_cast<gzFile>(p); }

bool IsGzipPath(const std::filesystem::path& path) { return path.extension() == ".gz"; }

template <typename T>
T ParseField(std::string_view text, const char* name, std::size_t line) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("bad value '" + std::string(text) + "'", line, name);
  }
  return value;
}

}  // namespace

std::string FormatTraceLine(const PacketEvent& e) {
  std::string out;
  out.reserve(64);
  std::array<char, 32> buf;
  auto append = [&](auto value) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    out.append(buf.data(), res.ptr);
  };
  append(e.timestamp_s);
  out += ',';
  append(e.uav_id);
  out += ',';
  append(static_cast<unsigned>(e.subgroup));
  out += ',';
  append(static_cast<unsigned>(e.service));
  out += ',';
  append(e.seq);
  out += ',';
  append(e.size_bytes);
  return out;
}

PacketEvent ParseTraceLine(std::string_view line, std::size_t line_number) {
  std::array<std::string_view, 6> fields;
  std::size_t n = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (n == fields.size()) {
      throw ParseError("too many fields", line_number, "");
    }
    fields[n++] = line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != fields.size()) throw ParseError("expected 6 fields", line_number, "");

  PacketEvent e;
  e.timestamp_s = ParseField<double>(fields[0], "timestamp_s", line_number);
  e.uav_id = ParseField<std::uint32_t>(fields[1], "uav_id", line_number);
  const auto subgroup = ParseField<unsigned>(fields[2], "subgroup", line_number);
  const auto service = ParseField<unsigned>(fields[3], "service", line_number);
  if (subgroup < 1 || subgroup > 3) throw ParseError("out of range", line_number, "subgroup");
  if (service < 1 || service > 3) throw ParseError("out of range", line_number, "service");
  e.subgroup = static_cast<Subgroup>(subgroup);
  e.service = static_cast<Service>(service);
  e.seq = ParseField<std::uint64_t>(fields[4], "seq", line_number);
  e.size_bytes = ParseField<std::uint64_t>(fields[5], "size_bytes", line_number);
  return e;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) {
  // "T" writes plain bytes through the same gz interface.
  const char* mode = IsGzipPath(path) ? "wb6" : "wbT";
  file_ = gzopen(path.c_str(), mode);
  if (file_ == nullptr) throw IoError("cannot open trace for writing: " + path.string());
  buffer_.reserve(kWriteBuffer + 256);
  buffer_.append(kTraceHeader);
  buffer_.push_back('\n');
}

TraceWriter::~TraceWriter() {
  try {
    Close();
  } catch (...) {
  }
}

void TraceWriter::Put(std::string_view text) {
  if (gzwrite(AsGz(file_), text.data(), static_cast<unsigned>(text.size())) !=
      static_cast<int>(text.size())) {
    throw IoError("trace write failed");
  }
}

void TraceWriter::Write(const PacketEvent& e) {
  buffer_.append(FormatTraceLine(e));
  buffer_.push_back('\n');
  ++written_;
  if (buffer_.size() >= kWriteBuffer) {
    Put(buffer_);
    buffer_.clear();
  }
}

void TraceWriter::Close() {
  if (file_ == nullptr) return;
  gzFile f = AsGz(file_);
  file_ = nullptr;
  bool ok = true;
  if (!buffer_.empty()) {
    ok = gzwrite(f, buffer_.data(), static_cast<unsigned>(buffer_.size())) ==
         static_cast<int>(buffer_.size());
    buffer_.clear();
  }
  ok = (gzclose(f) == Z_OK) && ok;
  if (!ok) throw IoError("trace close failed");
}

TraceReader::TraceReader(const std::filesystem::path& path) {
  file_ = gzopen(path.c_str(), "rb");
  if (file_ == nullptr) throw IoError("cannot open trace: " + path.string());
  gzbuffer(AsGz(file_), 1 << 16);
  std::string header;
  if (!ReadLine(header) || header != kTraceHeader) {
    gzclose(AsGz(file_));
    file_ = nullptr;
    throw ParseError("missing or unexpected trace header", 1, "");
  }
}

TraceReader::~TraceReader() {
  if (file_ != nullptr) gzclose(AsGz(file_));
}

bool TraceReader::ReadLine(std::string& line) {
  line.clear();
  std::array<char, 256> buf;
  while (gzgets(AsGz(file_), buf.data(), static_cast<int>(buf.size())) != nullptr) {
    line.append(buf.data());
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++line_number_;
      return true;
    }
  }
  if (!line.empty()) {
    ++line_number_;
    return true;
  }
  return false;
}

bool TraceReader::Next(PacketEvent& out) {
  std::string line;
  while (ReadLine(line)) {
    if (line.empty()) continue;
    out = ParseTraceLine(line, line_number_);
    return true;
  }
  return false;
}

}  // namespace uavflow
