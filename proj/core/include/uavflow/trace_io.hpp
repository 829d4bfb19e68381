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

// Trace files: a header line followed by one event per line,
//
//     timestamp_s,uav_id,subgroup,service,seq,size_bytes
//
// with subgroup and service as their 1-based codes. Timestamps are written
// in shortest round-trip form. Paths ending in ".gz" are gzip-compressed;
// the reader accepts either form regardless of extension.

#ifndef UAVFLOW_TRACE_IO_HPP_
#define UAVFLOW_TRACE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "uavflow/simulator.hpp"

namespace uavflow {

inline constexpr std::string_view kTraceHeader =
    "timestamp_s,uav_id,subgroup,service,seq,size_bytes";

/// One CSV record without the trailing newline.
std::string FormatTraceLine(const PacketEvent& e);
/// Throws ParseError on anything but a well-formed record.
PacketEvent ParseTraceLine(std::string_view line, std::size_t line_number = 0);

class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  ~TraceWriter();
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;

  void Write(const PacketEvent& e);
  /// Flushes and closes; throws IoError on failure. Called by the destructor
  /// if needed, which swallows errors.
  void Close();

  std::uint64_t events_written() const { return written_; }

 private:
  void Put(std::string_view text);

  void* file_ = nullptr;  // gzFile
  std::string buffer_;
  std::uint64_t written_ = 0;
};

class TraceReader {
 public:
  /// Opens the file and checks the header line.
  explicit TraceReader(const std::filesystem::path& path);
  ~TraceReader();
  TraceReader(const TraceReader&) = delete;
  TraceReader& operator=(const TraceReader&) = delete;

  /// Reads the next event; false at end of file.
  bool Next(PacketEvent& out);

 private:
  bool ReadLine(std::string& line);

  void* file_ = nullptr;  // gzFile
  std::size_t line_number_ = 0;
};

}  // namespace uavflow

#endif  // UAVFLOW_TRACE_IO_HPP_
