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

#ifndef UAVFLOW_TOOLS_CLI_HPP_
#define UAVFLOW_TOOLS_CLI_HPP_

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace uavflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Runs one `uavflow` invocation. args[0] is the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Set from a signal handler to end `uavflow sink` early.
std::atomic<bool>& StopFlag();

}  // namespace uavflow::cli

#endif  // UAVFLOW_TOOLS_CLI_HPP_
