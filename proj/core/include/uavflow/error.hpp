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

#ifndef UAVFLOW_ERROR_HPP_
#define UAVFLOW_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace uavflow {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input to the model or to configuration: the caller can fix it.
/// The CLI maps this family to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a closed form.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Pareto shapes and thresholds that would yield a negative population
/// fraction.
class InfeasiblePartitionError : public InputError {
 public:
  using InputError::InputError;
};

/// A zero population fraction or share that the rate derivation divides by.
class DegenerateSegmentError : public InputError {
 public:
  using InputError::InputError;
};

/// A service with zero aggregate rate.
class DegenerateServiceError : public InputError {
 public:
  using InputError::InputError;
};

/// Syntax error in a document, located by line and field.
class ParseError : public InputError {
 public:
  ParseError(std::string message, std::size_t line, std::string field)
      : InputError(Format(message, line, field)),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "parse error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " (field " + field + ")";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

/// One or more invariant violations, all reported together.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : InputError(Join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string Join(const std::vector<std::string>& issues) {
    std::string out = "validation failed:";
    for (const auto& issue : issues) out += "\n  - " + issue;
    return out;
  }

  std::vector<std::string> issues_;
};

/// A summary or report produced from a different scenario.
class DigestMismatchError : public InputError {
 public:
  using InputError::InputError;
};

/// Expected work exceeds the configured safety cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class MalformedEventError : public Error {
 public:
  using Error::Error;
};

class EncodeError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The replayer fell behind schedule for longer than allowed.
class LatenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavflow

#endif  // UAVFLOW_ERROR_HPP_
