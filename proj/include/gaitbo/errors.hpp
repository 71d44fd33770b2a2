// Copyright 2026 The gaitbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAITBO_ERRORS_HPP_
#define GAITBO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gaitbo {

// Failure categories. The C API maps each one onto a gb_status code.
enum class ErrorKind {
  kInvalidArgument,
  kRange,
  kConfig,
  kNumerical,
  kSimulation,
  kSafeSet,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::kRange, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

// Raised when a plant step produces a non-finite state.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, int step)
      : Error(ErrorKind::kSimulation, what + " (step " + std::to_string(step) + ")"),
        step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

class SafeSetError : public Error {
 public:
  explicit SafeSetError(const std::string& what) : Error(ErrorKind::kSafeSet, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace gaitbo

#endif  // GAITBO_ERRORS_HPP_
