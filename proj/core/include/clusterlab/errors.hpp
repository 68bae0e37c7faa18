// Copyright 2026 The clusterlab Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace clusterlab {

// Precondition violated by the caller: bad dimension, label out of range,
// malformed operator, and so on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A projective measurement outcome with (numerically) zero probability.
class ImpossibleOutcome : public std::runtime_error {
 public:
  explicit ImpossibleOutcome(double probability)
      : std::runtime_error(
            "impossible measurement outcome (probability " +
            std::to_string(probability) + ")"),
        probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

// Some operator terms cannot be estimated from the available measurement
// settings. `missing_settings()` lists settings that would cover them.
class PlanningError : public std::runtime_error {
 public:
  PlanningError(const std::string& what, std::vector<std::string> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing_settings() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

// A count record with zero total events.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input (state JSON, count CSV, efficiency table).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clusterlab
