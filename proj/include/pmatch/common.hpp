// Copyright 2026 The pmatch Authors
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

#ifndef PMATCH_COMMON_HPP_
#define PMATCH_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pmatch {

// Index of a point in a MetricSpace.
using PointId = std::int32_t;
// Index of a server within an instance's server list.
using ServerId = std::int32_t;

inline constexpr double kTolerance = 1e-9;

// Caller violated a precondition (bad index, size mismatch, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An online matcher broke its contract (reused server, exceeded budget, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// All pairwise distances are zero where a nonzero scale is required.
class DegenerateMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the offending row.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input data cannot produce a valid instance.
class DataInsufficiency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmatch

#endif  // PMATCH_COMMON_HPP_
