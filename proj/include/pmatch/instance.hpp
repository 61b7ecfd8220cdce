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

#ifndef PMATCH_INSTANCE_HPP_
#define PMATCH_INSTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pmatch/assignment.hpp"
#include "pmatch/common.hpp"
#include "pmatch/metric.hpp"

namespace pmatch {

// n servers and an ordered sequence of n requests in a shared metric.
struct Instance {
  std::shared_ptr<const MetricSpace> space;
  // Point of each server; ServerId indexes this list.
  std::vector<PointId> servers;
  // Request points in arrival order.
  std::vector<PointId> requests;
  std::string label;
  std::uint64_t seed = 0;

  std::size_t n() const { return servers.size(); }
  // Throws UsageError unless |servers| = |requests| >= 1 and indices valid.
  void validate() const;
};

// One optimal perfect matching fixed for the lifetime of an instance, with
// the prefix server sets it induces.
struct OptimalReference {
  // server_of_request[t] is the server matched to request t (0-based round).
  std::vector<ServerId> server_of_request;
  double cost = 0.0;

  // O_t: servers matched to the first t requests, ascending.
  std::vector<ServerId> prefix(std::size_t t) const;
};

OptimalReference offline_opt(const Instance& instance);

// Same instance with every distance multiplied by factor.
Instance rescaled(const Instance& instance, double factor);

}  // namespace pmatch

#endif  // PMATCH_INSTANCE_HPP_
