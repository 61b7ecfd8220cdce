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

#include "pmatch/predictions.hpp"

#include <algorithm>
#include <string>

#include "pmatch/assignment.hpp"

namespace pmatch {

void validate_prediction(const Prediction& p, std::size_t t, std::size_t n) {
  if (p.servers.size() != t)
    throw UsageError("prediction for round " + std::to_string(t) + " has " +
                     std::to_string(p.servers.size()) + " servers");
  std::vector<ServerId> sorted = p.servers;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("prediction repeats a server");
  for (ServerId s : sorted)
    if (s < 0 || static_cast<std::size_t>(s) >= n)
      throw UsageError("prediction names an unknown server");
}

PerfectOracle::PerfectOracle(std::shared_ptr<const OptimalReference> opt)
    : opt_(std::move(opt)) {}

Prediction PerfectOracle::query(std::size_t t) {
  if (t < 1 || t > opt_->server_of_request.size())
    throw UsageError("perfect_query: round out of range");
  return {t, opt_->prefix(t)};
}

NoisyOracle::NoisyOracle(const Instance& instance,
                         std::shared_ptr<const OptimalReference> opt,
                         double radius, RngStream rng)
    : space_(instance.space),
      servers_(instance.servers),
      opt_(std::move(opt)),
      radius_(radius),
      rng_(rng) {
  if (!(radius >= 0.0)) throw UsageError("noisy oracle: negative radius");
  const std::size_t n = servers_.size();
  within_.resize(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t q = 0; q < n; ++q)
      if (space_->distance(servers_[s], servers_[q]) <= radius_)
        within_[s].push_back(static_cast<ServerId>(q));
  memo_.resize(n + 1);
}

Prediction NoisyOracle::query(std::size_t t) {
  const std::size_t n = servers_.size();
  if (t < 1 || t > n) throw UsageError("noisy_query: round out of range");
  if (memo_[t]) return *memo_[t];

  RngStream draw = rng_.split(static_cast<std::uint64_t>(t));
  std::vector<PointId> drawn;
  drawn.reserve(t);
  for (ServerId s : opt_->prefix(t)) {
    const auto& cand = within_[s];
    drawn.push_back(servers_[cand[draw.uniform_index(cand.size())]]);
  }
  const Matching m =
      solve_left_saturating(distance_matrix(*space_, drawn, servers_));
  Prediction p{t, {}};
  p.servers.reserve(t);
  for (const auto& [row, col] : m.pairs) p.servers.push_back(col);
  std::sort(p.servers.begin(), p.servers.end());
  memo_[t] = p;
  return p;
}

double prediction_error(const Instance& instance, const OptimalReference& opt,
                        const Prediction& p) {
  validate_prediction(p, p.round, instance.n());
  std::vector<PointId> predicted, actual;
  for (ServerId s : p.servers) predicted.push_back(instance.servers[s]);
  for (ServerId s : opt.prefix(p.round)) actual.push_back(instance.servers[s]);
  // Pinning the common part first leaves the value unchanged and keeps the
  // residual assignment small.
  return constrained_identity_matching(*instance.space,
                                       Configuration(std::move(predicted)),
                                       Configuration(std::move(actual)))
      .cost;
}

}  // namespace pmatch
