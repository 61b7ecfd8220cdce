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

#ifndef PMATCH_COMBINER_HPP_
#define PMATCH_COMBINER_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmatch/instance.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// Robust combination of two online algorithms. Both are simulated on every
// request. Phase i follows A when i is odd and B when even; before serving,
// the phase advances while the followed algorithm's cost exceeds 2^i. The
// followed algorithm's server s^C_t is mapped to the combiner's server by a
// matching between S \ S^C_{t-1} and S \ S_{t-1} that pins common servers.
//
// The analysis assumes cost(OPT) >= 1; see rescale_for_combination.
class CombinationMatcher : public OnlineMatcher {
 public:
  struct Round {
    ServerId a = -1;
    ServerId b = -1;
    // 0 if A was followed, 1 if B.
    int followed = 0;
    ServerId chosen = -1;
    int phase = 1;
  };

  CombinationMatcher(std::unique_ptr<OnlineMatcher> a,
                     std::unique_ptr<OnlineMatcher> b);

  std::string name() const override;
  void attach_oracle(PredictionOracle* oracle) override;
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return book_.order();
  }
  Diagnostics diagnostics() const override;

  const std::vector<Round>& history() const { return history_; }
  double cost_a() const { return cost_[0]; }
  double cost_b() const { return cost_[1]; }
  int phase() const { return phase_; }

 private:
  std::unique_ptr<OnlineMatcher> sub_[2];
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  // Servers used by each simulated algorithm before the current round.
  std::vector<bool> used_[2];
  double cost_[2] = {0.0, 0.0};
  int phase_ = 1;
  ServerBook book_;
  std::vector<Round> history_;
};

MatcherFactory combination_factory(MatcherFactory a, MatcherFactory b);

struct Rescaled {
  Instance instance;
  // Multiplier applied to every distance; divide costs by it to unscale.
  double factor = 1.0;
  // The given optimum expressed in the rescaled metric.
  OptimalReference opt;
};

// Scales the instance so its optimum costs exactly 1. Returns nullopt when
// the optimum is zero (nothing to normalize; such instances are skipped).
std::optional<Rescaled> rescale_for_combination(const Instance& instance,
                                                const OptimalReference& opt);

}  // namespace pmatch

#endif  // PMATCH_COMBINER_HPP_
