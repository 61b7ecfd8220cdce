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

#include "pmatch/combiner.hpp"

#include <cmath>

#include "pmatch/assignment.hpp"

namespace pmatch {

CombinationMatcher::CombinationMatcher(std::unique_ptr<OnlineMatcher> a,
                                       std::unique_ptr<OnlineMatcher> b) {
  if (!a || !b) throw UsageError("combination: missing sub-algorithm");
  sub_[0] = std::move(a);
  sub_[1] = std::move(b);
}

std::string CombinationMatcher::name() const {
  return "comb(" + sub_[0]->name() + "," + sub_[1]->name() + ")";
}

void CombinationMatcher::attach_oracle(PredictionOracle* oracle) {
  sub_[0]->attach_oracle(oracle);
  sub_[1]->attach_oracle(oracle);
}

void CombinationMatcher::init(std::shared_ptr<const MetricSpace> space,
                              std::vector<PointId> servers, RngStream rng) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  sub_[0]->init(space_, servers_, rng.split("a"));
  sub_[1]->init(space_, servers_, rng.split("b"));
  for (auto& u : used_) u.assign(servers_.size(), false);
  cost_[0] = cost_[1] = 0.0;
  phase_ = 1;
  book_.reset(servers_.size());
  history_.clear();
}

ServerId CombinationMatcher::serve(PointId request) {
  Round round;
  ServerId picked[2];
  for (int i = 0; i < 2; ++i) {
    picked[i] = sub_[i]->serve(request);
    if (picked[i] < 0 || static_cast<std::size_t>(picked[i]) >= servers_.size() ||
        used_[i][picked[i]])
      throw ContractViolation("combination: " + sub_[i]->name() +
                              " returned an invalid server");
    cost_[i] += space_->distance(servers_[picked[i]], request);
  }
  round.a = picked[0];
  round.b = picked[1];

  int c = phase_ % 2 == 1 ? 0 : 1;
  while (cost_[c] > std::ldexp(1.0, phase_)) {
    ++phase_;
    c = phase_ % 2 == 1 ? 0 : 1;
  }
  round.followed = c;
  round.phase = phase_;

  const ServerId target = picked[c];
  ServerId chosen = target;
  if (book_.taken(target)) {
    std::vector<MatchItem> left, right;
    for (std::size_t s = 0; s < servers_.size(); ++s) {
      const auto id = static_cast<ServerId>(s);
      if (!used_[c][s]) left.push_back({id, servers_[s]});
      if (!book_.taken(id)) right.push_back({id, servers_[s]});
    }
    const Matching mu = constrained_identity_matching(*space_, left, right);
    int slot = -1;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (left[i].key == target) slot = static_cast<int>(i);
    chosen = static_cast<ServerId>(right[mu.right_of(slot)].key);
  }
  round.chosen = chosen;

  used_[0][picked[0]] = true;
  used_[1][picked[1]] = true;
  book_.take(chosen);
  history_.push_back(round);
  return chosen;
}

Diagnostics CombinationMatcher::diagnostics() const {
  return {{"cost_a", cost_[0]},
          {"cost_b", cost_[1]},
          {"final_phase", static_cast<double>(phase_)}};
}

MatcherFactory combination_factory(MatcherFactory a, MatcherFactory b) {
  return [a = std::move(a), b = std::move(b)]() -> std::unique_ptr<OnlineMatcher> {
    return std::make_unique<CombinationMatcher>(a(), b());
  };
}

std::optional<Rescaled> rescale_for_combination(const Instance& instance,
                                                const OptimalReference& opt) {
  if (!(opt.cost > 0.0)) return std::nullopt;
  Rescaled out;
  out.factor = 1.0 / opt.cost;
  out.instance = rescaled(instance, out.factor);
  out.opt = opt;
  out.opt.cost = 1.0;
  return out;
}

}  // namespace pmatch
