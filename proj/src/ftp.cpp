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

#include "pmatch/ftp.hpp"

#include <algorithm>

#include "pmatch/assignment.hpp"

namespace pmatch {

void FtpCore::reset(std::shared_ptr<const MetricSpace> space,
                    std::vector<PointId> servers) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  previous_.clear();
  in_previous_.assign(servers_.size(), false);
  matched_flag_.assign(servers_.size(), false);
  order_.clear();
  last_target_ = -1;
  movement_ = 0.0;
}

ServerId FtpCore::step(PointId request,
                       const std::vector<ServerId>& prediction) {
  const std::size_t n = servers_.size();
  const std::size_t t = order_.size() + 1;
  if (t > n) throw UsageError("ftp: all servers already matched");
  Prediction p{t, prediction};
  std::sort(p.servers.begin(), p.servers.end());
  validate_prediction(p, t, n);

  // Servers are keyed by id; the request gets a key no server can have.
  std::vector<MatchItem> left, right;
  left.reserve(t);
  right.reserve(t);
  for (ServerId s : p.servers) left.push_back({s, servers_[s]});
  for (ServerId s : previous_) right.push_back({s, servers_[s]});
  right.push_back({-1, request});
  const Matching mu1 = constrained_identity_matching(*space_, left, right);
  movement_ += mu1.cost;
  const int request_slot = static_cast<int>(right.size()) - 1;
  const ServerId target = p.servers[mu1.left_of(request_slot)];
  last_target_ = target;

  ServerId chosen = target;
  if (matched_flag_[target]) {
    left.clear();
    right.clear();
    for (std::size_t s = 0; s < n; ++s) {
      const auto id = static_cast<ServerId>(s);
      if (!in_previous_[s]) left.push_back({id, servers_[s]});
      if (!matched_flag_[s]) right.push_back({id, servers_[s]});
    }
    const Matching mu2 = constrained_identity_matching(*space_, left, right);
    int slot = -1;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (left[i].key == target) slot = static_cast<int>(i);
    chosen = static_cast<ServerId>(right[mu2.right_of(slot)].key);
  }

  matched_flag_[chosen] = true;
  order_.push_back(chosen);
  std::fill(in_previous_.begin(), in_previous_.end(), false);
  for (ServerId s : p.servers) in_previous_[s] = true;
  previous_ = std::move(p.servers);
  return chosen;
}

void FtpMatcher::init(std::shared_ptr<const MetricSpace> space,
                      std::vector<PointId> servers, RngStream /*rng*/) {
  if (oracle_ == nullptr) throw UsageError("ftp: no prediction oracle");
  core_.reset(std::move(space), std::move(servers));
}

ServerId FtpMatcher::serve(PointId request) {
  const Prediction p = oracle_->query(core_.round() + 1);
  return core_.step(request, p.servers);
}

Diagnostics FtpMatcher::diagnostics() const {
  return {{"prediction_movement", core_.prediction_movement()}};
}

}  // namespace pmatch
