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

#ifndef PMATCH_BBGN_HPP_
#define PMATCH_BBGN_HPP_

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmatch/hst.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// A 2-HST standing in for (part of) a metric space. Embedded points are
// leaves; other points are snapped to the nearest embedded point under the
// original distance (ties to the lowest tree point).
class HstEmbedding {
 public:
  // The space's own tree; every point is embedded. Requires kind hst.
  static HstEmbedding native(const MetricSpace& space);
  // FRT embedding of the distinct points among `points`.
  static HstEmbedding frt(const MetricSpace& space,
                          const std::vector<PointId>& points, RngStream& rng);

  const Hst& tree() const { return *tree_; }
  std::shared_ptr<const Hst> tree_ptr() const { return tree_; }
  // Original point of each tree point.
  const std::vector<PointId>& embedded() const { return original_; }
  // Tree point (leaf id) standing for an original point.
  PointId locate(const MetricSpace& space, PointId p) const;

 private:
  std::shared_ptr<const Hst> tree_;
  std::vector<PointId> original_;
  std::vector<PointId> tree_point_of_;
};

// The randomized level-based algorithm on 2-HSTs. Every server carries a
// level (infinite while free in M_off). A request looks for the lowest
// height h at which its subtree holds a server of level above h, takes one
// such server uniformly at random, and the request it displaces (if any)
// repeats the search starting from its own former level.
//
// On non-HST spaces the tree is an FRT embedding of the server points drawn
// from the matcher's stream; reported costs stay in the original metric.
class BbgnMatcher : public OnlineMatcher {
 public:
  static constexpr int kFree = std::numeric_limits<int>::max();

  BbgnMatcher() = default;
  // Uses a fixed embedding instead of drawing one at init.
  explicit BbgnMatcher(std::shared_ptr<const HstEmbedding> embedding);

  std::string name() const override { return "bbgn"; }
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return online_.order();
  }
  // cost(M_off) measured in the tree.
  std::optional<double> maintained_offline_cost() const override;

  const HstEmbedding& embedding() const { return *embedding_; }
  const std::vector<int>& server_levels() const { return level_; }
  const std::vector<int>& offline_request_of_server() const {
    return off_request_of_server_;
  }
  const std::vector<ServerId>& offline_server_of_request() const {
    return off_server_of_request_;
  }
  // Tree point each arrived request was placed at.
  const std::vector<PointId>& request_leaves() const { return request_leaf_; }
  const std::vector<PointId>& server_leaves() const { return server_leaf_; }

 private:
  std::shared_ptr<const HstEmbedding> fixed_;
  std::shared_ptr<const HstEmbedding> embedding_;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  std::vector<PointId> server_leaf_;
  // server_anc_[s][h]: ancestor of server s's leaf at height h.
  std::vector<std::vector<int>> server_anc_;
  std::vector<int> level_;
  std::vector<int> off_request_of_server_;
  std::vector<ServerId> off_server_of_request_;
  std::vector<PointId> request_leaf_;
  ServerBook online_;
  RngStream choices_;
};

}  // namespace pmatch

#endif  // PMATCH_BBGN_HPP_
