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

#include "pmatch/bbgn.hpp"

#include <algorithm>

namespace pmatch {

HstEmbedding HstEmbedding::native(const MetricSpace& space) {
  if (space.kind() != MetricKind::kHst || !space.hst())
    throw UsageError("bbgn: native embedding needs an hst metric");
  HstEmbedding e;
  e.tree_ = space.hst();
  if (space.scale() != 1.0)
    e.tree_ = std::make_shared<const Hst>(e.tree_->scaled(space.scale()));
  e.original_.resize(space.size());
  e.tree_point_of_.resize(space.size());
  for (std::size_t p = 0; p < space.size(); ++p) {
    e.original_[p] = static_cast<PointId>(p);
    e.tree_point_of_[p] = static_cast<PointId>(p);
  }
  return e;
}

HstEmbedding HstEmbedding::frt(const MetricSpace& space,
                               const std::vector<PointId>& points,
                               RngStream& rng) {
  if (points.empty()) throw UsageError("bbgn: nothing to embed");
  HstEmbedding e;
  e.original_ = points;
  std::sort(e.original_.begin(), e.original_.end());
  e.original_.erase(std::unique(e.original_.begin(), e.original_.end()),
                    e.original_.end());
  e.tree_point_of_.assign(space.size(), -1);
  for (std::size_t i = 0; i < e.original_.size(); ++i)
    e.tree_point_of_.at(e.original_[i]) = static_cast<PointId>(i);
  const MetricSpace sub = space.restricted(e.original_);
  e.tree_ = std::make_shared<const Hst>(frt_embed(sub, rng));
  return e;
}

PointId HstEmbedding::locate(const MetricSpace& space, PointId p) const {
  if (p >= 0 && static_cast<std::size_t>(p) < tree_point_of_.size() &&
      tree_point_of_[p] >= 0)
    return tree_point_of_[p];
  PointId best = -1;
  double best_d = 0.0;
  for (std::size_t i = 0; i < original_.size(); ++i) {
    const double d = space.distance(original_[i], p);
    if (best < 0 || d < best_d) {
      best = static_cast<PointId>(i);
      best_d = d;
    }
  }
  return best;
}

BbgnMatcher::BbgnMatcher(std::shared_ptr<const HstEmbedding> embedding)
    : fixed_(std::move(embedding)) {}

void BbgnMatcher::init(std::shared_ptr<const MetricSpace> space,
                       std::vector<PointId> servers, RngStream rng) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  if (fixed_) {
    embedding_ = fixed_;
  } else if (space_->kind() == MetricKind::kHst) {
    embedding_ = std::make_shared<const HstEmbedding>(
        HstEmbedding::native(*space_));
  } else {
    RngStream embed_rng = rng.split("embedding");
    embedding_ = std::make_shared<const HstEmbedding>(
        HstEmbedding::frt(*space_, servers_, embed_rng));
  }
  choices_ = rng.split("choices");

  const Hst& tree = embedding_->tree();
  const std::size_t n = servers_.size();
  server_leaf_.resize(n);
  server_anc_.assign(n, {});
  for (std::size_t s = 0; s < n; ++s) {
    server_leaf_[s] = embedding_->locate(*space_, servers_[s]);
    int v = tree.leaf(server_leaf_[s]);
    for (int h = 0; h <= tree.height(); ++h) {
      server_anc_[s].push_back(v);
      v = tree.node(v).parent;
    }
  }
  level_.assign(n, kFree);
  off_request_of_server_.assign(n, -1);
  off_server_of_request_.clear();
  request_leaf_.clear();
  online_.reset(n);
}

ServerId BbgnMatcher::serve(PointId request) {
  const std::size_t n = servers_.size();
  if (online_.order().size() >= n) throw UsageError("bbgn: no free server");
  const Hst& tree = embedding_->tree();

  const int fresh = static_cast<int>(request_leaf_.size());
  request_leaf_.push_back(embedding_->locate(*space_, request));
  off_server_of_request_.push_back(-1);

  int current = fresh;
  int from_level = 0;
  std::vector<ServerId> candidates;
  for (;;) {
    int h = from_level;
    for (; h <= tree.height(); ++h) {
      const int subtree = tree.ancestor(request_leaf_[current], h);
      candidates.clear();
      for (std::size_t s = 0; s < n; ++s)
        if (server_anc_[s][h] == subtree && level_[s] > h)
          candidates.push_back(static_cast<ServerId>(s));
      if (!candidates.empty()) break;
    }
    if (candidates.empty())
      throw ContractViolation("bbgn: no candidate server for a request");
    const ServerId chosen = candidates[choices_.uniform_index(candidates.size())];
    const int displaced = off_request_of_server_[chosen];
    const int old_level = level_[chosen];
    off_request_of_server_[chosen] = current;
    off_server_of_request_[current] = chosen;
    level_[chosen] = h;
    if (displaced < 0) {
      online_.take(chosen);
      return chosen;
    }
    off_server_of_request_[displaced] = -1;
    current = displaced;
    from_level = old_level;
  }
}

std::optional<double> BbgnMatcher::maintained_offline_cost() const {
  const Hst& tree = embedding_->tree();
  double c = 0.0;
  for (std::size_t r = 0; r < request_leaf_.size(); ++r)
    c += tree.distance(server_leaf_[off_server_of_request_[r]],
                       request_leaf_[r]);
  return c;
}

}  // namespace pmatch
