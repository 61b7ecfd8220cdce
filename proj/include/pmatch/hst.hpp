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

#ifndef PMATCH_HST_HPP_
#define PMATCH_HST_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "pmatch/common.hpp"
#include "pmatch/metric.hpp"
#include "pmatch/rng.hpp"

namespace pmatch {

// A rooted 2-HST whose leaves carry point ids 0..m-1.
//
// All leaves sit at height 0 and every child of a height-h node has height
// h-1. Edges below a node share one length, and each internal node's parent
// edge is twice its child edges, so with bottom edge length c two leaves whose
// lowest common ancestor has height H are 2c(2^H - 1) apart.
class Hst {
 public:
  static constexpr double kAlpha = 2.0;

  struct Node {
    int parent = -1;
    int height = 0;
    // Length of the edge to the parent; 0 for the root.
    double parent_length = 0.0;
    // Point carried by a leaf; -1 for internal nodes.
    PointId point = -1;
    std::vector<int> children;
  };

  // Builds a tree from a parent array (-1 marks the root), parent-edge
  // lengths and leaf point ids (-1 for internal nodes). Throws UsageError
  // unless the result satisfies every invariant above.
  static Hst from_parents(std::vector<int> parent, std::vector<double> length,
                          std::vector<PointId> point);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_points() const { return leaf_of_point_.size(); }
  int root() const { return root_; }
  int height() const { return nodes_[root_].height; }
  const Node& node(int id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }

  int leaf(PointId p) const;
  // Ancestor of p's leaf at height h (the leaf itself for h = 0).
  int ancestor(PointId p, int h) const;
  // Points under a node, ascending.
  const std::vector<PointId>& points_under(int node) const {
    return under_.at(node);
  }

  double distance(PointId u, PointId v) const;

  Hst scaled(double factor) const;

  // Empty when every invariant holds, otherwise a description of the first
  // violation found.
  std::string check_invariants() const;

 private:
  Hst() = default;
  void index();

  std::vector<Node> nodes_;
  std::vector<int> leaf_of_point_;
  std::vector<std::vector<PointId>> under_;
  int root_ = -1;
};

double hst_distance(const Hst& tree, PointId u, PointId v);

// Random 2-HST embedding with the space's points as leaves. Tree distances
// dominate the metric and stretch it by O(log n) in expectation.
Hst frt_embed(const MetricSpace& space, RngStream& rng);

}  // namespace pmatch

#endif  // PMATCH_HST_HPP_
