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

#include "pmatch/hst.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pmatch {

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Hst Hst::from_parents(std::vector<int> parent, std::vector<double> length,
                      std::vector<PointId> point) {
  const std::size_t n = parent.size();
  if (n == 0 || length.size() != n || point.size() != n)
    throw UsageError("hst: parent, length and point arrays must be nonempty "
                     "and of equal size");
  Hst t;
  t.nodes_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    Node& node = t.nodes_[v];
    node.parent = parent[v];
    node.parent_length = length[v];
    node.point = point[v];
    if (parent[v] == -1) {
      if (t.root_ != -1) throw UsageError("hst: more than one root");
      t.root_ = static_cast<int>(v);
    } else if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= n ||
               parent[v] == static_cast<int>(v)) {
      throw UsageError("hst: bad parent index at node " + std::to_string(v));
    }
  }
  if (t.root_ == -1) throw UsageError("hst: no root");
  for (std::size_t v = 0; v < n; ++v)
    if (parent[v] >= 0)
      t.nodes_[parent[v]].children.push_back(static_cast<int>(v));
  t.index();
  const std::string problem = t.check_invariants();
  if (!problem.empty()) throw UsageError("hst: " + problem);
  return t;
}

// Heights, leaf lookup and per-node point lists. Tolerates malformed input
// (cycles, unreachable nodes); check_invariants reports those.
void Hst::index() {
  const std::size_t n = nodes_.size();
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  order.push_back(root_);
  seen[root_] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : nodes_[order[i]].children)
      if (!seen[c]) {
        seen[c] = 1;
        order.push_back(c);
      }
  under_.assign(n, {});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node& node = nodes_[*it];
    if (node.children.empty()) {
      node.height = 0;
      if (node.point >= 0) under_[*it].push_back(node.point);
    } else {
      node.height = nodes_[node.children.front()].height + 1;
      for (int c : node.children)
        under_[*it].insert(under_[*it].end(), under_[c].begin(),
                           under_[c].end());
      std::sort(under_[*it].begin(), under_[*it].end());
    }
  }
  PointId max_point = -1;
  for (const Node& node : nodes_) max_point = std::max(max_point, node.point);
  leaf_of_point_.assign(static_cast<std::size_t>(max_point + 1), -1);
  for (std::size_t v = 0; v < n; ++v)
    if (nodes_[v].point >= 0 && nodes_[v].children.empty())
      leaf_of_point_[nodes_[v].point] = static_cast<int>(v);
}

std::string Hst::check_invariants() const {
  std::ostringstream err;
  const std::size_t n = nodes_.size();
  if (root_ < 0 || static_cast<std::size_t>(root_) >= n) return "bad root";
  if (nodes_[root_].parent != -1) return "root has a parent";

  std::vector<int> depth(n, -1);
  std::vector<int> stack{root_};
  depth[root_] = 0;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int c : nodes_[v].children) {
      if (nodes_[c].parent != v) {
        err << "node " << c << " listed as child of " << v
            << " but has parent " << nodes_[c].parent;
        return err.str();
      }
      if (depth[c] != -1) return "cycle in parent links";
      depth[c] = depth[v] + 1;
      stack.push_back(c);
    }
  }
  if (reached != n) return "some nodes are not reachable from the root";

  const int h = nodes_[root_].height;
  std::vector<int> seen_point;
  for (std::size_t v = 0; v < n; ++v) {
    const Node& node = nodes_[v];
    if (node.height != h - depth[v]) {
      err << "node " << v << " breaks uniform leaf depth";
      return err.str();
    }
    if (node.children.empty()) {
      if (node.point < 0) {
        err << "leaf " << v << " carries no point";
        return err.str();
      }
      seen_point.push_back(node.point);
    } else {
      if (node.point >= 0) {
        err << "internal node " << v << " carries a point";
        return err.str();
      }
      const double child_len = nodes_[node.children.front()].parent_length;
      if (!(child_len > 0.0)) {
        err << "non-positive edge length below node " << v;
        return err.str();
      }
      for (int c : node.children)
        if (!close(nodes_[c].parent_length, child_len)) {
          err << "children of node " << v << " have unequal edge lengths";
          return err.str();
        }
      if (static_cast<int>(v) != root_ &&
          !close(node.parent_length, kAlpha * child_len)) {
        err << "node " << v << ": parent edge is not " << kAlpha
            << " times its child edges";
        return err.str();
      }
    }
    if (static_cast<int>(v) == root_ && node.parent_length != 0.0)
      return "root has a parent edge length";
  }
  std::sort(seen_point.begin(), seen_point.end());
  for (std::size_t i = 0; i < seen_point.size(); ++i)
    if (seen_point[i] != static_cast<PointId>(i))
      return "leaf points are not exactly 0..m-1";
  return {};
}

int Hst::leaf(PointId p) const {
  if (p < 0 || static_cast<std::size_t>(p) >= leaf_of_point_.size())
    throw UsageError("hst: invalid leaf " + std::to_string(p));
  return leaf_of_point_[p];
}

int Hst::ancestor(PointId p, int h) const {
  if (h < 0 || h > height()) throw UsageError("hst: height out of range");
  int v = leaf(p);
  for (int i = 0; i < h; ++i) v = nodes_[v].parent;
  return v;
}

double Hst::distance(PointId u, PointId v) const {
  int a = leaf(u), b = leaf(v);
  double d = 0.0;
  while (a != b) {
    d += nodes_[a].parent_length + nodes_[b].parent_length;
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return d;
}

Hst Hst::scaled(double factor) const {
  if (!(factor > 0.0)) throw UsageError("hst: scale factor must be positive");
  Hst t = *this;
  for (Node& node : t.nodes_) node.parent_length *= factor;
  return t;
}

double hst_distance(const Hst& tree, PointId u, PointId v) {
  return tree.distance(u, v);
}

// Laminar random clustering. With u the smallest nonzero distance, level i
// uses radius beta * 2^(i-1) * u for beta ~ U[1,2); every point joins the
// cluster of the first center (in a random order) within that radius, inside
// its parent cluster. Level-i clusters become nodes of height i+1 and points
// are leaves. Level-0 clusters only hold co-located points, so the bottom
// edge can be as short as beta*u/3: two points split below a level-i cluster
// (i >= 1) are then (2/3)*beta*u*(2^(i+1)-1) >= 2 * radius_i apart in the
// tree, which covers the cluster's diameter.
Hst frt_embed(const MetricSpace& space, RngStream& rng) {
  const std::size_t m = space.size();
  if (m == 0) throw UsageError("frt_embed: empty space");
  if (m == 1) return Hst::from_parents({-1}, {0.0}, {0});

  double u = 0.0, diameter = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const double d = space.distance(static_cast<PointId>(a),
                                      static_cast<PointId>(b));
      if (d > 0.0 && (u == 0.0 || d < u)) u = d;
      diameter = std::max(diameter, d);
    }
  int top = 0;  // level whose radius covers the whole space
  if (diameter > 0.0) {
    top = 1;
    while (std::ldexp(u, top - 1) < diameter) ++top;
  } else {
    u = 1.0;
  }

  const double beta = rng.uniform(1.0, 2.0);
  std::vector<PointId> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());

  std::vector<int> parent{-1};
  std::vector<int> height{top + 1};
  std::vector<PointId> leaf_point{-1};
  std::vector<std::vector<PointId>> members(1);
  members[0].resize(m);
  std::iota(members[0].begin(), members[0].end(), 0);

  std::vector<int> frontier{0};
  for (int level = top - 1; level >= 0; --level) {
    const double radius = beta * std::ldexp(u, level - 1);
    std::vector<int> next;
    for (int cluster : frontier) {
      // center -> child node, in order of first appearance
      std::vector<std::pair<PointId, int>> child_of_center;
      for (PointId x : members[cluster]) {
        PointId center = -1;
        for (PointId c : perm)
          if (space.distance(c, x) <= radius) {
            center = c;
            break;
          }
        int child = -1;
        for (const auto& [c, node] : child_of_center)
          if (c == center) child = node;
        if (child < 0) {
          child = static_cast<int>(parent.size());
          parent.push_back(cluster);
          height.push_back(level + 1);
          leaf_point.push_back(-1);
          members.emplace_back();
          child_of_center.emplace_back(center, child);
          next.push_back(child);
        }
        members[child].push_back(x);
      }
    }
    frontier = std::move(next);
  }
  for (int cluster : frontier)
    for (PointId x : members[cluster]) {
      parent.push_back(cluster);
      height.push_back(0);
      leaf_point.push_back(x);
    }

  const double bottom = beta * u / 3.0;
  std::vector<double> length(parent.size(), 0.0);
  for (std::size_t v = 1; v < parent.size(); ++v)
    length[v] = std::ldexp(bottom, height[v]);
  return Hst::from_parents(std::move(parent), std::move(length),
                           std::move(leaf_point));
}

}  // namespace pmatch
