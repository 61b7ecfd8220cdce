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

#include "pmatch/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pmatch/instance.hpp"

namespace pmatch {

CostMatrix::CostMatrix(const std::vector<std::vector<double>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw UsageError("CostMatrix: ragged rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

int Matching::right_of(int left) const {
  for (const auto& [l, r] : pairs)
    if (l == left) return r;
  return -1;
}

int Matching::left_of(int right) const {
  for (const auto& [l, r] : pairs)
    if (r == right) return l;
  return -1;
}

namespace {

void check_entries(const CostMatrix& costs) {
  for (std::size_t r = 0; r < costs.rows(); ++r)
    for (std::size_t c = 0; c < costs.cols(); ++c) {
      const double x = costs(r, c);
      if (!std::isfinite(x))
        throw UsageError("assignment: non-finite cost at (" +
                         std::to_string(r) + "," + std::to_string(c) + ")");
    }
}

// Row-saturating minimum-cost assignment for rows <= cols. Each row is added
// by a Dijkstra-like search over reduced costs a(i,j) - u(i) - v(j), which
// stay nonnegative, followed by augmentation along the found path.
Matching hungarian(const CostMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<double> minv(m + 1);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Matching out;
  out.pairs.reserve(n);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] != 0)
      out.pairs.emplace_back(static_cast<int>(p[j] - 1),
                             static_cast<int>(j - 1));
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [r, c] : out.pairs) out.cost += a(r, c);
  return out;
}

}  // namespace

Matching solve_min_cost_perfect(const CostMatrix& costs) {
  if (costs.rows() != costs.cols())
    throw UsageError("solve_min_cost_perfect: matrix is " +
                     std::to_string(costs.rows()) + "x" +
                     std::to_string(costs.cols()));
  check_entries(costs);
  return hungarian(costs);
}

Matching solve_left_saturating(const CostMatrix& costs) {
  if (costs.rows() > costs.cols())
    throw UsageError("solve_left_saturating: more rows than columns");
  check_entries(costs);
  return hungarian(costs);
}

CostMatrix distance_matrix(const MetricSpace& space,
                           std::span<const PointId> rows,
                           std::span<const PointId> cols) {
  CostMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = space.distance(rows[i], cols[j]);
  return m;
}

Matching constrained_identity_matching(const MetricSpace& space,
                                       std::span<const MatchItem> left,
                                       std::span<const MatchItem> right) {
  if (left.size() != right.size())
    throw UsageError("constrained_identity_matching: size mismatch " +
                     std::to_string(left.size()) + " vs " +
                     std::to_string(right.size()));
  auto order_by_key = [](std::span<const MatchItem> items) {
    std::vector<int> idx(items.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return items[a].key < items[b].key;
    });
    return idx;
  };
  const std::vector<int> lo = order_by_key(left);
  const std::vector<int> ro = order_by_key(right);

  Matching out;
  std::vector<int> rest_left, rest_right;
  std::size_t i = 0, j = 0;
  while (i < lo.size() && j < ro.size()) {
    const auto lk = left[lo[i]].key, rk = right[ro[j]].key;
    if (lk == rk) {
      out.pairs.emplace_back(lo[i++], ro[j++]);
    } else if (lk < rk) {
      rest_left.push_back(lo[i++]);
    } else {
      rest_right.push_back(ro[j++]);
    }
  }
  for (; i < lo.size(); ++i) rest_left.push_back(lo[i]);
  for (; j < ro.size(); ++j) rest_right.push_back(ro[j]);
  std::sort(rest_left.begin(), rest_left.end());
  std::sort(rest_right.begin(), rest_right.end());

  if (!rest_left.empty()) {
    CostMatrix residual(rest_left.size(), rest_right.size());
    for (std::size_t a = 0; a < rest_left.size(); ++a)
      for (std::size_t b = 0; b < rest_right.size(); ++b)
        residual(a, b) = space.distance(left[rest_left[a]].point,
                                        right[rest_right[b]].point);
    const Matching sub = solve_min_cost_perfect(residual);
    for (const auto& [a, b] : sub.pairs)
      out.pairs.emplace_back(rest_left[a], rest_right[b]);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [a, b] : out.pairs)
    out.cost += space.distance(left[a].point, right[b].point);
  return out;
}

Matching constrained_identity_matching(const MetricSpace& space,
                                       const Configuration& a,
                                       const Configuration& b) {
  std::vector<MatchItem> left, right;
  left.reserve(a.size());
  right.reserve(b.size());
  for (PointId p : a.elements) left.push_back({p, p});
  for (PointId p : b.elements) right.push_back({p, p});
  return constrained_identity_matching(space, left, right);
}

void Instance::validate() const {
  if (!space) throw UsageError("instance: no metric space");
  if (servers.empty()) throw UsageError("instance: no servers");
  if (servers.size() != requests.size())
    throw UsageError("instance: " + std::to_string(servers.size()) +
                     " servers but " + std::to_string(requests.size()) +
                     " requests");
  for (PointId p : servers)
    if (!space->valid(p)) throw UsageError("instance: invalid server point");
  for (PointId p : requests)
    if (!space->valid(p)) throw UsageError("instance: invalid request point");
}

std::vector<ServerId> OptimalReference::prefix(std::size_t t) const {
  if (t > server_of_request.size())
    throw UsageError("prefix: t out of range");
  std::vector<ServerId> out(server_of_request.begin(),
                            server_of_request.begin() + t);
  std::sort(out.begin(), out.end());
  return out;
}

OptimalReference offline_opt(const Instance& instance) {
  instance.validate();
  const Matching m = solve_min_cost_perfect(
      distance_matrix(*instance.space, instance.requests, instance.servers));
  OptimalReference ref;
  ref.server_of_request.assign(instance.n(), -1);
  for (const auto& [r, s] : m.pairs) ref.server_of_request[r] = s;
  ref.cost = m.cost;
  return ref;
}

Instance rescaled(const Instance& instance, double factor) {
  Instance out = instance;
  out.space = std::make_shared<const MetricSpace>(instance.space->scaled(factor));
  return out;
}

}  // namespace pmatch
