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

#ifndef PMATCH_ASSIGNMENT_HPP_
#define PMATCH_ASSIGNMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pmatch/common.hpp"
#include "pmatch/metric.hpp"

namespace pmatch {

// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit CostMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Matching {
  // (left, right) index pairs, sorted by left index.
  std::vector<std::pair<int, int>> pairs;
  double cost = 0.0;

  // Right partner of a left index, or -1.
  int right_of(int left) const;
  // Left partner of a right index, or -1.
  int left_of(int right) const;
};

// Minimum-cost perfect matching on a square matrix of finite nonnegative
// costs. Successive shortest augmenting paths with dual potentials, O(n^3);
// the result is a deterministic function of the input.
Matching solve_min_cost_perfect(const CostMatrix& costs);

// Minimum-cost matching that saturates every row (rows <= cols).
Matching solve_left_saturating(const CostMatrix& costs);

// An element of a matched multiset. Elements with equal keys are the same
// object (a server, a point) and must be matched to each other.
struct MatchItem {
  std::int64_t key = 0;
  PointId point = 0;
};

// Min-cost perfect matching between equal-size item lists where each element
// of the key-multiset intersection is matched to an identical copy of itself
// at cost 0 and the residual is solved exactly. Pairs refer to positions in
// `left` and `right`.
Matching constrained_identity_matching(const MetricSpace& space,
                                       std::span<const MatchItem> left,
                                       std::span<const MatchItem> right);

// Same over point multisets, keyed by point id.
Matching constrained_identity_matching(const MetricSpace& space,
                                       const Configuration& a,
                                       const Configuration& b);

// Pairwise distance matrix between two point lists.
CostMatrix distance_matrix(const MetricSpace& space,
                           std::span<const PointId> rows,
                           std::span<const PointId> cols);

}  // namespace pmatch

#endif  // PMATCH_ASSIGNMENT_HPP_
