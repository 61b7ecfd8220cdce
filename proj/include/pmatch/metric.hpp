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

#ifndef PMATCH_METRIC_HPP_
#define PMATCH_METRIC_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "pmatch/common.hpp"

namespace pmatch {

class Hst;

enum class MetricKind { kLine, kPlane, kManhattan, kExplicit, kHst };

std::string_view kind_name(MetricKind kind);
MetricKind parse_kind(std::string_view name);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Decimal places kept on Euclidean plane distances.
inline constexpr int kPlaneRoundingDigits = 9;

// A finite metric over indexed points. Immutable after construction, so it is
// safe to share read-only between concurrent runs.
//
// Line, plane and Manhattan spaces satisfy the metric axioms by construction;
// explicit matrices are checked exhaustively; HST spaces use tree distances
// between leaves (point i is the leaf carrying point id i).
class MetricSpace {
 public:
  static MetricSpace line(std::vector<double> coords);
  static MetricSpace plane(std::vector<Point2> points);
  static MetricSpace manhattan(std::vector<Point2> points);
  // Throws UsageError if the matrix is not a metric (within kTolerance).
  static MetricSpace explicit_matrix(std::vector<std::vector<double>> matrix);
  static MetricSpace from_hst(std::shared_ptr<const Hst> tree);

  MetricKind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  bool valid(PointId u) const {
    return u >= 0 && static_cast<std::size_t>(u) < size_;
  }

  // Throws UsageError on an invalid index.
  double distance(PointId u, PointId v) const;

  // Multiplier applied to every distance (1 unless produced by scaled()).
  double scale() const { return scale_; }
  MetricSpace scaled(double factor) const;

  // The sub-metric on the given points, as an explicit matrix. Point i of the
  // result is points[i] of this space.
  MetricSpace restricted(std::span<const PointId> points) const;

  std::span<const double> line_coords() const { return coords1_; }
  std::span<const Point2> plane_points() const { return coords2_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  const std::shared_ptr<const Hst>& hst() const { return hst_; }

 private:
  MetricSpace() = default;
  double raw_distance(PointId u, PointId v) const;
  void build_cache();

  MetricKind kind_ = MetricKind::kLine;
  std::size_t size_ = 0;
  double scale_ = 1.0;
  std::vector<double> coords1_;
  std::vector<Point2> coords2_;
  std::vector<std::vector<double>> matrix_;
  std::shared_ptr<const Hst> hst_;
  // Row-major scaled distances; empty for very large spaces.
  std::vector<double> cache_;
};

// A multiset of points, kept as a sorted list.
struct Configuration {
  std::vector<PointId> elements;

  Configuration() = default;
  explicit Configuration(std::vector<PointId> points);

  std::size_t size() const { return elements.size(); }
  bool operator==(const Configuration&) const = default;
};

// Per-point multiplicity minimum / difference / sum.
Configuration multiset_intersection(const Configuration& a,
                                    const Configuration& b);
Configuration multiset_difference(const Configuration& a,
                                  const Configuration& b);
Configuration multiset_union(const Configuration& a, const Configuration& b);

// Minimum cost of a perfect matching between two equal-size multisets.
double config_dist(const MetricSpace& space, const Configuration& a,
                   const Configuration& b);

struct NoiseScale {
  double d_min = 0.0;
  double d_med = 0.0;
};

// Minimum and lower median of the nonzero pairwise distances. Throws
// DegenerateMetric when every distance is zero.
NoiseScale noise_scale_stats(const MetricSpace& space);

}  // namespace pmatch

#endif  // PMATCH_METRIC_HPP_
