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

#include "pmatch/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pmatch/assignment.hpp"
#include "pmatch/hst.hpp"

namespace pmatch {

namespace {

constexpr std::size_t kMaxCachedPoints = 4096;

double round_digits(double value, int digits) {
  const double f = std::pow(10.0, digits);
  return std::round(value * f) / f;
}

}  // namespace

std::string_view kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kLine: return "line";
    case MetricKind::kPlane: return "plane";
    case MetricKind::kManhattan: return "manhattan";
    case MetricKind::kExplicit: return "explicit";
    case MetricKind::kHst: return "hst";
  }
  return "?";
}

MetricKind parse_kind(std::string_view name) {
  if (name == "line") return MetricKind::kLine;
  if (name == "plane") return MetricKind::kPlane;
  if (name == "manhattan") return MetricKind::kManhattan;
  if (name == "explicit") return MetricKind::kExplicit;
  if (name == "hst") return MetricKind::kHst;
  throw UsageError("unknown metric kind: " + std::string(name));
}

MetricSpace MetricSpace::line(std::vector<double> coords) {
  MetricSpace m;
  m.kind_ = MetricKind::kLine;
  m.size_ = coords.size();
  m.coords1_ = std::move(coords);
  m.build_cache();
  return m;
}

MetricSpace MetricSpace::plane(std::vector<Point2> points) {
  MetricSpace m;
  m.kind_ = MetricKind::kPlane;
  m.size_ = points.size();
  m.coords2_ = std::move(points);
  m.build_cache();
  return m;
}

MetricSpace MetricSpace::manhattan(std::vector<Point2> points) {
  MetricSpace m;
  m.kind_ = MetricKind::kManhattan;
  m.size_ = points.size();
  m.coords2_ = std::move(points);
  m.build_cache();
  return m;
}

MetricSpace MetricSpace::explicit_matrix(
    std::vector<std::vector<double>> matrix) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw UsageError("explicit metric: not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d) || d < 0.0)
        throw UsageError("explicit metric: negative or non-finite entry");
    }
    if (matrix[i][i] != 0.0)
      throw UsageError("explicit metric: nonzero diagonal at " +
                       std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(matrix[i][j] - matrix[j][i]) > kTolerance)
        throw UsageError("explicit metric: asymmetric at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (matrix[u][v] > matrix[u][w] + matrix[w][v] + kTolerance)
          throw UsageError("explicit metric: triangle inequality fails at (" +
                           std::to_string(u) + "," + std::to_string(v) + "," +
                           std::to_string(w) + ")");
  MetricSpace m;
  m.kind_ = MetricKind::kExplicit;
  m.size_ = n;
  m.matrix_ = std::move(matrix);
  m.build_cache();
  return m;
}

MetricSpace MetricSpace::from_hst(std::shared_ptr<const Hst> tree) {
  if (!tree) throw UsageError("from_hst: null tree");
  MetricSpace m;
  m.kind_ = MetricKind::kHst;
  m.size_ = tree->num_points();
  m.hst_ = std::move(tree);
  m.build_cache();
  return m;
}

double MetricSpace::raw_distance(PointId u, PointId v) const {
  switch (kind_) {
    case MetricKind::kLine:
      return std::abs(coords1_[u] - coords1_[v]);
    case MetricKind::kPlane: {
      const double dx = coords2_[u].x - coords2_[v].x;
      const double dy = coords2_[u].y - coords2_[v].y;
      return round_digits(std::sqrt(dx * dx + dy * dy), kPlaneRoundingDigits);
    }
    case MetricKind::kManhattan:
      return std::abs(coords2_[u].x - coords2_[v].x) +
             std::abs(coords2_[u].y - coords2_[v].y);
    case MetricKind::kExplicit:
      return matrix_[u][v];
    case MetricKind::kHst:
      return hst_->distance(u, v);
  }
  return 0.0;
}

void MetricSpace::build_cache() {
  cache_.clear();
  if (size_ > kMaxCachedPoints) return;
  cache_.resize(size_ * size_);
  for (std::size_t u = 0; u < size_; ++u) {
    cache_[u * size_ + u] = 0.0;
    for (std::size_t v = u + 1; v < size_; ++v) {
      const double d = raw_distance(static_cast<PointId>(u),
                                    static_cast<PointId>(v)) * scale_;
      cache_[u * size_ + v] = d;
      cache_[v * size_ + u] = d;
    }
  }
}

double MetricSpace::distance(PointId u, PointId v) const {
  if (!valid(u) || !valid(v))
    throw UsageError("distance: invalid point index " + std::to_string(u) +
                     "," + std::to_string(v));
  if (!cache_.empty()) return cache_[static_cast<std::size_t>(u) * size_ + v];
  if (u == v) return 0.0;
  return raw_distance(u, v) * scale_;
}

MetricSpace MetricSpace::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw UsageError("scaled: factor must be positive and finite");
  MetricSpace m = *this;
  m.scale_ = scale_ * factor;
  for (double& d : m.cache_) d *= factor;
  return m;
}

MetricSpace MetricSpace::restricted(std::span<const PointId> points) const {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> sub(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sub[i][j] = sub[j][i] = distance(points[i], points[j]);
  MetricSpace m;
  m.kind_ = MetricKind::kExplicit;
  m.size_ = n;
  m.matrix_ = std::move(sub);
  m.build_cache();
  return m;
}

Configuration::Configuration(std::vector<PointId> points)
    : elements(std::move(points)) {
  std::sort(elements.begin(), elements.end());
}

Configuration multiset_intersection(const Configuration& a,
                                    const Configuration& b) {
  Configuration out;
  std::set_intersection(a.elements.begin(), a.elements.end(),
                        b.elements.begin(), b.elements.end(),
                        std::back_inserter(out.elements));
  return out;
}

Configuration multiset_difference(const Configuration& a,
                                  const Configuration& b) {
  Configuration out;
  std::set_difference(a.elements.begin(), a.elements.end(),
                      b.elements.begin(), b.elements.end(),
                      std::back_inserter(out.elements));
  return out;
}

Configuration multiset_union(const Configuration& a, const Configuration& b) {
  Configuration out;
  std::merge(a.elements.begin(), a.elements.end(), b.elements.begin(),
             b.elements.end(), std::back_inserter(out.elements));
  return out;
}

double config_dist(const MetricSpace& space, const Configuration& a,
                   const Configuration& b) {
  if (a.size() != b.size())
    throw UsageError("config_dist: size mismatch " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  for (PointId p : a.elements)
    if (!space.valid(p)) throw UsageError("config_dist: invalid point");
  for (PointId p : b.elements)
    if (!space.valid(p)) throw UsageError("config_dist: invalid point");
  if (a.size() == 0) return 0.0;
  return solve_min_cost_perfect(distance_matrix(space, a.elements, b.elements))
      .cost;
}

NoiseScale noise_scale_stats(const MetricSpace& space) {
  std::vector<double> nonzero;
  const auto n = static_cast<PointId>(space.size());
  for (PointId u = 0; u < n; ++u)
    for (PointId v = u + 1; v < n; ++v) {
      const double d = space.distance(u, v);
      if (d > 0.0) nonzero.push_back(d);
    }
  if (nonzero.empty())
    throw DegenerateMetric("noise_scale_stats: all distances are zero");
  const auto mid = nonzero.begin() + (nonzero.size() - 1) / 2;
  std::nth_element(nonzero.begin(), mid, nonzero.end());
  const double med = *mid;
  const double mn = *std::min_element(nonzero.begin(), nonzero.end());
  return {mn, med};
}

}  // namespace pmatch
