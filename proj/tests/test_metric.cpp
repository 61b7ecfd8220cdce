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

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pmatch/metric.hpp"

namespace pmatch {
namespace {

MetricSpace line(std::vector<double> xs) { return MetricSpace::line(std::move(xs)); }

TEST(Distance, LineIsAbsoluteDifference) {
  auto s = line({0.2, 0.7});
  EXPECT_NEAR(s.distance(0, 1), 0.5, 1e-12);
  EXPECT_EQ(s.distance(1, 1), 0.0);
}

TEST(Distance, ManhattanSumsAxes) {
  auto s = MetricSpace::manhattan({{0, 0}, {1, 2}});
  EXPECT_DOUBLE_EQ(s.distance(0, 1), 3.0);
}

TEST(Distance, PlaneRoundsToNineDigits) {
  auto s = MetricSpace::plane({{0, 0}, {0.6, 0.8}, {1, 1}});
  EXPECT_DOUBLE_EQ(s.distance(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(s.distance(0, 2), 1.414213562);
}

TEST(Distance, InvalidIndexThrows) {
  auto s = line({0, 1});
  EXPECT_THROW(s.distance(0, 2), UsageError);
  EXPECT_THROW(s.distance(-1, 0), UsageError);
}

TEST(Distance, ExplicitRejectsNonMetric) {
  EXPECT_THROW(MetricSpace::explicit_matrix({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}),
               UsageError);
  EXPECT_THROW(MetricSpace::explicit_matrix({{0, 1}, {2, 0}}), UsageError);
  EXPECT_NO_THROW(MetricSpace::explicit_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

TEST(Distance, RandomSpacesAreMetrics) {
  RngStream rng(7);
  for (int kind = 0; kind < 5; ++kind) {
    auto s = oracle::random_space(rng, 9, kind);
    const auto m = static_cast<PointId>(s->size());
    for (PointId u = 0; u < m; ++u)
      for (PointId v = 0; v < m; ++v) {
        EXPECT_EQ(s->distance(u, v), s->distance(v, u));
        for (PointId w = 0; w < m; ++w)
          EXPECT_LE(s->distance(u, v), s->distance(u, w) + s->distance(w, v) + 1e-9);
      }
  }
}

TEST(Distance, ScaledAndRestricted) {
  auto s = line({0, 2, 5});
  auto t = s.scaled(0.5);
  EXPECT_DOUBLE_EQ(t.distance(0, 2), 2.5);
  std::vector<PointId> pick{2, 0};
  auto r = s.restricted(pick);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r.distance(0, 1), 5.0);
}

TEST(Multiset, MergeOperations) {
  Configuration a({3, 1, 1, 2}), b({1, 2, 2, 4});
  EXPECT_EQ(a.elements, (std::vector<PointId>{1, 1, 2, 3}));
  EXPECT_EQ(multiset_intersection(a, b).elements, (std::vector<PointId>{1, 2}));
  EXPECT_EQ(multiset_difference(a, b).elements, (std::vector<PointId>{1, 3}));
  EXPECT_EQ(multiset_union(a, b).size(), 8u);
}

TEST(ConfigDist, Examples) {
  auto s = line({0, 1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(config_dist(s, Configuration({0, 2}), Configuration({1, 3})), 2.0);
  EXPECT_DOUBLE_EQ(config_dist(s, Configuration({4, 4, 1}), Configuration({1, 4, 4})), 0.0);
  EXPECT_DOUBLE_EQ(
      config_dist(s, Configuration({0, 2, 5}), Configuration({1, 3, 5})), 2.0);
  EXPECT_THROW(config_dist(s, Configuration({0}), Configuration({1, 2})), UsageError);
}

// Padding both sides with a common multiset never changes the distance, and
// the distance obeys the triangle inequality.
TEST(ConfigDist, PaddingAndTriangleProperty) {
  RngStream rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    auto s = oracle::random_space(rng, 8, iter);
    const std::size_t m = s->size(), k = 1 + rng.uniform_index(5);
    auto draw = [&](std::size_t len) {
      std::vector<PointId> v(len);
      for (auto& p : v) p = static_cast<PointId>(rng.uniform_index(m));
      return Configuration(v);
    };
    auto a = draw(k), b = draw(k), c = draw(k), pad = draw(1 + rng.uniform_index(3));
    const double ab = config_dist(*s, a, b);
    EXPECT_NEAR(ab, oracle::brute_dist(*s, a.elements, b.elements), 1e-9);
    EXPECT_NEAR(config_dist(*s, multiset_union(a, pad), multiset_union(b, pad)), ab, 1e-9);
    EXPECT_LE(ab, config_dist(*s, a, c) + config_dist(*s, c, b) + 1e-9);
  }
}

TEST(NoiseScale, Examples) {
  auto a = noise_scale_stats(line({0, 1, 3}));
  EXPECT_DOUBLE_EQ(a.d_min, 1.0);
  EXPECT_DOUBLE_EQ(a.d_med, 2.0);
  auto b = noise_scale_stats(line({0, 5}));
  EXPECT_DOUBLE_EQ(b.d_min, 5.0);
  EXPECT_DOUBLE_EQ(b.d_med, 5.0);
  auto c = noise_scale_stats(line({0, 0, 1}));
  EXPECT_DOUBLE_EQ(c.d_min, 1.0);
  EXPECT_DOUBLE_EQ(c.d_med, 1.0);
  // Six pairwise values {1, 2, 3, 4, 6, 7}: the lower median is 3.
  auto d = noise_scale_stats(line({0, 1, 3, 7}));
  EXPECT_DOUBLE_EQ(d.d_min, 1.0);
  EXPECT_DOUBLE_EQ(d.d_med, 3.0);
  EXPECT_THROW(noise_scale_stats(line({2, 2, 2})), DegenerateMetric);
}

}  // namespace
}  // namespace pmatch
