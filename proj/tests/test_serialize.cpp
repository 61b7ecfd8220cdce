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
#include "pmatch/classic.hpp"
#include "pmatch/online.hpp"
#include "pmatch/serialize.hpp"

namespace pmatch {
namespace {

using nlohmann::json;

void expect_same_distances(const MetricSpace& a, const MetricSpace& b) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(a.kind(), b.kind());
  for (PointId u = 0; u < static_cast<PointId>(a.size()); ++u)
    for (PointId v = 0; v < static_cast<PointId>(a.size()); ++v)
      EXPECT_EQ(a.distance(u, v), b.distance(u, v));
}

TEST(Json, MetricRoundTripEveryKind) {
  RngStream rng(81);
  for (int kind = 0; kind < 5; ++kind) {
    auto s = oracle::random_space(rng, 7, kind);
    // Through text, as a file would.
    const auto back = metric_from_json(json::parse(metric_to_json(*s).dump()));
    expect_same_distances(*s, back);
    const auto scaled = s->scaled(0.37);
    expect_same_distances(scaled, metric_from_json(metric_to_json(scaled)));
  }
}

TEST(Json, MetricDocumentShape) {
  const auto doc = metric_to_json(MetricSpace::manhattan({{0, 0}, {1, 2}}));
  EXPECT_EQ(doc.at("kind"), "manhattan");
  EXPECT_EQ(doc.at("points"), json::parse("[[0.0, 0.0], [1.0, 2.0]]"));
  EXPECT_FALSE(doc.contains("scale"));
  EXPECT_THROW(metric_from_json(json::parse(R"({"kind": "torus", "points": []})")),
               UsageError);
  EXPECT_THROW(metric_from_json(json::parse(R"({"points": [1, 2]})")), UsageError);
}

TEST(Json, HstRoundTrip) {
  RngStream rng(82);
  auto tree = oracle::random_hst(rng, 8, 0.25);
  const Hst back = hst_from_json(hst_to_json(*tree));
  EXPECT_EQ(back.num_nodes(), tree->num_nodes());
  for (PointId u = 0; u < static_cast<PointId>(tree->num_points()); ++u)
    for (PointId v = 0; v < static_cast<PointId>(tree->num_points()); ++v)
      EXPECT_EQ(back.distance(u, v), tree->distance(u, v));
  auto doc = hst_to_json(*tree);
  doc["length"][1] = 123.0;
  EXPECT_THROW(hst_from_json(doc), UsageError);
}

TEST(Json, InstanceRoundTrip) {
  RngStream rng(83);
  auto inst = oracle::random_instance(rng, 6, 1);
  inst.seed = 99;
  const auto back = instance_from_json(json::parse(instance_to_json(inst).dump()));
  EXPECT_EQ(back.servers, inst.servers);
  EXPECT_EQ(back.requests, inst.requests);
  EXPECT_EQ(back.label, inst.label);
  EXPECT_EQ(back.seed, 99u);
  expect_same_distances(*back.space, *inst.space);
  auto doc = instance_to_json(inst);
  doc["requests"].erase(0);
  EXPECT_THROW(instance_from_json(doc), UsageError);
}

TEST(Json, Transcript) {
  RngStream rng(84);
  const auto inst = oracle::random_instance(rng, 5, 0);
  GreedyMatcher g;
  const auto tr = run(g, inst);
  const auto doc = transcript_to_json(tr);
  EXPECT_EQ(doc.at("algorithm"), "greedy");
  EXPECT_EQ(doc.at("assignments").size(), 5u);
  EXPECT_EQ(doc.at("assignments")[0].at("round"), 1);
  EXPECT_DOUBLE_EQ(doc.at("total_cost").get<double>(), tr.total_cost);
  EXPECT_TRUE(doc.at("queries").empty());
}

}  // namespace
}  // namespace pmatch
