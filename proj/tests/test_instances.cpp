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

#include <fstream>
#include <set>
#include <sstream>

#include "pmatch/instances.hpp"

namespace pmatch {
namespace {

const std::string kGolden = std::string(PMATCH_TEST_DATA_DIR) + "/golden_trips.csv";
const std::string kFixture = std::string(PMATCH_DATA_DIR) + "/taxi_fixture.csv";

std::int64_t at(const char* text) { return *parse_timestamp(text); }

TEST(Synthetic, LineShapeAndDeterminism) {
  GenConfig c;
  c.seed = 12;
  const Instance a = gen_line(c), b = gen_line(c);
  EXPECT_EQ(a.servers, b.servers);
  EXPECT_EQ(a.requests, b.requests);
  ASSERT_EQ(a.space->size(), 200u);
  ASSERT_EQ(a.n(), 100u);
  EXPECT_EQ(std::set<PointId>(a.servers.begin(), a.servers.end()).size(), 100u);
  for (double x : a.space->line_coords()) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  c.seed = 13;
  EXPECT_NE(gen_line(c).requests, a.requests);
}

// With 100 draws from 200 vertices a repeat is all but certain; check it
// happens for at least one of a few seeds.
TEST(Synthetic, RequestsMayRepeat) {
  bool repeated = false;
  for (std::uint64_t seed = 0; seed < 5 && !repeated; ++seed) {
    GenConfig c;
    c.seed = seed;
    const auto inst = gen_line(c);
    repeated = std::set<PointId>(inst.requests.begin(), inst.requests.end()).size() <
               inst.requests.size();
  }
  EXPECT_TRUE(repeated);
}

TEST(Synthetic, PlaneInUnitSquare) {
  GenConfig c;
  c.cls = InstanceClass::kPlane;
  c.seed = 4;
  const Instance a = generate(c);
  EXPECT_EQ(a.space->kind(), MetricKind::kPlane);
  for (const auto& p : a.space->plane_points()) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.y, 1.0);
  }
  EXPECT_EQ(generate(c).requests, a.requests);
  c.servers = 300;
  c.requests = 300;
  EXPECT_THROW(generate(c), UsageError);
  c.requests = 299;
  EXPECT_THROW(generate(c), UsageError);
}

TEST(Synthetic, ClassNames) {
  for (auto c : {InstanceClass::kLine, InstanceClass::kPlane, InstanceClass::kTaxi})
    EXPECT_EQ(parse_class(class_name(c)), c);
  EXPECT_THROW(parse_class("grid"), UsageError);
}

TEST(Timestamps, Parse) {
  EXPECT_EQ(at("10/19/2023 12:00:00 AM"), *parse_date("10/19/2023"));
  EXPECT_EQ(at("10/19/2023 12:30:15 PM") - at("10/19/2023 12:00:00 AM"),
            12 * 3600 + 30 * 60 + 15);
  EXPECT_EQ(at("10/20/2023 01:00:00 AM") - at("10/19/2023 11:00:00 PM"), 7200);
  EXPECT_EQ(*parse_date("01/01/1970"), 0);
  EXPECT_FALSE(parse_timestamp("10/19/2023 13:00:00 PM"));
  EXPECT_FALSE(parse_timestamp("2023-10-19 01:00:00"));
  EXPECT_FALSE(parse_timestamp(""));
  EXPECT_FALSE(parse_date("02/30/2023"));
}

TEST(TaxiCsv, GoldenRows) {
  std::ifstream in(kGolden);
  ASSERT_TRUE(in) << kGolden;
  const auto trips = read_taxi_csv(in);
  // Rows X (empty drop-off latitude) and Y (empty end time) are dropped.
  ASSERT_EQ(trips.size(), 8u);
  std::vector<std::size_t> lines;
  for (const auto& t : trips) lines.push_back(t.line);
  EXPECT_EQ(lines, (std::vector<std::size_t>{2, 3, 5, 6, 8, 9, 10, 11}));
  // Row C has a quoted latitude and a quoted company containing a comma.
  EXPECT_DOUBLE_EQ(trips[2].pickup.x, -87.63);
  EXPECT_DOUBLE_EQ(trips[2].pickup.y, 41.88);
  EXPECT_EQ(trips[2].end - trips[2].start, 15 * 60);
  EXPECT_EQ(trips[5].start, at("10/18/2023 11:50:00 PM"));
}

TEST(TaxiCsv, Errors) {
  std::istringstream missing("Trip Start Timestamp,Trip End Timestamp\n1,2\n");
  try {
    read_taxi_csv(missing);
    FAIL();
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  std::istringstream bad(
      "Trip Start Timestamp,Trip End Timestamp,Pickup Centroid Latitude,"
      "Pickup Centroid Longitude,Dropoff Centroid Latitude,Dropoff Centroid Longitude\n"
      "10/19/2023 12:00:00 AM,10/19/2023 12:04:00 AM,1,2,3,4\n"
      "10/19/2023 12:00:00 AM,yesterday,1,2,3,4\n");
  try {
    read_taxi_csv(bad);
    FAIL();
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::istringstream open_quote(
      "Trip Start Timestamp,Trip End Timestamp,Pickup Centroid Latitude,"
      "Pickup Centroid Longitude,Dropoff Centroid Latitude,Dropoff Centroid Longitude\n"
      "\"10/19/2023 12:00:00 AM,x,1,2,3,4\n");
  EXPECT_THROW(read_taxi_csv(open_quote), IngestionError);
  std::istringstream empty("");
  EXPECT_THROW(read_taxi_csv(empty), IngestionError);
  GenConfig c;
  c.cls = InstanceClass::kTaxi;
  c.taxi_csv = "/nonexistent/trips.csv";
  EXPECT_THROW(generate(c), IngestionError);
}

// Only 00:05 has two trips ending by it and two starting from it, so every
// seed eventually lands there.
TEST(Taxi, GoldenWindow) {
  std::ifstream in(kGolden);
  const auto trips = read_taxi_csv(in);
  GenConfig c;
  c.cls = InstanceClass::kTaxi;
  c.servers = c.requests = 2;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    c.seed = seed;
    const Instance inst = gen_taxi(c, trips);
    EXPECT_EQ(inst.label, "taxi@" + std::to_string(at("10/19/2023 12:05:00 AM")));
    ASSERT_EQ(inst.space->size(), 4u);
    const auto pts = inst.space->plane_points();
    // Servers: drop-offs of A then B. Requests: pick-ups of C then D.
    EXPECT_DOUBLE_EQ(pts[inst.servers[0]].x, -87.6);
    EXPECT_DOUBLE_EQ(pts[inst.servers[1]].y, 41.81);
    EXPECT_DOUBLE_EQ(pts[inst.requests[0]].x, -87.63);
    EXPECT_DOUBLE_EQ(pts[inst.requests[1]].x, -87.62);
    EXPECT_NEAR(inst.space->distance(inst.requests[0], inst.requests[1]), 0.02, 1e-12);
  }
  c.servers = c.requests = 3;
  EXPECT_THROW(gen_taxi(c, trips), DataInsufficiency);
  c.taxi_date = "19/10/2023";
  EXPECT_THROW(gen_taxi(c, trips), UsageError);
}

TEST(Taxi, FixtureProducesInstances) {
  GenConfig c;
  c.cls = InstanceClass::kTaxi;
  c.taxi_csv = kFixture;
  std::set<std::string> labels;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    const Instance inst = generate(c);
    EXPECT_EQ(inst.n(), 100u);
    EXPECT_EQ(inst.space->kind(), MetricKind::kManhattan);
    EXPECT_EQ(generate(c).label, inst.label);
    labels.insert(inst.label);
  }
  EXPECT_GT(labels.size(), 1u);
}

}  // namespace
}  // namespace pmatch
