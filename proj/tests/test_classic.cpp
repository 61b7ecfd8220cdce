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

namespace pmatch {
namespace {

Instance on_line(std::vector<double> server_x, std::vector<double> request_x) {
  std::vector<double> xs = server_x;
  xs.insert(xs.end(), request_x.begin(), request_x.end());
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::line(xs));
  for (std::size_t i = 0; i < server_x.size(); ++i)
    inst.servers.push_back(static_cast<PointId>(i));
  for (std::size_t i = 0; i < request_x.size(); ++i)
    inst.requests.push_back(static_cast<PointId>(server_x.size() + i));
  return inst;
}

TEST(Greedy, NearestWithLowIndexTies) {
  GreedyMatcher g;
  auto a = on_line({0, 10}, {4});
  g.init(a.space, a.servers, RngStream(0));
  EXPECT_EQ(g.serve(a.requests[0]), 0);

  auto b = on_line({3, 3}, {3, 3});
  g.init(b.space, b.servers, RngStream(0));
  EXPECT_EQ(g.serve(b.requests[0]), 0);
  EXPECT_EQ(g.serve(b.requests[1]), 1);
  EXPECT_THROW(g.serve(b.requests[0]), UsageError);

  auto c = on_line({0, 10}, {1, 9});
  EXPECT_DOUBLE_EQ(run(g, c).total_cost, 2.0);
}

TEST(NetCost, WorkedExample) {
  auto inst = on_line({0, 4}, {3, 5});
  NetCostMatcher m(1.0);
  m.init(inst.space, inst.servers, RngStream(0));
  EXPECT_EQ(m.offline_cost(), 0.0);
  // Direct paths cost 3 (to 0) and 1 (to 4).
  EXPECT_EQ(m.serve(inst.requests[0]), 1);
  EXPECT_DOUBLE_EQ(m.last_net_cost(), 1.0);
  EXPECT_EQ(m.check_feasibility(), "");
  // Direct to 0 costs 5; the path 5-4-3-0 costs 1 - 1 + 3 = 3.
  EXPECT_EQ(m.serve(inst.requests[1]), 0);
  EXPECT_DOUBLE_EQ(m.last_net_cost(), 3.0);
  EXPECT_EQ(m.offline_server_of_request(), (std::vector<ServerId>{0, 1}));
  EXPECT_DOUBLE_EQ(m.offline_cost(), 4.0);
  EXPECT_DOUBLE_EQ(m.online_cost(), 6.0);
  EXPECT_EQ(m.check_feasibility(), "");
  EXPECT_THROW(m.serve(inst.requests[0]), UsageError);
}

TEST(NetCost, SingleServer) {
  auto inst = on_line({2}, {0.5});
  NetCostMatcher m(3.0);
  m.init(inst.space, inst.servers, RngStream(0));
  EXPECT_EQ(m.serve(inst.requests[0]), 0);
  EXPECT_DOUBLE_EQ(m.last_net_cost(), 4.5);
  EXPECT_DOUBLE_EQ(m.offline_cost(), 1.5);
  EXPECT_THROW(NetCostMatcher(0.5), UsageError);
}

// After every round: gamma-feasibility with equal matched server sets,
// dist(S_t, R_t) <= cost(M_off) <= gamma * prefix optimum (equality at
// gamma = 1), and the prefix online cost stays within gamma (2t - 1) of the
// prefix optimum.
TEST(NetCost, InvariantsAgainstBruteForce) {
  RngStream rng(31);
  for (int iter = 0; iter < 160; ++iter) {
    const double gamma = iter % 2 == 0 ? 1.0 : 3.0;
    const std::size_t n = 1 + rng.uniform_index(8);
    const auto inst = oracle::random_instance(rng, n, iter / 2);
    NetCostMatcher m(gamma);
    OnlineSession session(m, inst, 0);
    double online = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
      const ServerId s = session.serve(inst.requests[t - 1]);
      online += inst.space->distance(inst.servers[s], inst.requests[t - 1]);
      ASSERT_EQ(m.check_feasibility(), "") << "round " << t;
      const double best =
          oracle::brute_prefix_opt(*inst.space, inst.servers, inst.requests, t);
      std::vector<PointId> prefix(inst.requests.begin(), inst.requests.begin() + t);
      const double st = oracle::brute_dist(
          *inst.space, oracle::points_of(inst.servers, m.matched_servers()), prefix);
      EXPECT_LE(st, m.offline_cost() + 1e-9);
      EXPECT_LE(m.offline_cost(), gamma * best + 1e-9);
      if (gamma == 1.0) {
        EXPECT_NEAR(m.offline_cost(), best, 1e-9);
        EXPECT_LE(online, (2.0 * t - 1.0) * best + 1e-9);
      }
      EXPECT_NEAR(m.online_cost(), online, 1e-9);
    }
  }
}

TEST(NetCost, CompetitiveOnLargerInstances) {
  RngStream rng(32);
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t n = 10 + rng.uniform_index(30);
    const auto inst = oracle::random_instance(rng, n, iter);
    NetCostMatcher m(1.0);
    const auto tr = run(m, inst);
    EXPECT_LE(tr.total_cost, (2.0 * n - 1.0) * tr.opt_cost + 1e-9);
    EXPECT_NEAR(m.offline_cost(), tr.opt_cost, 1e-9);
    EXPECT_EQ(m.check_feasibility(), "");
  }
}

}  // namespace
}  // namespace pmatch
