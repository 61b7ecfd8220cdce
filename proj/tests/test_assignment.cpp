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

#include <limits>
#include <set>

#include "oracle.hpp"
#include "pmatch/assignment.hpp"
#include "pmatch/instance.hpp"

namespace pmatch {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

void expect_valid(const CostMatrix& m, const Matching& mt) {
  std::set<int> left, right;
  for (auto [l, r] : mt.pairs) {
    EXPECT_TRUE(left.insert(l).second);
    EXPECT_TRUE(right.insert(r).second);
  }
  EXPECT_EQ(mt.pairs.size(), m.rows());
  EXPECT_NEAR(mt.cost, oracle::matching_cost(m, mt), 1e-9);
}

TEST(Perfect, SmallExamples) {
  auto one = solve_min_cost_perfect(CostMatrix(std::vector<std::vector<double>>{{0.0}}));
  EXPECT_EQ(one.pairs, (Pairs{{0, 0}}));
  EXPECT_EQ(one.cost, 0.0);

  auto two = solve_min_cost_perfect(CostMatrix({{1, 2}, {2, 1}}));
  EXPECT_EQ(two.pairs, (Pairs{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(two.cost, 2.0);

  CostMatrix eye(4, 4, 1.0);
  for (int i = 0; i < 4; ++i) eye(i, i) = 0.0;
  auto diag = solve_min_cost_perfect(eye);
  EXPECT_EQ(diag.pairs, (Pairs{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(diag.cost, 0.0);

  EXPECT_EQ(solve_min_cost_perfect(CostMatrix()).pairs.size(), 0u);
}

TEST(Perfect, RejectsBadInput) {
  EXPECT_THROW(solve_min_cost_perfect(CostMatrix(2, 3)), UsageError);
  CostMatrix inf(2, 2);
  inf(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(solve_min_cost_perfect(inf), UsageError);
  inf(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(solve_min_cost_perfect(inf), UsageError);
}

// Integral matrices have many tied optima; real ones exercise the potentials.
TEST(Perfect, MatchesPermutationSearch) {
  RngStream rng(1);
  for (int iter = 0; iter < 400; ++iter) {
    const std::size_t n = 1 + rng.uniform_index(7);
    const auto m = oracle::random_matrix(rng, n, n, iter % 2 == 0);
    const auto mt = solve_min_cost_perfect(m);
    expect_valid(m, mt);
    EXPECT_NEAR(mt.cost, oracle::brute_perfect(m), 1e-9);
  }
}

TEST(Perfect, DeterministicOnRepeat) {
  RngStream rng(2);
  const auto m = oracle::random_matrix(rng, 6, 6, true);
  EXPECT_EQ(solve_min_cost_perfect(m).pairs, solve_min_cost_perfect(m).pairs);
}

TEST(Saturating, Examples) {
  auto a = solve_left_saturating(CostMatrix({{3, 1}}));
  EXPECT_EQ(a.pairs, (Pairs{{0, 1}}));
  EXPECT_DOUBLE_EQ(a.cost, 1.0);
  auto b = solve_left_saturating(CostMatrix({{1, 5, 5}, {5, 1, 5}}));
  EXPECT_EQ(b.pairs, (Pairs{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(b.cost, 2.0);
  CostMatrix sq({{4, 1}, {2, 3}});
  EXPECT_EQ(solve_left_saturating(sq).pairs, solve_min_cost_perfect(sq).pairs);
  EXPECT_THROW(solve_left_saturating(CostMatrix(3, 2)), UsageError);
}

TEST(Saturating, MatchesEnumeration) {
  RngStream rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t c = 1 + rng.uniform_index(7);
    const std::size_t r = 1 + rng.uniform_index(c);
    const auto m = oracle::random_matrix(rng, r, c, iter % 3 == 0);
    const auto mt = solve_left_saturating(m);
    expect_valid(m, mt);
    EXPECT_NEAR(mt.cost, oracle::brute_saturating(m), 1e-9);
  }
}

TEST(Constrained, Examples) {
  auto s = MetricSpace::line({0, 1, 2, 3, 4, 5});
  auto a = constrained_identity_matching(s, Configuration({1, 2}), Configuration({2, 3}));
  // Positions: left {1, 2}, right {2, 3}; 2 pinned, residual 1 <-> 3.
  EXPECT_EQ(a.pairs, (Pairs{{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(a.cost, 2.0);

  auto b = constrained_identity_matching(s, Configuration({4, 1}), Configuration({1, 4}));
  EXPECT_EQ(b.cost, 0.0);

  auto c = constrained_identity_matching(s, Configuration({0, 5}), Configuration({5, 5}));
  EXPECT_DOUBLE_EQ(c.cost, 5.0);

  EXPECT_THROW(constrained_identity_matching(s, Configuration(std::vector<PointId>{0}), Configuration()),
               UsageError);
}

// Pinning by key means co-located but distinct objects are not forced
// together, while equal keys always are.
TEST(Constrained, PinsByKey) {
  auto s = MetricSpace::line({0, 0, 7});
  std::vector<MatchItem> left{{10, 0}, {11, 2}};
  std::vector<MatchItem> right{{11, 2}, {12, 1}};
  auto m = constrained_identity_matching(s, left, right);
  EXPECT_EQ(m.pairs, (Pairs{{0, 1}, {1, 0}}));
  EXPECT_EQ(m.cost, 0.0);
}

// Pinning never beats the free optimum, ties it when there is nothing to
// pin, and by the padding identity always equals it on point multisets.
TEST(Constrained, AgainstFreeOptimum) {
  RngStream rng(4);
  for (int iter = 0; iter < 300; ++iter) {
    auto s = oracle::random_space(rng, 6, iter);
    const std::size_t k = 1 + rng.uniform_index(6);
    std::vector<PointId> a(k), b(k);
    for (auto& p : a) p = static_cast<PointId>(rng.uniform_index(s->size()));
    for (auto& p : b) p = static_cast<PointId>(rng.uniform_index(s->size()));
    const Configuration ca(a), cb(b);
    const auto m = constrained_identity_matching(*s, ca, cb);
    const double free = oracle::brute_dist(*s, a, b);
    EXPECT_GE(m.cost, free - 1e-9);
    EXPECT_NEAR(m.cost, free, 1e-9);
    const std::size_t pinned = multiset_intersection(ca, cb).size();
    std::size_t same = 0;
    for (auto [l, r] : m.pairs) same += ca.elements[l] == cb.elements[r];
    EXPECT_GE(same, pinned);
  }
}

TEST(OfflineOpt, Examples) {
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::line({0, 10, 1, 9}));
  inst.servers = {0, 1};
  inst.requests = {2, 3};
  const auto opt = offline_opt(inst);
  EXPECT_DOUBLE_EQ(opt.cost, 2.0);
  EXPECT_EQ(opt.prefix(1), (std::vector<ServerId>{0}));
  EXPECT_EQ(opt.prefix(2), (std::vector<ServerId>{0, 1}));
  EXPECT_THROW(opt.prefix(3), UsageError);

  inst.requests = {1, 0};
  EXPECT_EQ(offline_opt(inst).cost, 0.0);

  Instance bad = inst;
  bad.requests = {0};
  EXPECT_THROW(offline_opt(bad), UsageError);
}

TEST(OfflineOpt, PrefixesNestedAndOptimal) {
  RngStream rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const auto inst = oracle::random_instance(rng, 1 + rng.uniform_index(7), iter);
    const auto opt = offline_opt(inst);
    EXPECT_NEAR(opt.cost,
                oracle::brute_dist(*inst.space, inst.requests, inst.servers), 1e-9);
    std::vector<ServerId> prev;
    for (std::size_t t = 1; t <= inst.n(); ++t) {
      const auto cur = opt.prefix(t);
      ASSERT_EQ(cur.size(), t);
      EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }
}

}  // namespace
}  // namespace pmatch
