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

#include <set>

#include "oracle.hpp"
#include "pmatch/predictions.hpp"

namespace pmatch {
namespace {

Instance two_servers() {
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::line({0, 10, 1, 9}));
  inst.servers = {0, 1};
  inst.requests = {2, 3};
  return inst;
}

TEST(Perfect, ReturnsOptimalPrefixes) {
  const auto inst = two_servers();
  auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
  PerfectOracle o(opt);
  EXPECT_EQ(o.query(1).servers, (std::vector<ServerId>{0}));
  EXPECT_EQ(o.query(2).servers, (std::vector<ServerId>{0, 1}));
  EXPECT_EQ(prediction_error(inst, *opt, o.query(1)), 0.0);
  EXPECT_THROW(o.query(0), UsageError);
  EXPECT_THROW(o.query(3), UsageError);
}

TEST(Error, PinsCommonServers) {
  // O_2 = {0, 10}; P_2 = {1, 10}: 10 pinned, residual 0 <-> 1.
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::line({0, 10, 1, 0, 10, 1}));
  inst.servers = {0, 1, 2};
  inst.requests = {3, 4, 5};
  OptimalReference opt;
  opt.server_of_request = {0, 1, 2};
  EXPECT_DOUBLE_EQ(prediction_error(inst, opt, {2, {1, 2}}), 1.0);
  EXPECT_EQ(prediction_error(inst, opt, {2, {0, 1}}), 0.0);
  EXPECT_THROW(prediction_error(inst, opt, {2, {1}}), UsageError);
  EXPECT_THROW(prediction_error(inst, opt, {2, {1, 1}}), UsageError);
}

TEST(Validate, Rules) {
  EXPECT_NO_THROW(validate_prediction({2, {0, 3}}, 2, 4));
  EXPECT_THROW(validate_prediction({2, {0, 4}}, 2, 4), UsageError);
  EXPECT_THROW(validate_prediction({2, {0}}, 2, 4), UsageError);
  EXPECT_THROW(validate_prediction({2, {1, 1}}, 2, 4), UsageError);
}

TEST(Noisy, ZeroRadiusIsPerfect) {
  RngStream rng(41);
  for (int iter = 0; iter < 40; ++iter) {
    const auto inst = oracle::random_instance(rng, 2 + rng.uniform_index(10), iter);
    auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
    NoisyOracle noisy(inst, opt, 0.0, rng.split(iter));
    PerfectOracle perfect(opt);
    std::set<PointId> distinct(inst.servers.begin(), inst.servers.end());
    for (std::size_t t = 1; t <= inst.n(); ++t) {
      const auto p = noisy.query(t);
      EXPECT_EQ(prediction_error(inst, *opt, p), 0.0);
      if (distinct.size() == inst.n()) {
        EXPECT_EQ(p.servers, perfect.query(t).servers);
      }
    }
  }
  EXPECT_THROW(NoisyOracle(two_servers(), nullptr, -1.0, RngStream(0)), UsageError);
}

// |P_t| = t distinct servers, dist(O_t, P_t) <= 2tr, and P_n = S.
TEST(Noisy, SizeAndErrorBound) {
  RngStream rng(42);
  for (int iter = 0; iter < 60; ++iter) {
    const auto inst = oracle::random_instance(rng, 2 + rng.uniform_index(14), iter);
    auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
    const auto scale = noise_scale_stats(*inst.space);
    for (double r : {scale.d_min, 0.5 * (scale.d_min + scale.d_med), scale.d_med}) {
      NoisyOracle o(inst, opt, r, rng.split(iter));
      for (std::size_t t = 1; t <= inst.n(); ++t) {
        const auto p = o.query(t);
        ASSERT_NO_THROW(validate_prediction(p, t, inst.n()));
        EXPECT_LE(prediction_error(inst, *opt, p), 2.0 * t * r + 1e-9);
      }
      std::vector<ServerId> all(inst.n());
      for (std::size_t s = 0; s < inst.n(); ++s) all[s] = static_cast<ServerId>(s);
      EXPECT_EQ(o.query(inst.n()).servers, all);
    }
  }
}

// A round's prediction depends only on (oracle seed, t), not on the order or
// set of rounds queried before it.
TEST(Noisy, RoundsAreIndependentlySeeded) {
  RngStream rng(43);
  const auto inst = oracle::random_instance(rng, 12, 1);
  auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
  const double r = noise_scale_stats(*inst.space).d_med;
  NoisyOracle a(inst, opt, r, RngStream(8)), b(inst, opt, r, RngStream(8));
  for (std::size_t t = 1; t <= 12; ++t) a.query(t);
  EXPECT_EQ(a.query(7).servers, b.query(7).servers);
  EXPECT_EQ(a.query(3).servers, b.query(3).servers);
  EXPECT_EQ(b.query(7).servers, b.query(7).servers);
}

}  // namespace
}  // namespace pmatch
