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
#include "pmatch/ftp.hpp"
#include "pmatch/online.hpp"
#include "pmatch/parsimonious.hpp"

namespace pmatch {
namespace {

Transcript play(const MatcherFactory& f, const Instance& inst,
                std::shared_ptr<const OptimalReference> opt, PredictionOracle* o,
                std::uint64_t seed = 0) {
  auto m = f();
  return run(*m, inst, {.seed = seed, .oracle = o, .opt = opt.get()});
}

TEST(Meta, WorkedExampleKTwo) {
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(
      MetricSpace::line({0, 4, 10, 14, 1, 5, 11, 13}));
  inst.servers = {0, 1, 2, 3};
  inst.requests = {4, 5, 6, 7};
  auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
  ASSERT_DOUBLE_EQ(opt->cost, 4.0);
  PerfectOracle o(opt);
  const auto tr = play(meta_factory(2, "det-general"), inst, opt, &o);
  EXPECT_EQ(tr.query_rounds, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(tr.eta(), 0.0);
  // Hand simulation: every round is served by its optimal partner.
  for (std::size_t t = 0; t < 4; ++t)
    EXPECT_EQ(tr.assignments[t].server, static_cast<ServerId>(t));
  EXPECT_DOUBLE_EQ(tr.total_cost, 4.0);
  EXPECT_LE(tr.total_cost, 3.0 * opt->cost + 4.0 * tr.eta());
}

TEST(Meta, KOneIsFtp) {
  RngStream rng(61);
  for (int iter = 0; iter < 30; ++iter) {
    const auto inst = oracle::random_instance(rng, 2 + rng.uniform_index(15), iter);
    auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
    const double r = noise_scale_stats(*inst.space).d_med;
    NoisyOracle a(inst, opt, r, RngStream(iter)), b(inst, opt, r, RngStream(iter));
    const auto meta = play(meta_factory(1, "det-general"), inst, opt, &a);
    const auto ftp = play([] { return std::make_unique<FtpMatcher>(); }, inst, opt, &b);
    ASSERT_EQ(meta.assignments.size(), ftp.assignments.size());
    for (std::size_t t = 0; t < meta.assignments.size(); ++t)
      EXPECT_EQ(meta.assignments[t].server, ftp.assignments[t].server);
    EXPECT_EQ(meta.query_rounds, ftp.query_rounds);
  }
}

TEST(Meta, NoQueriesWhenKExceedsN) {
  RngStream rng(62);
  const auto inst = oracle::random_instance(rng, 9, 0);
  auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
  const auto tr = play(meta_factory(10, "det-general"), inst, opt, nullptr);
  EXPECT_TRUE(tr.query_rounds.empty());
  EXPECT_EQ(tr.assignments.size(), 9u);
}

// Predictions handed to FtP are feasible, virtual ones grow by one server
// inside a phase, and the oracle is asked exactly at k, 2k, ...
TEST(Meta, VirtualPredictionsAndSchedule) {
  RngStream rng(63);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 2 + rng.uniform_index(20);
    const std::size_t k = 1 + rng.uniform_index(6);
    const auto inst = oracle::random_instance(rng, n, iter);
    auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
    NoisyOracle o(inst, opt, noise_scale_stats(*inst.space).d_min, RngStream(iter));
    const std::string preset = preset_names()[iter % 2 == 0 ? 0 : 4];
    auto made = meta_factory(k, preset)();
    auto& meta = dynamic_cast<MetaMatcher&>(*made);
    OnlineSession session(meta, inst, iter, &o);
    std::vector<ServerId> prev;
    for (std::size_t t = 1; t <= n; ++t) {
      session.serve(inst.requests[t - 1]);
      std::vector<ServerId> cur = meta.last_prediction();
      std::sort(cur.begin(), cur.end());
      ASSERT_NO_THROW(validate_prediction({t, cur}, t, n));
      EXPECT_EQ(meta.last_round_queried(), t % k == 0);
      if (t % k != 0) {
        EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      }
      prev = cur;
    }
    const auto tr = session.finish(inst, opt.get());
    std::vector<std::size_t> expected;
    for (std::size_t t = k; t <= n; t += k) expected.push_back(t);
    EXPECT_EQ(tr.query_rounds, expected);
  }
}

// cost <= (2k - 1) opt + 2k eta(Q) for the gamma = 1 subroutine.
TEST(Meta, DeterministicBound) {
  RngStream rng(64);
  for (int iter = 0; iter < 30; ++iter) {
    const auto inst = oracle::random_instance(rng, 5 + rng.uniform_index(36), iter);
    auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
    for (std::size_t k : {1, 2, 3, 5}) {
      PerfectOracle perfect(opt);
      NoisyOracle noisy(inst, opt, noise_scale_stats(*inst.space).d_min, RngStream(k));
      for (PredictionOracle* o : {static_cast<PredictionOracle*>(&perfect),
                                  static_cast<PredictionOracle*>(&noisy)}) {
        const auto tr = play(meta_factory(k, "det-general"), inst, opt, o);
        const double bound = (2.0 * k - 1.0) * opt->cost + 2.0 * k * tr.eta();
        EXPECT_LE(tr.total_cost, bound + 1e-9 * std::max(1.0, bound))
            << "k=" << k << " iter=" << iter;
      }
    }
  }
}

TEST(Meta, PresetKindChecks) {
  EXPECT_THROW(make_preset("nope"), UsageError);
  EXPECT_THROW(meta_factory(2, "nope"), UsageError);
  EXPECT_THROW(MetaMatcher(0, make_preset("line")), UsageError);
  RngStream rng(65);
  const auto plane = oracle::random_instance(rng, 6, 1);
  auto opt = std::make_shared<const OptimalReference>(offline_opt(plane));
  PerfectOracle o(opt);
  EXPECT_THROW(play(meta_factory(2, "line"), plane, opt, &o), UsageError);
  EXPECT_THROW(play(meta_factory(2, "hst-2"), plane, opt, &o), UsageError);
  EXPECT_NO_THROW(play(meta_factory(2, "general-randomized"), plane, opt, &o));
  EXPECT_NO_THROW(play(meta_factory(2, "det-general-3"), plane, opt, &o));
  const auto hst = oracle::random_instance(rng, 6, 4);
  auto hopt = std::make_shared<const OptimalReference>(offline_opt(hst));
  PerfectOracle ho(hopt);
  EXPECT_NO_THROW(play(meta_factory(2, "hst-2"), hst, hopt, &ho));
}

}  // namespace
}  // namespace pmatch
