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

#include "pmatch/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pmatch/parallel.hpp"

namespace pmatch {

namespace {

// One-sided 99% normal quantile, used as the slack on Monte Carlo means.
constexpr double kZ99 = 2.326;

std::vector<ServerId> taken_servers(const OnlineSession& session,
                                    std::size_t n) {
  std::vector<ServerId> out;
  for (std::size_t s = 0; s < n; ++s)
    if (session.taken(static_cast<ServerId>(s)))
      out.push_back(static_cast<ServerId>(s));
  return out;
}

Prediction make_prediction(std::size_t t, std::vector<ServerId> servers) {
  std::sort(servers.begin(), servers.end());
  return {t, std::move(servers)};
}

struct Played {
  Transcript transcript;
  std::vector<PointId> requests;
  std::vector<Prediction> predictions;
  double forced_opt = 0.0;
};

Played close_game(OnlineSession& session, const StarSetting& star,
                  std::vector<PointId> requests, double forced_opt) {
  Instance played = star.frame();
  played.requests = requests;
  const OptimalReference opt = offline_opt(played);
  if (std::abs(opt.cost - forced_opt) > kTolerance)
    throw std::logic_error("adversary: solver optimum " +
                           std::to_string(opt.cost) +
                           " differs from the forced value " +
                           std::to_string(forced_opt));
  Played out;
  out.transcript = session.finish(played, &opt);
  out.requests = std::move(requests);
  out.predictions = session.queried();
  out.forced_opt = forced_opt;
  return out;
}

AdversaryReport single_report(std::string variant, std::size_t n,
                              std::size_t param, const Played& game,
                              double bound) {
  AdversaryReport r;
  r.variant = std::move(variant);
  r.n = n;
  r.param = param;
  r.algorithm = game.transcript.algorithm;
  r.requests = game.requests;
  r.predictions = game.predictions;
  r.queries = game.predictions.size();
  r.mean_cost = game.transcript.total_cost;
  r.mean_opt = game.transcript.opt_cost;
  r.mean_ratio = r.mean_cost / r.mean_opt;
  r.forced_opt = game.forced_opt;
  r.theory_bound = bound;
  r.pass = r.mean_ratio >= bound - kTolerance;
  return r;
}

class BudgetOracle : public PredictionOracle {
 public:
  BudgetOracle(std::size_t n, std::size_t budget)
      : predicted(n, false), n_(n), budget_(budget) {}

  Prediction query(std::size_t t) override {
    if (++used_ > budget_)
      throw ContractViolation("algorithm exceeded its query budget of " +
                              std::to_string(budget_));
    ServerId p = -1;
    for (std::size_t s = 0; s < n_ && p < 0; ++s)
      if (predicted[s] && !session->taken(static_cast<ServerId>(s)))
        p = static_cast<ServerId>(s);
    for (std::size_t s = 0; s < n_ && p < 0; ++s)
      if (!session->taken(static_cast<ServerId>(s)))
        p = static_cast<ServerId>(s);
    predicted[p] = true;
    std::vector<ServerId> servers = taken_servers(*session, n_);
    servers.push_back(p);
    return make_prediction(t, std::move(servers));
  }

  const OnlineSession* session = nullptr;
  std::vector<bool> predicted;

 private:
  std::size_t n_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

class WellSepOracle : public PredictionOracle {
 public:
  explicit WellSepOracle(std::size_t n) : requested(n, false) {}

  Prediction query(std::size_t t) override {
    const std::size_t n = requested.size();
    if (partner < 0)
      for (std::size_t s = 0; s < n && partner < 0; ++s)
        if (!requested[s] && !session->taken(static_cast<ServerId>(s)))
          partner = static_cast<ServerId>(s);
    std::vector<ServerId> servers{partner};
    for (std::size_t s = 0; s < n; ++s)
      if (requested[s]) servers.push_back(static_cast<ServerId>(s));
    return make_prediction(t, std::move(servers));
  }

  const OnlineSession* session = nullptr;
  std::vector<bool> requested;
  ServerId partner = -1;
};

class RandBudgetOracle : public PredictionOracle {
 public:
  RandBudgetOracle(std::size_t n, std::size_t budget, RngStream* rng)
      : requested(n, false), predicted(n, false), budget_(budget), rng_(rng) {}

  Prediction query(std::size_t t) override {
    const std::size_t n = requested.size();
    if (t < n && ++counted > budget_)
      throw ContractViolation("algorithm exceeded its query budget of " +
                              std::to_string(budget_));
    std::vector<ServerId> open;
    for (std::size_t s = 0; s < n; ++s)
      if (!requested[s] && !predicted[s]) open.push_back(static_cast<ServerId>(s));
    if (open.empty()) throw std::logic_error("adversary: no leaf left to predict");
    predicted[open[rng_->uniform_index(open.size())]] = true;
    std::vector<ServerId> servers;
    for (std::size_t s = 0; s < n; ++s)
      if (requested[s] || predicted[s]) servers.push_back(static_cast<ServerId>(s));
    restart = true;
    return make_prediction(t, std::move(servers));
  }

  std::vector<bool> requested;
  std::vector<bool> predicted;
  bool restart = false;
  // Queries made before round n.
  std::size_t counted = 0;

 private:
  std::size_t budget_;
  RngStream* rng_;
};

Played rand_trial(const MatcherFactory& factory, const StarSetting& star,
                  RandVariant variant, RngStream trial_rng) {
  const std::size_t n = star.n;
  RngStream pick = trial_rng.split("adversary");
  const std::uint64_t matcher_seed = trial_rng.split("matcher").seed();
  auto matcher = factory();

  if (variant.kind == RandVariant::Kind::kBudget) {
    RandBudgetOracle oracle(n, variant.param, &pick);
    OnlineSession session(*matcher, star.frame(), matcher_seed, &oracle);
    std::vector<PointId> requests;
    std::size_t centers = 0;
    for (std::size_t t = 1; t <= n; ++t) {
      PointId r = StarSetting::center();
      if (t == 1 || oracle.restart) {
        oracle.restart = false;
        ++centers;
      } else {
        std::vector<ServerId> open;
        for (std::size_t s = 0; s < n; ++s)
          if (!oracle.requested[s] && !oracle.predicted[s])
            open.push_back(static_cast<ServerId>(s));
        const ServerId s = open[pick.uniform_index(open.size())];
        oracle.requested[s] = true;
        r = StarSetting::leaf_of(s);
      }
      requests.push_back(r);
      session.serve(r);
    }
    return close_game(session, star, std::move(requests),
                      static_cast<double>(centers));
  }

  const std::size_t k = variant.kind == RandVariant::Kind::kWellSeparated
                            ? variant.param
                            : n;
  std::vector<ServerId> open(n);
  for (std::size_t s = 0; s < n; ++s) open[s] = static_cast<ServerId>(s);
  auto draw_leaf = [&] {
    const std::size_t i = pick.uniform_index(open.size());
    const ServerId s = open[i];
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
    return StarSetting::leaf_of(s);
  };
  std::vector<PointId> requests;
  for (std::size_t t = 0; t < n - k; ++t) requests.push_back(draw_leaf());
  requests.push_back(StarSetting::center());
  while (requests.size() < n) requests.push_back(draw_leaf());

  Instance played = star.frame();
  played.requests = requests;
  auto opt = std::make_shared<const OptimalReference>(offline_opt(played));
  PerfectOracle oracle(opt);
  OnlineSession session(*matcher, star.frame(), matcher_seed, &oracle);
  for (PointId r : requests) session.serve(r);
  return close_game(session, star, std::move(requests), 1.0);
}

}  // namespace

double harmonic(std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

StarSetting StarSetting::make(std::size_t n) {
  if (n == 0) throw UsageError("star: n must be positive");
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n + 1, 2.0));
  for (std::size_t i = 0; i <= n; ++i) {
    d[i][i] = 0.0;
    d[0][i] = d[i][0] = i == 0 ? 0.0 : 1.0;
  }
  StarSetting star;
  star.n = n;
  star.space =
      std::make_shared<const MetricSpace>(MetricSpace::explicit_matrix(d));
  for (std::size_t s = 0; s < n; ++s)
    star.servers.push_back(leaf_of(static_cast<ServerId>(s)));
  return star;
}

Instance StarSetting::frame() const {
  Instance inst;
  inst.space = space;
  inst.servers = servers;
  inst.label = "star-" + std::to_string(n);
  return inst;
}

AdversaryReport run_det_budget(const MatcherFactory& factory, std::size_t n,
                               std::size_t budget, std::uint64_t seed) {
  const StarSetting star = StarSetting::make(n);
  auto matcher = factory();
  BudgetOracle oracle(n, budget);
  OnlineSession session(*matcher, star.frame(), seed, &oracle);
  oracle.session = &session;
  std::vector<bool> requested(n, false);
  std::vector<PointId> requests;
  std::size_t centers = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    PointId r = StarSetting::center();
    for (std::size_t s = 0; s < n; ++s)
      if (session.taken(static_cast<ServerId>(s)) && !oracle.predicted[s] &&
          !requested[s]) {
        requested[s] = true;
        r = StarSetting::leaf_of(static_cast<ServerId>(s));
        break;
      }
    if (r == StarSetting::center()) ++centers;
    requests.push_back(r);
    session.serve(r);
  }
  const Played game = close_game(session, star, std::move(requests),
                                 static_cast<double>(centers));
  const double bound = 2.0 * static_cast<double>(n) /
                           static_cast<double>(budget + 1) -
                       1.0;
  return single_report("det-budget", n, budget, game, bound);
}

AdversaryReport run_det_wellsep(const MatcherFactory& factory, std::size_t n,
                                std::size_t k, std::uint64_t seed) {
  if (k < 1) throw UsageError("det-wellsep: k must be at least 1");
  const StarSetting star = StarSetting::make(n);
  auto matcher = factory();
  WellSepOracle oracle(n);
  OnlineSession session(*matcher, star.frame(), seed, &oracle);
  oracle.session = &session;
  std::vector<PointId> requests;
  ServerId last = -1;
  for (std::size_t t = 1; t <= n; ++t) {
    PointId r = StarSetting::center();
    if (t >= 2 && t <= k) {
      r = StarSetting::leaf_of(last);
      oracle.requested[last] = true;
    } else if (t > k) {
      for (std::size_t s = 0; s < n; ++s)
        if (!oracle.requested[s] && static_cast<ServerId>(s) != oracle.partner) {
          oracle.requested[s] = true;
          r = StarSetting::leaf_of(static_cast<ServerId>(s));
          break;
        }
    }
    requests.push_back(r);
    last = session.serve(r);
  }
  const Played game = close_game(session, star, std::move(requests), 1.0);
  return single_report("det-wellsep", n, k, game,
                       2.0 * static_cast<double>(k) - 1.0);
}

AdversaryReport run_rand_star(const MatcherFactory& factory, std::size_t n,
                              RandVariant variant, std::size_t trials,
                              std::uint64_t seed, std::size_t jobs) {
  if (trials == 0) throw UsageError("rand-star: trials must be positive");
  std::string name = "rand-plain";
  std::size_t played_n = n;
  if (variant.kind == RandVariant::Kind::kBudget) {
    name = "rand-budget";
  } else if (variant.kind == RandVariant::Kind::kWellSeparated) {
    name = "rand-wellsep";
    if (variant.param < 1) throw UsageError("rand-wellsep: k must be >= 1");
    played_n = (n + variant.param - 1) / variant.param * variant.param;
  }
  const StarSetting star = StarSetting::make(played_n);
  const RngStream root(seed);

  std::vector<std::optional<Played>> games(trials);
  parallel_for(trials, jobs, [&](std::size_t i) {
    games[i] = rand_trial(factory, star, variant, root.split(i));
  });

  AdversaryReport r;
  r.variant = name;
  r.n = played_n;
  r.param = variant.kind == RandVariant::Kind::kPlain ? 0 : variant.param;
  r.trials = trials;
  r.algorithm = games[0]->transcript.algorithm;
  r.requests = games[0]->requests;
  r.predictions = games[0]->predictions;
  r.queries = r.predictions.size();
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& g : games) {
    if (g->predictions.size() != r.queries)
      throw ContractViolation("rand-star: query schedule differs between "
                              "trials");
    const double ratio = g->transcript.total_cost / g->transcript.opt_cost;
    r.mean_cost += g->transcript.total_cost;
    r.mean_opt += g->transcript.opt_cost;
    sum += ratio;
    sum_sq += ratio * ratio;
  }
  const double m = static_cast<double>(trials);
  r.mean_cost /= m;
  r.mean_opt /= m;
  r.mean_ratio = sum / m;
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - m * r.mean_ratio * r.mean_ratio) / (m - 1.0));
    r.ratio_stderr = std::sqrt(var / m);
  }
  r.forced_opt = games[0]->forced_opt;

  switch (variant.kind) {
    case RandVariant::Kind::kPlain:
      r.theory_bound = 2.0 * harmonic(played_n) - 1.0;
      break;
    case RandVariant::Kind::kWellSeparated:
      r.theory_bound = 2.0 * harmonic(variant.param) - 1.0;
      break;
    case RandVariant::Kind::kBudget: {
      // q: queries before round n; q + 1 requests go to the center.
      const std::size_t q = static_cast<std::size_t>(r.forced_opt) - 1;
      r.theory_bound = 1.0 + 2.0 * (harmonic(played_n) - harmonic(q + 1)) /
                                 static_cast<double>(q + 1);
      break;
    }
  }
  r.pass = r.mean_ratio >= r.theory_bound - kZ99 * r.ratio_stderr - kTolerance;
  return r;
}

}  // namespace pmatch
