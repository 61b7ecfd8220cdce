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

#ifndef PMATCH_ADVERSARY_HPP_
#define PMATCH_ADVERSARY_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pmatch/instance.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// n servers on the leaves of a star with unit center-leaf edges. Point 0 is
// the center and server s sits on leaf point s + 1.
struct StarSetting {
  std::size_t n = 0;
  std::shared_ptr<const MetricSpace> space;
  std::vector<PointId> servers;

  static StarSetting make(std::size_t n);
  static constexpr PointId center() { return 0; }
  static PointId leaf_of(ServerId s) { return s + 1; }
  Instance frame() const;
};

struct AdversaryReport {
  std::string variant;
  std::size_t n = 0;
  // B for budget variants, k for well-separated ones, 0 otherwise.
  std::size_t param = 0;
  std::string algorithm;
  std::size_t trials = 1;

  // Requests and answered predictions of the first trial.
  std::vector<PointId> requests;
  std::vector<Prediction> predictions;
  std::size_t queries = 0;

  double mean_cost = 0.0;
  double mean_opt = 0.0;
  double mean_ratio = 0.0;
  // Standard error of mean_ratio (0 for single-trial variants).
  double ratio_stderr = 0.0;
  // Opt cost forced by the construction, checked against the solver on
  // every trial.
  double forced_opt = 0.0;
  double theory_bound = 0.0;
  bool pass = false;
};

double harmonic(std::size_t n);

// Adaptive adversary against algorithms making at most B queries: request a
// matched server that is neither predicted nor requested, else the center;
// answer queries with S_{t-1} plus the standing predicted unmatched server
// (or a fresh unmatched one). Throws ContractViolation past B queries.
AdversaryReport run_det_budget(const MatcherFactory& factory, std::size_t n,
                               std::size_t budget, std::uint64_t seed = 0);

// Center first, then chase the most recently matched server until round k,
// then untouched leaves. The center's partner is fixed at the first query.
AdversaryReport run_det_wellsep(const MatcherFactory& factory, std::size_t n,
                                std::size_t k, std::uint64_t seed = 0);

struct RandVariant {
  enum class Kind { kPlain, kBudget, kWellSeparated };
  Kind kind = Kind::kPlain;
  // B or k.
  std::size_t param = 0;
};

// Randomized star adversaries, averaged over independent trials.
//   plain:  center, then uniformly random unrequested leaves.
//   budget: plain, restarted with a new center request after every query;
//           predicted servers count as requested.
//   wellsep: n is rounded up to a multiple of k; random leaves for the
//           first n - k rounds, then plain on the remaining k servers.
AdversaryReport run_rand_star(const MatcherFactory& factory, std::size_t n,
                              RandVariant variant, std::size_t trials,
                              std::uint64_t seed, std::size_t jobs = 1);

}  // namespace pmatch

#endif  // PMATCH_ADVERSARY_HPP_
