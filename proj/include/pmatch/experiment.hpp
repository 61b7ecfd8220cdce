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

#ifndef PMATCH_EXPERIMENT_HPP_
#define PMATCH_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmatch/instance.hpp"
#include "pmatch/instances.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// Algorithms known to the experiment harness: ours, comp, comb-comp, greedy,
// comb-greedy, bbgn, ours-rand.
const std::vector<std::string>& known_algorithms();
bool algorithm_uses_oracle(const std::string& name);

// Factory for a named algorithm at separation k. Throws UsageError for
// unknown names.
MatcherFactory algorithm_factory(const std::string& name, std::size_t k);

// Runs one algorithm and reports costs in the instance's own metric.
// Combination algorithms run on the instance rescaled to opt = 1 and are
// unscaled afterwards. Returns nullopt when opt is zero.
std::optional<Transcript> run_algorithm(const std::string& name, std::size_t k,
                                        const Instance& instance,
                                        const OptimalReference& opt,
                                        PredictionOracle* oracle,
                                        std::uint64_t seed);

struct ExperimentConfig {
  std::string experiment = "exp1";
  std::vector<InstanceClass> classes{InstanceClass::kLine,
                                     InstanceClass::kPlane};
  std::vector<std::string> algorithms{"ours", "comp", "comb-comp", "greedy",
                                      "comb-greedy"};
  std::vector<std::size_t> ks;
  std::size_t instances = 0;
  std::size_t predictions = 20;
  std::size_t radii = 10;
  // exp2: add a radius-0 column (noisy predictions equal perfect ones).
  bool zero_radius = false;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t trials = 10000;
  std::size_t jobs = 1;
  // embed-check
  std::size_t metrics = 5;
  std::size_t points = 32;
  std::size_t embeddings = 200;
  // Generator settings shared by all classes (seed is overridden).
  GenConfig gen;
};

// Desk-scale defaults: exp1 uses 20 instances and k = 1..20; exp2 one
// instance per class, 20 predictions, 10 radii and k in {1, 5, 10, 20}.
ExperimentConfig default_config(const std::string& experiment);

// Overrides fields present in a JSON document (same names as the CLI
// flags, with "taxi_csv" and "taxi_date" for the taxi source).
void apply_json(ExperimentConfig& config, const nlohmann::json& doc);

// Parses "1-20", "1,5,10,20" or mixtures such as "1-3,8".
std::vector<std::size_t> parse_k_list(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  // Index of a header column; throws UsageError if missing.
  std::size_t column(const std::string& name) const;
};

// 12 significant digits, '.' decimal separator.
std::string format_number(double value);

// Seed of replicate `index` of a class, shared by exp1 and exp2 so both
// families see the same instances.
std::uint64_t instance_seed(std::uint64_t base, InstanceClass cls,
                            std::size_t index);
std::vector<Instance> build_instances(const ExperimentConfig& config,
                                      InstanceClass cls);

// Columns: experiment, class, instance_id, seed, k, algorithm, cost,
// opt_cost, ratio.
CsvTable run_exp1(const ExperimentConfig& config);
// exp1 columns plus noise_radius, noise_norm, prediction_id, eta_Q.
CsvTable run_exp2(const ExperimentConfig& config);
// Columns: variant, n, param, algorithm, trials, mean_ratio, theory_bound,
// pass.
CsvTable run_adversary_check(const ExperimentConfig& config);
// Columns: metric_id, points, embeddings, max_pair_distortion,
// mean_pair_distortion, bound, dominance_violations, invariant_failures,
// pass.
CsvTable run_embed_check(const ExperimentConfig& config);

CsvTable run_experiment(const ExperimentConfig& config);

}  // namespace pmatch

#endif  // PMATCH_EXPERIMENT_HPP_
