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

#ifndef PMATCH_PREDICTIONS_HPP_
#define PMATCH_PREDICTIONS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "pmatch/common.hpp"
#include "pmatch/instance.hpp"
#include "pmatch/rng.hpp"

namespace pmatch {

// A predicted set of exactly `round` distinct servers.
struct Prediction {
  std::size_t round = 0;
  // Ascending server ids.
  std::vector<ServerId> servers;
};

// Throws UsageError unless the prediction names t distinct servers < n.
void validate_prediction(const Prediction& p, std::size_t t, std::size_t n);

class PredictionOracle {
 public:
  virtual ~PredictionOracle() = default;
  // Prediction for round t (1-based).
  virtual Prediction query(std::size_t t) = 0;
};

// Returns O_t of the fixed optimal matching.
class PerfectOracle : public PredictionOracle {
 public:
  explicit PerfectOracle(std::shared_ptr<const OptimalReference> opt);
  Prediction query(std::size_t t) override;

 private:
  std::shared_ptr<const OptimalReference> opt_;
};

// Perturbs O_t by replacing each server with a uniformly drawn server within
// distance `radius`, then deduplicates with a minimum-cost matching of the
// drawn multiset into S that saturates the multiset. Round t draws from its
// own sub-stream and results are memoized, so the prediction for a round
// does not depend on which other rounds were queried.
class NoisyOracle : public PredictionOracle {
 public:
  NoisyOracle(const Instance& instance,
              std::shared_ptr<const OptimalReference> opt, double radius,
              RngStream rng);
  Prediction query(std::size_t t) override;
  double radius() const { return radius_; }

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  std::shared_ptr<const OptimalReference> opt_;
  double radius_;
  RngStream rng_;
  std::vector<std::vector<ServerId>> within_;
  std::vector<std::optional<Prediction>> memo_;
};

// eta_t = dist(P_t, O_t) over the servers' points.
double prediction_error(const Instance& instance, const OptimalReference& opt,
                        const Prediction& p);

}  // namespace pmatch

#endif  // PMATCH_PREDICTIONS_HPP_
