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

#ifndef PMATCH_PARSIMONIOUS_HPP_
#define PMATCH_PARSIMONIOUS_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pmatch/ftp.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// Builds the prediction-free subroutine that fills the rounds between
// queries. prepare() runs once per run (on all servers) before any make().
class SubroutineProvider {
 public:
  virtual ~SubroutineProvider() = default;
  virtual std::string name() const = 0;
  virtual void prepare(const MetricSpace& /*space*/,
                       const std::vector<PointId>& /*servers*/,
                       RngStream& /*rng*/) {}
  virtual std::unique_ptr<OnlineMatcher> make() const = 0;
};

// FtP on actual predictions at rounds k, 2k, ... and virtual predictions in
// between. After a query at round t the anchor P^ becomes P_t and a fresh
// subroutine starts on S \ P^; in the following rounds the prediction is P^
// plus the servers that subroutine has matched in the current phase.
class MetaMatcher : public OnlineMatcher {
 public:
  MetaMatcher(std::size_t k, std::shared_ptr<SubroutineProvider> provider);

  std::string name() const override;
  void attach_oracle(PredictionOracle* oracle) override { oracle_ = oracle; }
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return ftp_.matched();
  }
  Diagnostics diagnostics() const override;

  std::size_t k() const { return k_; }
  std::size_t phase() const { return phase_; }
  // The prediction FtP received in the last round.
  const std::vector<ServerId>& last_prediction() const {
    return ftp_.previous_prediction();
  }
  bool last_round_queried() const { return last_queried_; }

 private:
  void start_phase();

  std::size_t k_;
  std::shared_ptr<SubroutineProvider> provider_;
  PredictionOracle* oracle_ = nullptr;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  RngStream rng_;
  FtpCore ftp_;
  std::vector<ServerId> anchor_;
  // Subroutine of the current phase and the global ids of its servers.
  std::unique_ptr<OnlineMatcher> sub_;
  std::vector<ServerId> sub_ids_;
  std::vector<ServerId> phase_matched_;
  std::size_t phase_ = 0;
  std::size_t queries_ = 0;
  bool last_queried_ = false;
};

// Subroutine presets: det-general (net-cost, gamma 1), det-general-3
// (gamma 3), line (gamma 3, line metrics only), hst-2 (randomized HST
// algorithm, hst metrics only) and general-randomized (the same algorithm
// on one FRT embedding of the servers per run). Throws UsageError for an
// unknown name; kind mismatches surface when a run starts.
std::shared_ptr<SubroutineProvider> make_preset(std::string_view name);
const std::vector<std::string>& preset_names();

MatcherFactory meta_factory(std::size_t k, std::string preset);

}  // namespace pmatch

#endif  // PMATCH_PARSIMONIOUS_HPP_
