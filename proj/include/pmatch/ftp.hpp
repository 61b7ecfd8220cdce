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

#ifndef PMATCH_FTP_HPP_
#define PMATCH_FTP_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pmatch/online.hpp"
#include "pmatch/predictions.hpp"

namespace pmatch {

// Follow-the-Prediction, driven by one prediction per round from any source.
//
// Round t: mu1 matches P_t to P_{t-1} + {r_t} with common servers pinned to
// themselves, and p_t is the partner of r_t, so p_t lies in P_t \ P_{t-1}.
// mu2 matches S \ P_{t-1} to S \ S_{t-1} with common servers pinned, and r_t
// goes to s_t, the partner of p_t.
class FtpCore {
 public:
  void reset(std::shared_ptr<const MetricSpace> space,
             std::vector<PointId> servers);

  // Throws UsageError unless `prediction` names round() + 1 distinct servers.
  ServerId step(PointId request, const std::vector<ServerId>& prediction);

  std::size_t round() const { return order_.size(); }
  const std::vector<ServerId>& matched() const { return order_; }
  const std::vector<ServerId>& previous_prediction() const { return previous_; }
  // p_t of the last round.
  ServerId last_target() const { return last_target_; }
  // Sum over rounds of dist(P_t, P_{t-1} + {r_t}); bounds the total cost.
  double prediction_movement() const { return movement_; }

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  std::vector<ServerId> previous_;
  std::vector<bool> in_previous_;
  std::vector<bool> matched_flag_;
  std::vector<ServerId> order_;
  ServerId last_target_ = -1;
  double movement_ = 0.0;
};

// FtP querying the oracle in every round.
class FtpMatcher : public OnlineMatcher {
 public:
  std::string name() const override { return "ftp"; }
  void attach_oracle(PredictionOracle* oracle) override { oracle_ = oracle; }
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return core_.matched();
  }
  Diagnostics diagnostics() const override;

 private:
  PredictionOracle* oracle_ = nullptr;
  FtpCore core_;
};

}  // namespace pmatch

#endif  // PMATCH_FTP_HPP_
