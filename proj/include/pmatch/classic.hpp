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

#ifndef PMATCH_CLASSIC_HPP_
#define PMATCH_CLASSIC_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmatch/online.hpp"

namespace pmatch {

// Nearest free server; ties go to the lowest server index.
class GreedyMatcher : public OnlineMatcher {
 public:
  std::string name() const override { return "greedy"; }
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return book_.order();
  }

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  ServerBook book_;
};

// The gamma-net-cost framework. M_off is a reassignable matching of all
// arrived requests kept gamma-feasible with duals y; each request augments
// M_off along the alternating path of minimum gamma-net-cost
//   gamma * (non-matching lengths) - (matching lengths)
// and is committed in M_on to the path's free endpoint. gamma = 1 is the
// classic (2n-1)-competitive algorithm; gamma = 3 the line-metric variant.
//
// The path search is Dijkstra over reduced costs gamma*d(s,r) - y(s) - y(r)
// on non-matching edges and 0 on matching edges.
class NetCostMatcher : public OnlineMatcher {
 public:
  explicit NetCostMatcher(double gamma = 1.0);

  std::string name() const override;
  void init(std::shared_ptr<const MetricSpace> space,
            std::vector<PointId> servers, RngStream rng) override;
  ServerId serve(PointId request) override;
  const std::vector<ServerId>& matched_servers() const override {
    return online_.order();
  }
  std::optional<double> maintained_offline_cost() const override {
    return offline_cost();
  }

  double gamma() const { return gamma_; }
  // cost(M_off).
  double offline_cost() const;
  // cost(M_on).
  double online_cost() const { return online_cost_; }
  // Net cost of the path chosen in the last round.
  double last_net_cost() const { return last_net_cost_; }

  // M_off partner of each server (-1 if free) and of each arrived request.
  const std::vector<int>& offline_request_of_server() const {
    return off_request_of_server_;
  }
  const std::vector<ServerId>& offline_server_of_request() const {
    return off_server_of_request_;
  }
  const std::vector<PointId>& arrived() const { return arrived_; }
  const std::vector<double>& server_duals() const { return y_server_; }
  const std::vector<double>& request_duals() const { return y_request_; }

  // Empty if (M_off, y) is gamma-feasible and M_on, M_off cover the same
  // servers; otherwise the first violation found.
  std::string check_feasibility(double tol = kTolerance) const;

 private:
  double gamma_;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  std::vector<PointId> arrived_;
  std::vector<double> y_server_;
  std::vector<double> y_request_;
  std::vector<int> off_request_of_server_;
  std::vector<ServerId> off_server_of_request_;
  ServerBook online_;
  double online_cost_ = 0.0;
  double last_net_cost_ = 0.0;
};

}  // namespace pmatch

#endif  // PMATCH_CLASSIC_HPP_
