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

#ifndef PMATCH_ONLINE_HPP_
#define PMATCH_ONLINE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmatch/common.hpp"
#include "pmatch/instance.hpp"
#include "pmatch/metric.hpp"
#include "pmatch/predictions.hpp"
#include "pmatch/rng.hpp"

namespace pmatch {

// Named per-run quantities a matcher wants recorded in its transcript.
using Diagnostics = std::map<std::string, double>;

// An online matching algorithm. Requests arrive one at a time as points of
// the shared space; serve() must return a server (an index into the list
// given to init()) that was not returned before. Decisions are final.
class OnlineMatcher {
 public:
  virtual ~OnlineMatcher() = default;

  virtual std::string name() const = 0;
  // Called before init(). Matchers that do not use predictions ignore it.
  virtual void attach_oracle(PredictionOracle* /*oracle*/) {}
  virtual void init(std::shared_ptr<const MetricSpace> space,
                    std::vector<PointId> servers, RngStream rng) = 0;
  virtual ServerId serve(PointId request) = 0;
  // Servers returned so far, in serving order.
  virtual const std::vector<ServerId>& matched_servers() const = 0;
  // Cost of the reassignable matching, for matchers that keep one.
  virtual std::optional<double> maintained_offline_cost() const {
    return std::nullopt;
  }
  virtual Diagnostics diagnostics() const { return {}; }
};

using MatcherFactory = std::function<std::unique_ptr<OnlineMatcher>()>;

// Bookkeeping for the servers an implementation has committed to.
class ServerBook {
 public:
  void reset(std::size_t n) {
    taken_.assign(n, false);
    order_.clear();
  }
  std::size_t size() const { return taken_.size(); }
  bool taken(ServerId s) const { return taken_[s]; }
  void take(ServerId s);
  const std::vector<ServerId>& order() const { return order_; }
  const std::vector<bool>& flags() const { return taken_; }

 private:
  std::vector<bool> taken_;
  std::vector<ServerId> order_;
};

struct Assignment {
  std::size_t round = 0;  // 1-based
  PointId request = 0;
  ServerId server = 0;
  double cost = 0.0;
};

struct Transcript {
  std::string algorithm;
  std::vector<Assignment> assignments;
  // Rounds (1-based) in which the oracle was queried, with eta_t of each.
  std::vector<std::size_t> query_rounds;
  std::vector<double> per_query_error;
  double total_cost = 0.0;
  double opt_cost = 0.0;
  Diagnostics diagnostics;

  // eta(Q): summed error of the queried predictions.
  double eta() const;
};

// Drives one matcher through the online protocol request by request while
// enforcing its contract. Used directly by adaptive adversaries; run() wraps
// it for a fixed request sequence.
class OnlineSession {
 public:
  OnlineSession(OnlineMatcher& matcher, const Instance& frame,
                std::uint64_t seed, PredictionOracle* oracle = nullptr);
  ~OnlineSession();
  OnlineSession(const OnlineSession&) = delete;
  OnlineSession& operator=(const OnlineSession&) = delete;

  // Feeds the next request; throws ContractViolation if the matcher returns
  // an invalid or already used server.
  ServerId serve(PointId request);

  std::size_t rounds_served() const { return transcript_.assignments.size(); }
  bool taken(ServerId s) const { return taken_.at(s); }
  const Transcript& partial() const { return transcript_; }
  const std::vector<Prediction>& queried() const { return queried_; }

  // Completes the transcript; fills opt_cost and per-query errors when an
  // optimal reference for the served sequence is supplied.
  Transcript finish(const Instance& played, const OptimalReference* opt);

 private:
  class Recorder;

  OnlineMatcher& matcher_;
  std::shared_ptr<const MetricSpace> space_;
  std::vector<PointId> servers_;
  std::vector<bool> taken_;
  std::unique_ptr<Recorder> recorder_;
  std::vector<Prediction> queried_;
  Transcript transcript_;
};

struct RunOptions {
  std::uint64_t seed = 0;
  PredictionOracle* oracle = nullptr;
  // Computed from the instance when absent.
  const OptimalReference* opt = nullptr;
};

// Feeds the instance's requests in order. Deterministic in (matcher,
// instance, seed, oracle).
Transcript run(OnlineMatcher& matcher, const Instance& instance,
               const RunOptions& options = {});

// total_cost / opt_cost, or nullopt when opt_cost is zero (skipped).
std::optional<double> ratio(const Transcript& transcript);

}  // namespace pmatch

#endif  // PMATCH_ONLINE_HPP_
