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

#include "pmatch/parsimonious.hpp"

#include <algorithm>

#include "pmatch/bbgn.hpp"
#include "pmatch/classic.hpp"

namespace pmatch {

MetaMatcher::MetaMatcher(std::size_t k,
                         std::shared_ptr<SubroutineProvider> provider)
    : k_(k), provider_(std::move(provider)) {
  if (k_ < 1) throw UsageError("meta: k must be at least 1");
  if (!provider_) throw UsageError("meta: no subroutine provider");
}

std::string MetaMatcher::name() const {
  return "meta(k=" + std::to_string(k_) + "," + provider_->name() + ")";
}

void MetaMatcher::init(std::shared_ptr<const MetricSpace> space,
                       std::vector<PointId> servers, RngStream rng) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  rng_ = rng;
  RngStream prep = rng_.split("prepare");
  provider_->prepare(*space_, servers_, prep);
  ftp_.reset(space_, servers_);
  anchor_.clear();
  phase_ = 0;
  queries_ = 0;
  last_queried_ = false;
  start_phase();
}

void MetaMatcher::start_phase() {
  phase_matched_.clear();
  sub_ids_.clear();
  sub_.reset();
  std::vector<bool> anchored(servers_.size(), false);
  for (ServerId s : anchor_) anchored[s] = true;
  std::vector<PointId> points;
  for (std::size_t s = 0; s < servers_.size(); ++s)
    if (!anchored[s]) {
      sub_ids_.push_back(static_cast<ServerId>(s));
      points.push_back(servers_[s]);
    }
  if (points.empty()) return;
  sub_ = provider_->make();
  sub_->init(space_, std::move(points), rng_.split("phase").split(phase_));
}

ServerId MetaMatcher::serve(PointId request) {
  const std::size_t t = ftp_.round() + 1;
  std::vector<ServerId> prediction;
  last_queried_ = t % k_ == 0;
  if (last_queried_) {
    if (oracle_ == nullptr) throw UsageError("meta: no prediction oracle");
    prediction = oracle_->query(t).servers;
    ++queries_;
  } else {
    if (!sub_) throw UsageError("meta: no subroutine servers left");
    const ServerId local = sub_->serve(request);
    phase_matched_.push_back(sub_ids_.at(local));
    prediction = anchor_;
    prediction.insert(prediction.end(), phase_matched_.begin(),
                      phase_matched_.end());
  }
  const ServerId s = ftp_.step(request, prediction);
  if (last_queried_) {
    anchor_ = ftp_.previous_prediction();
    ++phase_;
    start_phase();
  }
  return s;
}

Diagnostics MetaMatcher::diagnostics() const {
  return {{"prediction_movement", ftp_.prediction_movement()},
          {"queries", static_cast<double>(queries_)},
          {"phases", static_cast<double>(phase_ + 1)}};
}

namespace {

class NetCostProvider : public SubroutineProvider {
 public:
  NetCostProvider(std::string name, double gamma, bool line_only)
      : name_(std::move(name)), gamma_(gamma), line_only_(line_only) {}
  std::string name() const override { return name_; }
  void prepare(const MetricSpace& space, const std::vector<PointId>&,
               RngStream&) override {
    if (line_only_ && space.kind() != MetricKind::kLine)
      throw UsageError("preset " + name_ + " needs a line metric");
  }
  std::unique_ptr<OnlineMatcher> make() const override {
    return std::make_unique<NetCostMatcher>(gamma_);
  }

 private:
  std::string name_;
  double gamma_;
  bool line_only_;
};

class HstProvider : public SubroutineProvider {
 public:
  explicit HstProvider(bool embed) : embed_(embed) {}
  std::string name() const override {
    return embed_ ? "general-randomized" : "hst-2";
  }
  void prepare(const MetricSpace& space, const std::vector<PointId>& servers,
               RngStream& rng) override {
    if (embed_) {
      embedding_ = std::make_shared<const HstEmbedding>(
          HstEmbedding::frt(space, servers, rng));
    } else {
      if (space.kind() != MetricKind::kHst)
        throw UsageError("preset hst-2 needs an hst metric");
      embedding_ =
          std::make_shared<const HstEmbedding>(HstEmbedding::native(space));
    }
  }
  std::unique_ptr<OnlineMatcher> make() const override {
    return std::make_unique<BbgnMatcher>(embedding_);
  }

 private:
  bool embed_;
  std::shared_ptr<const HstEmbedding> embedding_;
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "det-general", "det-general-3", "line", "hst-2", "general-randomized"};
  return names;
}

std::shared_ptr<SubroutineProvider> make_preset(std::string_view name) {
  if (name == "det-general")
    return std::make_shared<NetCostProvider>("det-general", 1.0, false);
  if (name == "det-general-3")
    return std::make_shared<NetCostProvider>("det-general-3", 3.0, false);
  if (name == "line")
    return std::make_shared<NetCostProvider>("line", 3.0, true);
  if (name == "hst-2") return std::make_shared<HstProvider>(false);
  if (name == "general-randomized") return std::make_shared<HstProvider>(true);
  throw UsageError("unknown preset '" + std::string(name) + "'");
}

MatcherFactory meta_factory(std::size_t k, std::string preset) {
  make_preset(preset);  // validate the name eagerly
  return [k, preset = std::move(preset)]() -> std::unique_ptr<OnlineMatcher> {
    return std::make_unique<MetaMatcher>(k, make_preset(preset));
  };
}

}  // namespace pmatch
