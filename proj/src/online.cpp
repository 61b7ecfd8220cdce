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

#include "pmatch/online.hpp"

#include <string>

namespace pmatch {

void ServerBook::take(ServerId s) {
  if (s < 0 || static_cast<std::size_t>(s) >= taken_.size())
    throw ContractViolation("server " + std::to_string(s) + " out of range");
  if (taken_[s])
    throw ContractViolation("server " + std::to_string(s) + " reused");
  taken_[s] = true;
  order_.push_back(s);
}

double Transcript::eta() const {
  double sum = 0.0;
  for (double e : per_query_error) sum += e;
  return sum;
}

// Validates and logs every query a matcher makes during a session.
class OnlineSession::Recorder : public PredictionOracle {
 public:
  Recorder(PredictionOracle* inner, OnlineSession& session)
      : inner_(inner), session_(session) {}

  Prediction query(std::size_t t) override {
    const std::size_t current = session_.rounds_served() + 1;
    if (t != current)
      throw ContractViolation("oracle queried for round " + std::to_string(t) +
                              " during round " + std::to_string(current));
    if (inner_ == nullptr)
      throw ContractViolation("matcher queried an oracle but none is attached");
    Prediction p = inner_->query(t);
    validate_prediction(p, t, session_.servers_.size());
    session_.queried_.push_back(p);
    return p;
  }

 private:
  PredictionOracle* inner_;
  OnlineSession& session_;
};

OnlineSession::OnlineSession(OnlineMatcher& matcher, const Instance& frame,
                             std::uint64_t seed, PredictionOracle* oracle)
    : matcher_(matcher),
      space_(frame.space),
      servers_(frame.servers),
      taken_(frame.servers.size(), false),
      recorder_(std::make_unique<Recorder>(oracle, *this)) {
  if (!space_ || servers_.empty())
    throw UsageError("session: empty instance frame");
  transcript_.algorithm = matcher.name();
  matcher_.attach_oracle(recorder_.get());
  matcher_.init(space_, servers_, RngStream(seed).split("matcher"));
}

OnlineSession::~OnlineSession() = default;

ServerId OnlineSession::serve(PointId request) {
  if (rounds_served() >= servers_.size())
    throw UsageError("session: more requests than servers");
  if (!space_->valid(request)) throw UsageError("session: invalid request");
  const ServerId s = matcher_.serve(request);
  if (s < 0 || static_cast<std::size_t>(s) >= servers_.size())
    throw ContractViolation(matcher_.name() + " returned server " +
                            std::to_string(s) + " out of range");
  if (taken_[s])
    throw ContractViolation(matcher_.name() + " returned server " +
                            std::to_string(s) + " twice");
  taken_[s] = true;
  const double cost = space_->distance(servers_[s], request);
  transcript_.assignments.push_back({rounds_served() + 1, request, s, cost});
  transcript_.total_cost += cost;
  return s;
}

Transcript OnlineSession::finish(const Instance& played,
                                 const OptimalReference* opt) {
  Transcript out = transcript_;
  out.diagnostics = matcher_.diagnostics();
  out.query_rounds.clear();
  out.per_query_error.clear();
  for (const Prediction& p : queried_) {
    out.query_rounds.push_back(p.round);
    if (opt != nullptr)
      out.per_query_error.push_back(prediction_error(played, *opt, p));
  }
  if (opt != nullptr) out.opt_cost = opt->cost;
  return out;
}

Transcript run(OnlineMatcher& matcher, const Instance& instance,
               const RunOptions& options) {
  instance.validate();
  std::optional<OptimalReference> own;
  const OptimalReference* opt = options.opt;
  if (opt == nullptr) {
    own = offline_opt(instance);
    opt = &*own;
  }
  OnlineSession session(matcher, instance, options.seed, options.oracle);
  for (PointId r : instance.requests) session.serve(r);
  return session.finish(instance, opt);
}

std::optional<double> ratio(const Transcript& transcript) {
  if (!(transcript.opt_cost > 0.0)) return std::nullopt;
  return transcript.total_cost / transcript.opt_cost;
}

}  // namespace pmatch
