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

#include "pmatch/classic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pmatch {

void GreedyMatcher::init(std::shared_ptr<const MetricSpace> space,
                         std::vector<PointId> servers, RngStream /*rng*/) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  book_.reset(servers_.size());
}

ServerId GreedyMatcher::serve(PointId request) {
  ServerId best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < servers_.size(); ++s) {
    if (book_.taken(static_cast<ServerId>(s))) continue;
    const double d = space_->distance(servers_[s], request);
    if (d < best_d) {
      best_d = d;
      best = static_cast<ServerId>(s);
    }
  }
  if (best < 0) throw UsageError("greedy: no free server");
  book_.take(best);
  return best;
}

NetCostMatcher::NetCostMatcher(double gamma) : gamma_(gamma) {
  if (!(gamma >= 1.0)) throw UsageError("net-cost: gamma must be >= 1");
}

std::string NetCostMatcher::name() const {
  std::ostringstream os;
  os << "netcost(" << gamma_ << ")";
  return os.str();
}

void NetCostMatcher::init(std::shared_ptr<const MetricSpace> space,
                          std::vector<PointId> servers, RngStream /*rng*/) {
  space_ = std::move(space);
  servers_ = std::move(servers);
  arrived_.clear();
  y_server_.assign(servers_.size(), 0.0);
  y_request_.clear();
  off_request_of_server_.assign(servers_.size(), -1);
  off_server_of_request_.clear();
  online_.reset(servers_.size());
  online_cost_ = 0.0;
  last_net_cost_ = 0.0;
}

ServerId NetCostMatcher::serve(PointId request) {
  const std::size_t n = servers_.size();
  if (online_.order().size() >= n) throw UsageError("net-cost: no free server");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const int q = static_cast<int>(arrived_.size());
  arrived_.push_back(request);
  y_request_.push_back(0.0);
  off_server_of_request_.push_back(-1);
  const std::size_t m = arrived_.size();

  // Dense Dijkstra over request nodes [0, m) and server nodes [0, n).
  std::vector<double> dist_req(m, kInf), dist_srv(n, kInf);
  std::vector<int> via_request(n, -1);  // request a server was reached from
  std::vector<char> done_req(m, 0), done_srv(n, 0);
  dist_req[q] = 0.0;
  for (;;) {
    int best_r = -1, best_s = -1;
    double best = kInf;
    for (std::size_t r = 0; r < m; ++r)
      if (!done_req[r] && dist_req[r] < best) {
        best = dist_req[r];
        best_r = static_cast<int>(r);
      }
    for (std::size_t s = 0; s < n; ++s)
      if (!done_srv[s] && dist_srv[s] < best) {
        best = dist_srv[s];
        best_r = -1;
        best_s = static_cast<int>(s);
      }
    if (best == kInf) break;
    if (best_r >= 0) {
      done_req[best_r] = 1;
      const int partner = off_server_of_request_[best_r];
      for (std::size_t s = 0; s < n; ++s) {
        if (done_srv[s] || static_cast<int>(s) == partner) continue;
        const double reduced =
            gamma_ * space_->distance(servers_[s], arrived_[best_r]) -
            y_server_[s] - y_request_[best_r];
        const double cand = best + std::max(0.0, reduced);
        if (cand < dist_srv[s]) {
          dist_srv[s] = cand;
          via_request[s] = best_r;
        }
      }
    } else {
      done_srv[best_s] = 1;
      const int partner = off_request_of_server_[best_s];
      if (partner >= 0 && !done_req[partner] && best < dist_req[partner])
        dist_req[partner] = best;
    }
  }

  double delta = kInf;
  for (std::size_t s = 0; s < n; ++s)
    if (off_request_of_server_[s] < 0) delta = std::min(delta, dist_srv[s]);
  if (delta == kInf) throw UsageError("net-cost: no free server reachable");
  const double tie = 1e-12 * (1.0 + std::abs(delta));
  ServerId target = -1;
  for (std::size_t s = 0; s < n; ++s)
    if (off_request_of_server_[s] < 0 && dist_srv[s] <= delta + tie) {
      target = static_cast<ServerId>(s);
      break;
    }
  last_net_cost_ = delta;

  for (std::size_t r = 0; r < m; ++r)
    if (dist_req[r] < delta) y_request_[r] += delta - dist_req[r];
  for (std::size_t s = 0; s < n; ++s)
    if (dist_srv[s] < delta) y_server_[s] -= delta - dist_srv[s];

  // Augment M_off along the path back from the free endpoint. Each edge that
  // enters the matching gets its request dual lowered so the edge is tight
  // at d(s, r) rather than gamma * d(s, r).
  int s = target;
  for (;;) {
    const int r = via_request[s];
    const int previous = off_server_of_request_[r];
    off_server_of_request_[r] = s;
    off_request_of_server_[s] = r;
    y_request_[r] =
        space_->distance(servers_[s], arrived_[r]) - y_server_[s];
    if (r == q) break;
    s = previous;
  }

  online_.take(target);
  online_cost_ += space_->distance(servers_[target], request);
  return target;
}

double NetCostMatcher::offline_cost() const {
  double c = 0.0;
  for (std::size_t r = 0; r < arrived_.size(); ++r)
    c += space_->distance(servers_[off_server_of_request_[r]], arrived_[r]);
  return c;
}

std::string NetCostMatcher::check_feasibility(double tol) const {
  std::ostringstream err;
  const std::size_t n = servers_.size();
  for (std::size_t s = 0; s < n; ++s) {
    const bool off = off_request_of_server_[s] >= 0;
    if (off != online_.taken(static_cast<ServerId>(s))) {
      err << "server " << s << " matched in only one of M_on / M_off";
      return err.str();
    }
    if (!off && std::abs(y_server_[s]) > tol) {
      err << "free server " << s << " has dual " << y_server_[s];
      return err.str();
    }
  }
  double dual_sum = 0.0;
  for (double y : y_server_) dual_sum += y;
  for (std::size_t r = 0; r < arrived_.size(); ++r) {
    dual_sum += y_request_[r];
    for (std::size_t s = 0; s < n; ++s) {
      const double d = space_->distance(servers_[s], arrived_[r]);
      const double lhs = y_server_[s] + y_request_[r];
      const double slack = tol * (1.0 + d);
      if (lhs > gamma_ * d + slack) {
        err << "dual constraint (" << s << "," << r << ") violated: " << lhs
            << " > " << gamma_ * d;
        return err.str();
      }
      if (off_server_of_request_[r] == static_cast<int>(s) &&
          std::abs(lhs - d) > slack) {
        err << "matching edge (" << s << "," << r << ") not tight: " << lhs
            << " vs " << d;
        return err.str();
      }
    }
  }
  const double off = offline_cost();
  if (std::abs(dual_sum - off) > tol * (1.0 + off)) {
    err << "dual objective " << dual_sum << " != cost(M_off) " << off;
    return err.str();
  }
  return {};
}

}  // namespace pmatch
