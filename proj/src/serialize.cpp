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

#include "pmatch/serialize.hpp"

#include <memory>
#include <string>

namespace pmatch {

using nlohmann::json;

json metric_to_json(const MetricSpace& space) {
  json doc;
  doc["kind"] = std::string(kind_name(space.kind()));
  json points = json::array();
  switch (space.kind()) {
    case MetricKind::kLine:
      for (double x : space.line_coords()) points.push_back(x);
      break;
    case MetricKind::kPlane:
    case MetricKind::kManhattan:
      for (const Point2& p : space.plane_points())
        points.push_back(json::array({p.x, p.y}));
      break;
    case MetricKind::kExplicit:
      for (std::size_t i = 0; i < space.size(); ++i) points.push_back(i);
      doc["matrix"] = space.matrix();
      break;
    case MetricKind::kHst:
      for (std::size_t i = 0; i < space.size(); ++i) points.push_back(i);
      doc["tree"] = hst_to_json(*space.hst());
      break;
  }
  doc["points"] = std::move(points);
  if (space.scale() != 1.0) doc["scale"] = space.scale();
  return doc;
}

MetricSpace metric_from_json(const json& doc) {
  try {
    const MetricKind kind = parse_kind(doc.at("kind").get<std::string>());
    const json& points = doc.at("points");
    auto pairs = [&] {
      std::vector<Point2> out;
      for (const json& p : points)
        out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      return out;
    };
    MetricSpace built = [&] {
      switch (kind) {
        case MetricKind::kLine:
          return MetricSpace::line(points.get<std::vector<double>>());
        case MetricKind::kPlane:
          return MetricSpace::plane(pairs());
        case MetricKind::kManhattan:
          return MetricSpace::manhattan(pairs());
        case MetricKind::kExplicit:
          return MetricSpace::explicit_matrix(
              doc.at("matrix").get<std::vector<std::vector<double>>>());
        case MetricKind::kHst:
          break;
      }
      return MetricSpace::from_hst(
          std::make_shared<const Hst>(hst_from_json(doc.at("tree"))));
    }();
    const double scale = doc.value("scale", 1.0);
    return scale == 1.0 ? built : built.scaled(scale);
  } catch (const json::exception& e) {
    throw UsageError(std::string("metric json: ") + e.what());
  }
}

json hst_to_json(const Hst& tree) {
  json parent = json::array(), length = json::array(), point = json::array();
  for (const Hst::Node& node : tree.nodes()) {
    parent.push_back(node.parent);
    length.push_back(node.parent_length);
    point.push_back(node.point);
  }
  return {{"parent", parent}, {"length", length}, {"point", point}};
}

Hst hst_from_json(const json& doc) {
  try {
    return Hst::from_parents(doc.at("parent").get<std::vector<int>>(),
                             doc.at("length").get<std::vector<double>>(),
                             doc.at("point").get<std::vector<PointId>>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("hst json: ") + e.what());
  }
}

json instance_to_json(const Instance& instance) {
  return {{"space", metric_to_json(*instance.space)},
          {"servers", instance.servers},
          {"requests", instance.requests},
          {"label", instance.label},
          {"seed", instance.seed}};
}

Instance instance_from_json(const json& doc) {
  try {
    Instance inst;
    inst.space =
        std::make_shared<const MetricSpace>(metric_from_json(doc.at("space")));
    inst.servers = doc.at("servers").get<std::vector<PointId>>();
    inst.requests = doc.at("requests").get<std::vector<PointId>>();
    inst.label = doc.value("label", std::string());
    inst.seed = doc.value("seed", std::uint64_t{0});
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw UsageError(std::string("instance json: ") + e.what());
  }
}

json transcript_to_json(const Transcript& t) {
  json rounds = json::array();
  for (const Assignment& a : t.assignments)
    rounds.push_back({{"round", a.round},
                      {"request", a.request},
                      {"server", a.server},
                      {"cost", a.cost}});
  json queries = json::array();
  for (std::size_t i = 0; i < t.query_rounds.size(); ++i) {
    json q = {{"round", t.query_rounds[i]}};
    if (i < t.per_query_error.size()) q["eta"] = t.per_query_error[i];
    queries.push_back(std::move(q));
  }
  return {{"algorithm", t.algorithm},   {"assignments", rounds},
          {"queries", queries},         {"total_cost", t.total_cost},
          {"opt_cost", t.opt_cost},     {"eta", t.eta()},
          {"diagnostics", t.diagnostics}};
}

}  // namespace pmatch
