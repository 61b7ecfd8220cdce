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

#ifndef PMATCH_SERIALIZE_HPP_
#define PMATCH_SERIALIZE_HPP_

#include "json.hpp"
#include "pmatch/hst.hpp"
#include "pmatch/instance.hpp"
#include "pmatch/metric.hpp"
#include "pmatch/online.hpp"

namespace pmatch {

// Metric documents: {"kind", "points", "scale"?} plus "matrix" for explicit
// spaces and "tree" for hst spaces. Points are numbers (line), [x, y] pairs
// (plane, manhattan) or point ids (explicit, hst).
nlohmann::json metric_to_json(const MetricSpace& space);
MetricSpace metric_from_json(const nlohmann::json& doc);

// {"parent": [...], "length": [...], "point": [...]} over node ids.
nlohmann::json hst_to_json(const Hst& tree);
Hst hst_from_json(const nlohmann::json& doc);

// {"space", "servers", "requests", "label", "seed"}.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json transcript_to_json(const Transcript& transcript);

}  // namespace pmatch

#endif  // PMATCH_SERIALIZE_HPP_
