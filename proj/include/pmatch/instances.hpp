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

#ifndef PMATCH_INSTANCES_HPP_
#define PMATCH_INSTANCES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmatch/instance.hpp"
#include "pmatch/metric.hpp"

namespace pmatch {

enum class InstanceClass { kLine, kPlane, kTaxi };

std::string_view class_name(InstanceClass c);
InstanceClass parse_class(std::string_view name);

struct GenConfig {
  InstanceClass cls = InstanceClass::kLine;
  std::size_t vertices = 200;
  std::size_t servers = 100;
  std::size_t requests = 100;
  std::uint64_t seed = 0;
  // Taxi only.
  std::string taxi_csv;
  std::string taxi_date = "10/19/2023";
};

// Uniform vertices in [0,1] (line) or [0,1]^2 (plane); servers are distinct
// vertices drawn without replacement, requests are drawn with replacement.
Instance gen_line(const GenConfig& config);
Instance gen_plane(const GenConfig& config);

struct TaxiTrip {
  // Seconds since 1970-01-01, timezone ignored.
  std::int64_t start = 0;
  std::int64_t end = 0;
  Point2 pickup;   // (longitude, latitude)
  Point2 dropoff;  // (longitude, latitude)
  // Source line of the record (header is line 1).
  std::size_t line = 0;
};

// "MM/DD/YYYY hh:mm:ss AM|PM" -> seconds; nullopt if malformed.
std::optional<std::int64_t> parse_timestamp(std::string_view text);
// "MM/DD/YYYY" -> seconds at midnight; nullopt if malformed.
std::optional<std::int64_t> parse_date(std::string_view text);

// Reads trips from a header-led CSV with RFC-style quoting. Rows missing any
// of the six required fields are dropped; missing columns or unparsable
// values raise IngestionError naming the line.
std::vector<TaxiTrip> read_taxi_csv(std::istream& in);

// Tries the 5-minute boundaries of the target day in random order. The first
// boundary tau with enough trips ending at or before it and starting at or
// after it gives the instance: servers at the drop-offs of the latest trips
// ending by tau, requests at the pick-ups of the earliest trips starting
// from tau, in start order. Throws DataInsufficiency if none works.
Instance gen_taxi(const GenConfig& config, const std::vector<TaxiTrip>& trips);
Instance gen_taxi(const GenConfig& config);

// Dispatches on config.cls.
Instance generate(const GenConfig& config);

}  // namespace pmatch

#endif  // PMATCH_INSTANCES_HPP_
