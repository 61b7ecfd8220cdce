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

#include "pmatch/instances.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <numeric>

#include "pmatch/rng.hpp"

namespace pmatch {

namespace {

void check_sizes(const GenConfig& c) {
  if (c.servers == 0 || c.servers != c.requests)
    throw UsageError("generator: need equal, positive server and request "
                     "counts");
  if (c.vertices < c.servers)
    throw UsageError("generator: fewer vertices than servers");
}

// Servers without replacement, requests with replacement, in draw order.
void sample_roles(const GenConfig& c, RngStream& rng, Instance& inst) {
  std::vector<PointId> pool(c.vertices);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < c.servers; ++i) {
    const std::size_t j = i + rng.uniform_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
    inst.servers.push_back(pool[i]);
  }
  for (std::size_t i = 0; i < c.requests; ++i)
    inst.requests.push_back(static_cast<PointId>(rng.uniform_index(c.vertices)));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\xef' ||
                        s.front() == '\xbb' || s.front() == '\xbf'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Reads one CSV record, honoring quoted fields with embedded commas, quotes
// ("") and newlines. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields,
                 std::size_t& line) {
  fields.clear();
  int ch = in.get();
  if (ch == EOF) return false;
  ++line;
  std::string field;
  bool quoted = false;
  for (; ch != EOF; ch = in.get()) {
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw IngestionError("line " + std::to_string(line) +
                                   ": unterminated quoted field");
  fields.push_back(std::move(field));
  return true;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    return std::nullopt;
  return value;
}

std::optional<std::int64_t> days_from_civil(int month, int day, int year) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year},
                           std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd}.time_since_epoch().count();
}

}  // namespace

std::string_view class_name(InstanceClass c) {
  switch (c) {
    case InstanceClass::kLine: return "line";
    case InstanceClass::kPlane: return "plane";
    case InstanceClass::kTaxi: return "taxi";
  }
  return "?";
}

InstanceClass parse_class(std::string_view name) {
  if (name == "line") return InstanceClass::kLine;
  if (name == "plane") return InstanceClass::kPlane;
  if (name == "taxi") return InstanceClass::kTaxi;
  throw UsageError("unknown instance class '" + std::string(name) + "'");
}

Instance gen_line(const GenConfig& config) {
  check_sizes(config);
  RngStream rng(config.seed);
  std::vector<double> coords(config.vertices);
  for (double& x : coords) x = rng.uniform01();
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::line(coords));
  sample_roles(config, rng, inst);
  inst.label = "line";
  inst.seed = config.seed;
  inst.validate();
  return inst;
}

Instance gen_plane(const GenConfig& config) {
  check_sizes(config);
  RngStream rng(config.seed);
  std::vector<Point2> points(config.vertices);
  for (Point2& p : points) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  Instance inst;
  inst.space = std::make_shared<const MetricSpace>(MetricSpace::plane(points));
  sample_roles(config, rng, inst);
  inst.label = "plane";
  inst.seed = config.seed;
  inst.validate();
  return inst;
}

std::optional<std::int64_t> parse_date(std::string_view text) {
  text = trim(text);
  const auto s1 = text.find('/');
  const auto s2 = text.find('/', s1 == std::string_view::npos ? 0 : s1 + 1);
  if (s1 == std::string_view::npos || s2 == std::string_view::npos)
    return std::nullopt;
  const auto m = parse_number<int>(text.substr(0, s1));
  const auto d = parse_number<int>(text.substr(s1 + 1, s2 - s1 - 1));
  const auto y = parse_number<int>(text.substr(s2 + 1));
  if (!m || !d || !y || *m < 1 || *m > 12 || *d < 1 || *d > 31)
    return std::nullopt;
  const auto days = days_from_civil(*m, *d, *y);
  if (!days) return std::nullopt;
  return *days * 86400;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  text = trim(text);
  const auto sp = text.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  const auto date = parse_date(text.substr(0, sp));
  if (!date) return std::nullopt;
  std::string_view rest = trim(text.substr(sp + 1));
  const auto sp2 = rest.find(' ');
  if (sp2 == std::string_view::npos) return std::nullopt;
  const std::string_view clock = rest.substr(0, sp2);
  const std::string_view half = trim(rest.substr(sp2 + 1));
  if (half != "AM" && half != "PM") return std::nullopt;
  if (clock.size() != 8 || clock[2] != ':' || clock[5] != ':')
    return std::nullopt;
  const auto h = parse_number<int>(clock.substr(0, 2));
  const auto mi = parse_number<int>(clock.substr(3, 2));
  const auto se = parse_number<int>(clock.substr(6, 2));
  if (!h || !mi || !se || *h < 1 || *h > 12 || *mi > 59 || *se > 59)
    return std::nullopt;
  int hour = *h % 12;
  if (half == "PM") hour += 12;
  return *date + hour * 3600 + *mi * 60 + *se;
}

std::vector<TaxiTrip> read_taxi_csv(std::istream& in) {
  static const char* const kColumns[6] = {
      "Trip Start Timestamp",       "Trip End Timestamp",
      "Pickup Centroid Longitude",  "Pickup Centroid Latitude",
      "Dropoff Centroid Longitude", "Dropoff Centroid Latitude"};
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!read_record(in, fields, line))
    throw IngestionError("line 1: empty input, header required");
  std::size_t col[6];
  for (int c = 0; c < 6; ++c) {
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const std::string& f) {
                             return trim(f) == kColumns[c];
                           });
    if (it == fields.end())
      throw IngestionError("line 1: missing column '" +
                           std::string(kColumns[c]) + "'");
    col[c] = static_cast<std::size_t>(it - fields.begin());
  }
  const std::size_t width = fields.size();

  std::vector<TaxiTrip> trips;
  for (;;) {
    const std::size_t first_line = line + 1;
    if (!read_record(in, fields, line)) break;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != width)
      throw IngestionError("line " + std::to_string(first_line) + ": expected " +
                           std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()));
    bool complete = true;
    for (int c = 0; c < 6; ++c)
      if (trim(fields[col[c]]).empty()) complete = false;
    if (!complete) continue;

    auto fail = [&](int c) {
      return IngestionError("line " + std::to_string(first_line) +
                            ": cannot parse '" + fields[col[c]] + "' in " +
                            kColumns[c]);
    };
    TaxiTrip trip;
    trip.line = first_line;
    const auto start = parse_timestamp(fields[col[0]]);
    if (!start) throw fail(0);
    const auto end = parse_timestamp(fields[col[1]]);
    if (!end) throw fail(1);
    double v[4];
    for (int c = 2; c < 6; ++c) {
      const auto x = parse_number<double>(fields[col[c]]);
      if (!x) throw fail(c);
      v[c - 2] = *x;
    }
    trip.start = *start;
    trip.end = *end;
    trip.pickup = {v[0], v[1]};
    trip.dropoff = {v[2], v[3]};
    trips.push_back(trip);
  }
  return trips;
}

Instance gen_taxi(const GenConfig& config,
                  const std::vector<TaxiTrip>& trips) {
  if (config.servers == 0 || config.servers != config.requests)
    throw UsageError("taxi: need equal, positive server and request counts");
  const auto day = parse_date(config.taxi_date);
  if (!day) throw UsageError("taxi: bad target date '" + config.taxi_date + "'");

  // Trips by end time (latest first) and by start time (earliest first);
  // ties keep file order.
  std::vector<std::size_t> by_end(trips.size()), by_start(trips.size());
  std::iota(by_end.begin(), by_end.end(), 0);
  std::iota(by_start.begin(), by_start.end(), 0);
  std::stable_sort(by_end.begin(), by_end.end(), [&](auto a, auto b) {
    return trips[a].end > trips[b].end;
  });
  std::stable_sort(by_start.begin(), by_start.end(), [&](auto a, auto b) {
    return trips[a].start < trips[b].start;
  });

  constexpr std::int64_t kStep = 5 * 60;
  std::vector<std::int64_t> boundaries;
  for (std::int64_t t = 0; t < 86400; t += kStep) boundaries.push_back(*day + t);
  RngStream rng(config.seed);
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
    std::swap(boundaries[i],
              boundaries[i + rng.uniform_index(boundaries.size() - i)]);

  const std::size_t need = config.servers;
  for (std::int64_t tau : boundaries) {
    auto e = std::find_if(by_end.begin(), by_end.end(),
                          [&](std::size_t i) { return trips[i].end <= tau; });
    auto s = std::find_if(by_start.begin(), by_start.end(),
                          [&](std::size_t i) { return trips[i].start >= tau; });
    if (static_cast<std::size_t>(by_end.end() - e) < need ||
        static_cast<std::size_t>(by_start.end() - s) < need)
      continue;
    std::vector<std::size_t> server_trips(e, e + static_cast<std::ptrdiff_t>(need));
    std::reverse(server_trips.begin(), server_trips.end());
    std::vector<Point2> points;
    Instance inst;
    for (std::size_t i : server_trips) {
      inst.servers.push_back(static_cast<PointId>(points.size()));
      points.push_back(trips[i].dropoff);
    }
    for (std::size_t j = 0; j < need; ++j) {
      inst.requests.push_back(static_cast<PointId>(points.size()));
      points.push_back(trips[s[static_cast<std::ptrdiff_t>(j)]].pickup);
    }
    inst.space =
        std::make_shared<const MetricSpace>(MetricSpace::manhattan(points));
    inst.label = "taxi@" + std::to_string(tau);
    inst.seed = config.seed;
    inst.validate();
    return inst;
  }
  throw DataInsufficiency("taxi: no 5-minute boundary on " + config.taxi_date +
                          " has " + std::to_string(need) +
                          " trips on both sides");
}

Instance gen_taxi(const GenConfig& config) {
  std::ifstream in(config.taxi_csv, std::ios::binary);
  if (!in) throw IngestionError("cannot open '" + config.taxi_csv + "'");
  return gen_taxi(config, read_taxi_csv(in));
}

Instance generate(const GenConfig& config) {
  switch (config.cls) {
    case InstanceClass::kLine: return gen_line(config);
    case InstanceClass::kPlane: return gen_plane(config);
    case InstanceClass::kTaxi: return gen_taxi(config);
  }
  throw UsageError("generator: bad class");
}

}  // namespace pmatch
