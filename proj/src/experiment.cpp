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

#include "pmatch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pmatch/adversary.hpp"
#include "pmatch/bbgn.hpp"
#include "pmatch/classic.hpp"
#include "pmatch/combiner.hpp"
#include "pmatch/hst.hpp"
#include "pmatch/parallel.hpp"
#include "pmatch/parsimonious.hpp"
#include "pmatch/predictions.hpp"

namespace pmatch {

namespace {

bool is_combination(const std::string& name) {
  return name.rfind("comb-", 0) == 0;
}

std::uint64_t run_seed(std::uint64_t base, InstanceClass cls,
                       std::size_t instance, const std::string& algorithm,
                       std::size_t prediction) {
  return RngStream(base)
      .split("run")
      .split(class_name(cls))
      .split(instance)
      .split(algorithm)
      .split(prediction)
      .seed();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{
      "ours", "comp", "comb-comp", "greedy", "comb-greedy", "bbgn",
      "ours-rand"};
  return names;
}

bool algorithm_uses_oracle(const std::string& name) {
  return name == "ours" || name == "ours-rand" || is_combination(name);
}

MatcherFactory algorithm_factory(const std::string& name, std::size_t k) {
  if (name == "ours") return meta_factory(k, "det-general");
  if (name == "ours-rand") return meta_factory(k, "general-randomized");
  if (name == "comp")
    return [] { return std::make_unique<NetCostMatcher>(1.0); };
  if (name == "greedy") return [] { return std::make_unique<GreedyMatcher>(); };
  if (name == "bbgn") return [] { return std::make_unique<BbgnMatcher>(); };
  if (name == "comb-comp")
    return combination_factory(algorithm_factory("ours", k),
                               algorithm_factory("comp", k));
  if (name == "comb-greedy")
    return combination_factory(algorithm_factory("ours", k),
                               algorithm_factory("greedy", k));
  throw UsageError("unknown algorithm '" + name + "'");
}

std::optional<Transcript> run_algorithm(const std::string& name, std::size_t k,
                                        const Instance& instance,
                                        const OptimalReference& opt,
                                        PredictionOracle* oracle,
                                        std::uint64_t seed) {
  auto matcher = algorithm_factory(name, k)();
  if (!is_combination(name)) {
    if (!(opt.cost > 0.0)) return std::nullopt;
    return run(*matcher, instance, {seed, oracle, &opt});
  }
  const auto scaled = rescale_for_combination(instance, opt);
  if (!scaled) return std::nullopt;
  Transcript t = run(*matcher, scaled->instance, {seed, oracle, &scaled->opt});
  const double unscale = 1.0 / scaled->factor;
  t.total_cost = 0.0;
  for (Assignment& a : t.assignments) {
    a.cost = instance.space->distance(instance.servers[a.server], a.request);
    t.total_cost += a.cost;
  }
  for (double& e : t.per_query_error) e *= unscale;
  for (auto& [key, value] : t.diagnostics)
    if (key.rfind("cost_", 0) == 0) value *= unscale;
  t.opt_cost = opt.cost;
  return t;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_field(fields[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw UsageError("no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(text)) {
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        const std::size_t lo = std::stoul(item.substr(0, dash));
        const std::size_t hi = std::stoul(item.substr(dash + 1));
        if (lo > hi) throw UsageError("empty k range '" + item + "'");
        for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad k list '" + text + "'");
    }
  }
  for (std::size_t k : out)
    if (k < 1) throw UsageError("k must be at least 1");
  if (out.empty()) throw UsageError("empty k list");
  return out;
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "exp1") {
    c.instances = 20;
    for (std::size_t k = 1; k <= 20; ++k) c.ks.push_back(k);
  } else if (experiment == "exp2") {
    c.instances = 1;
    c.ks = {1, 5, 10, 20};
  } else if (experiment == "adversary") {
    c.algorithms = {"ours", "comp", "greedy", "bbgn", "ours-rand"};
  } else if (experiment != "embed-check") {
    throw UsageError("unknown experiment '" + experiment + "'");
  }
  return c;
}

void apply_json(ExperimentConfig& c, const nlohmann::json& doc) {
  auto strings = [](const nlohmann::json& v) {
    if (v.is_string()) return split_list(v.get<std::string>());
    return v.get<std::vector<std::string>>();
  };
  try {
    if (doc.contains("experiment")) {
      const ExperimentConfig fresh =
          default_config(doc["experiment"].get<std::string>());
      c.experiment = fresh.experiment;
      c.ks = fresh.ks;
      c.instances = fresh.instances;
      c.algorithms = fresh.algorithms;
    }
    if (doc.contains("classes")) {
      c.classes.clear();
      for (const auto& s : strings(doc["classes"]))
        c.classes.push_back(parse_class(s));
    }
    if (doc.contains("algorithms")) c.algorithms = strings(doc["algorithms"]);
    if (doc.contains("k")) {
      const auto& v = doc["k"];
      c.ks = v.is_string() ? parse_k_list(v.get<std::string>())
                           : v.get<std::vector<std::size_t>>();
    }
    c.instances = doc.value("instances", c.instances);
    c.predictions = doc.value("predictions", c.predictions);
    c.radii = doc.value("radii", c.radii);
    c.zero_radius = doc.value("zero_radius", c.zero_radius);
    c.seed = doc.value("seed", c.seed);
    c.out = doc.value("out", c.out);
    c.trials = doc.value("trials", c.trials);
    c.jobs = doc.value("jobs", c.jobs);
    c.metrics = doc.value("metrics", c.metrics);
    c.points = doc.value("points", c.points);
    c.embeddings = doc.value("embeddings", c.embeddings);
    c.gen.vertices = doc.value("vertices", c.gen.vertices);
    c.gen.servers = doc.value("servers", c.gen.servers);
    c.gen.requests = doc.value("requests", c.gen.requests);
    c.gen.taxi_csv = doc.value("taxi_csv", c.gen.taxi_csv);
    c.gen.taxi_date = doc.value("taxi_date", c.gen.taxi_date);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

std::uint64_t instance_seed(std::uint64_t base, InstanceClass cls,
                            std::size_t index) {
  return RngStream(base).split("instance").split(class_name(cls)).split(index)
      .seed();
}

std::vector<Instance> build_instances(const ExperimentConfig& config,
                                      InstanceClass cls) {
  std::vector<Instance> out;
  std::vector<TaxiTrip> trips;
  if (cls == InstanceClass::kTaxi) {
    if (config.gen.taxi_csv.empty())
      throw UsageError("taxi instances need a trips CSV (taxi_csv)");
    std::ifstream in(config.gen.taxi_csv, std::ios::binary);
    if (!in)
      throw IngestionError("cannot open '" + config.gen.taxi_csv + "'");
    trips = read_taxi_csv(in);
  }
  for (std::size_t i = 0; i < config.instances; ++i) {
    GenConfig g = config.gen;
    g.cls = cls;
    g.seed = instance_seed(config.seed, cls, i);
    out.push_back(cls == InstanceClass::kTaxi ? gen_taxi(g, trips)
                                              : generate(g));
  }
  return out;
}

namespace {

void check_common(const ExperimentConfig& c) {
  if (c.ks.empty()) throw UsageError("no k values");
  for (std::size_t k : c.ks)
    if (k < 1) throw UsageError("k must be at least 1");
  if (c.instances < 1) throw UsageError("instances must be at least 1");
  for (const auto& a : c.algorithms) algorithm_factory(a, 1);
}

std::string describe(const std::string& experiment, InstanceClass cls,
                     std::size_t i, std::size_t k, const std::string& alg) {
  return experiment + " " + std::string(class_name(cls)) + "#" +
         std::to_string(i) + " k=" + std::to_string(k) + " " + alg;
}

}  // namespace

CsvTable run_exp1(const ExperimentConfig& config) {
  check_common(config);
  CsvTable table;
  table.header = {"experiment", "class", "instance_id", "seed", "k",
                  "algorithm",  "cost",  "opt_cost",    "ratio"};
  struct Unit {
    InstanceClass cls;
    std::size_t index;
    const Instance* instance;
  };
  std::vector<std::vector<Instance>> pools;
  for (InstanceClass cls : config.classes)
    pools.push_back(build_instances(config, cls));
  std::vector<Unit> units;
  for (std::size_t c = 0; c < config.classes.size(); ++c)
    for (std::size_t i = 0; i < pools[c].size(); ++i)
      units.push_back({config.classes[c], i, &pools[c][i]});

  std::vector<std::vector<std::vector<std::string>>> out(units.size());
  parallel_for(units.size(), config.jobs, [&](std::size_t u) {
    const Unit& unit = units[u];
    auto opt = std::make_shared<const OptimalReference>(offline_opt(*unit.instance));
    PerfectOracle oracle(opt);
    for (std::size_t k : config.ks)
      for (const std::string& alg : config.algorithms) {
        std::optional<Transcript> t;
        try {
          t = run_algorithm(alg, k, *unit.instance, *opt, &oracle,
                            run_seed(config.seed, unit.cls, unit.index, alg, 0));
        } catch (const std::exception& e) {
          throw ContractViolation(describe("exp1", unit.cls, unit.index, k, alg) +
                                  ": " + e.what());
        }
        if (!t) continue;
        out[u].push_back({"exp1", std::string(class_name(unit.cls)),
                          std::to_string(unit.index),
                          std::to_string(unit.instance->seed),
                          std::to_string(k), alg, format_number(t->total_cost),
                          format_number(t->opt_cost),
                          format_number(*ratio(*t))});
      }
  });
  for (auto& rows : out)
    for (auto& row : rows) table.rows.push_back(std::move(row));
  return table;
}

CsvTable run_exp2(const ExperimentConfig& config) {
  check_common(config);
  if (config.predictions < 1 || config.radii < 1)
    throw UsageError("predictions and radii must be at least 1");
  CsvTable table;
  table.header = {"experiment",   "class",      "instance_id",   "seed",
                  "k",            "algorithm",  "cost",          "opt_cost",
                  "ratio",        "noise_radius", "noise_norm", "prediction_id",
                  "eta_Q"};
  struct Radius {
    double r, norm;
  };
  struct Unit {
    InstanceClass cls;
    std::size_t index;
    const Instance* instance;
    std::shared_ptr<const OptimalReference> opt;
    std::size_t radius_id;
    Radius radius;
    std::size_t prediction;
  };
  std::vector<std::vector<Instance>> pools;
  for (InstanceClass cls : config.classes)
    pools.push_back(build_instances(config, cls));
  std::vector<Unit> units;
  for (std::size_t c = 0; c < config.classes.size(); ++c)
    for (std::size_t i = 0; i < pools[c].size(); ++i) {
      const Instance& inst = pools[c][i];
      auto opt = std::make_shared<const OptimalReference>(offline_opt(inst));
      const NoiseScale scale = noise_scale_stats(*inst.space);
      const double span = scale.d_med - scale.d_min;
      std::vector<Radius> grid;
      if (config.zero_radius)
        grid.push_back({0.0, span > 0.0 ? -scale.d_min / span : 0.0});
      for (std::size_t j = 0; j < config.radii; ++j) {
        const double frac =
            config.radii == 1 ? 0.0
                              : static_cast<double>(j) /
                                    static_cast<double>(config.radii - 1);
        grid.push_back({scale.d_min + frac * span, frac});
      }
      for (std::size_t j = 0; j < grid.size(); ++j)
        for (std::size_t p = 0; p < config.predictions; ++p)
          units.push_back({config.classes[c], i, &inst, opt, j, grid[j], p});
    }

  std::vector<std::vector<std::vector<std::string>>> out(units.size());
  parallel_for(units.size(), config.jobs, [&](std::size_t u) {
    const Unit& unit = units[u];
    NoisyOracle oracle(*unit.instance, unit.opt, unit.radius.r,
                       RngStream(config.seed)
                           .split("noise")
                           .split(class_name(unit.cls))
                           .split(unit.index)
                           .split(unit.radius_id)
                           .split(unit.prediction));
    for (std::size_t k : config.ks)
      for (const std::string& alg : config.algorithms) {
        std::optional<Transcript> t;
        try {
          t = run_algorithm(alg, k, *unit.instance, *unit.opt, &oracle,
                            run_seed(config.seed, unit.cls, unit.index, alg,
                                     unit.prediction));
        } catch (const std::exception& e) {
          throw ContractViolation(describe("exp2", unit.cls, unit.index, k, alg) +
                                  ": " + e.what());
        }
        if (!t) continue;
        out[u].push_back(
            {"exp2", std::string(class_name(unit.cls)),
             std::to_string(unit.index), std::to_string(unit.instance->seed),
             std::to_string(k), alg, format_number(t->total_cost),
             format_number(t->opt_cost), format_number(*ratio(*t)),
             format_number(unit.radius.r), format_number(unit.radius.norm),
             std::to_string(unit.prediction), format_number(t->eta())});
      }
  });
  for (auto& rows : out)
    for (auto& row : rows) table.rows.push_back(std::move(row));
  return table;
}

CsvTable run_adversary_check(const ExperimentConfig& config) {
  CsvTable table;
  table.header = {"variant", "n",          "param",        "algorithm",
                  "trials",  "mean_ratio", "theory_bound", "pass",
                  "ratio_stderr"};
  struct Case {
    std::string variant;
    std::size_t n, param;
    std::vector<std::string> algorithms;
  };
  const std::vector<std::string> det{"comp", "ours", "greedy"};
  const std::vector<std::string> rnd{"greedy", "bbgn", "ours-rand"};
  const std::vector<Case> cases{
      {"det-budget", 8, 0, det},    {"det-budget", 8, 1, det},
      {"det-budget", 16, 3, det},   {"det-wellsep", 16, 4, det},
      {"det-wellsep", 20, 5, det},  {"rand-plain", 4, 0, rnd},
      {"rand-plain", 8, 0, rnd},    {"rand-plain", 16, 0, rnd},
      {"rand-budget", 16, 1, rnd},  {"rand-wellsep", 16, 4, rnd}};
  for (const Case& c : cases)
    for (const std::string& alg : c.algorithms) {
      if (std::find(config.algorithms.begin(), config.algorithms.end(), alg) ==
          config.algorithms.end())
        continue;
      // Budget variants: well-separated queries every k rounds use at most
      // floor(n / k) <= B queries.
      std::size_t k = c.param;
      if (c.variant == "det-budget" || c.variant == "rand-budget")
        k = c.n / (c.param + 1) + 1;
      if (c.variant == "rand-plain") k = c.n + 1;
      const MatcherFactory f = algorithm_factory(alg, k);
      AdversaryReport r;
      const std::uint64_t seed =
          RngStream(config.seed).split("adversary").split(c.variant)
              .split(c.n).split(c.param).split(alg).seed();
      if (c.variant == "det-budget") {
        r = run_det_budget(f, c.n, c.param, seed);
      } else if (c.variant == "det-wellsep") {
        r = run_det_wellsep(f, c.n, c.param, seed);
      } else {
        RandVariant v;
        v.param = c.param;
        v.kind = c.variant == "rand-plain"    ? RandVariant::Kind::kPlain
                 : c.variant == "rand-budget" ? RandVariant::Kind::kBudget
                                              : RandVariant::Kind::kWellSeparated;
        r = run_rand_star(f, c.n, v, config.trials, seed, config.jobs);
      }
      table.rows.push_back({r.variant, std::to_string(r.n),
                            std::to_string(r.param), alg,
                            std::to_string(r.trials), format_number(r.mean_ratio),
                            format_number(r.theory_bound),
                            r.pass ? "true" : "false",
                            format_number(r.ratio_stderr)});
    }
  return table;
}

CsvTable run_embed_check(const ExperimentConfig& config) {
  if (config.points < 2 || config.embeddings < 1 || config.metrics < 1)
    throw UsageError("embed-check needs points >= 2 and positive counts");
  CsvTable table;
  table.header = {"metric_id",           "points",
                  "embeddings",          "max_pair_distortion",
                  "mean_pair_distortion", "bound",
                  "dominance_violations", "invariant_failures",
                  "pass"};
  const double bound = 8.0 * std::log(static_cast<double>(config.points));
  std::vector<std::vector<std::string>> rows(config.metrics);
  parallel_for(config.metrics, config.jobs, [&](std::size_t m) {
    RngStream rng = RngStream(config.seed).split("embed").split(m);
    RngStream point_rng = rng.split("points");
    std::vector<Point2> pts(config.points);
    for (Point2& p : pts) p = {point_rng.uniform01(), point_rng.uniform01()};
    const MetricSpace space = MetricSpace::plane(pts);
    const std::size_t n = config.points;
    std::vector<double> stretch(n * n, 0.0);
    std::size_t violations = 0, failures = 0;
    for (std::size_t e = 0; e < config.embeddings; ++e) {
      RngStream er = rng.split("embedding").split(e);
      const Hst tree = frt_embed(space, er);
      if (!tree.check_invariants().empty()) ++failures;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          const auto pa = static_cast<PointId>(a), pb = static_cast<PointId>(b);
          const double d = space.distance(pa, pb);
          const double dt = tree.distance(pa, pb);
          if (dt < d - kTolerance) ++violations;
          if (d > 0.0) stretch[a * n + b] += dt / d;
        }
    }
    double worst = 0.0, total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (space.distance(static_cast<PointId>(a), static_cast<PointId>(b)) <=
            0.0)
          continue;
        const double mean =
            stretch[a * n + b] / static_cast<double>(config.embeddings);
        worst = std::max(worst, mean);
        total += mean;
        ++pairs;
      }
    const bool pass = violations == 0 && failures == 0 && worst <= bound;
    rows[m] = {std::to_string(m),
               std::to_string(n),
               std::to_string(config.embeddings),
               format_number(worst),
               format_number(pairs ? total / static_cast<double>(pairs) : 0.0),
               format_number(bound),
               std::to_string(violations),
               std::to_string(failures),
               pass ? "true" : "false"};
  });
  table.rows = std::move(rows);
  return table;
}

CsvTable run_experiment(const ExperimentConfig& config) {
  if (config.experiment == "exp1") return run_exp1(config);
  if (config.experiment == "exp2") return run_exp2(config);
  if (config.experiment == "adversary") return run_adversary_check(config);
  if (config.experiment == "embed-check") return run_embed_check(config);
  throw UsageError("unknown experiment '" + config.experiment + "'");
}

}  // namespace pmatch
