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

// pmatch command-line driver.
//
//   pmatch gen --class line --seed 7 --out inst.json
//   pmatch play --instance inst.json --algorithm ours --k 3
//   pmatch exp1 --classes line,plane --k 1-20 --instances 20 --out exp1.csv
//   pmatch exp2 --radii 10 --predictions 20 --out exp2.csv
//   pmatch adversary --trials 10000 --out adversary.csv
//   pmatch embed-check --out embed.csv
//   pmatch run --config config.json

#include <algorithm>
#include <fstream>
#include <map>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmatch/experiment.hpp"
#include "pmatch/instances.hpp"
#include "pmatch/predictions.hpp"
#include "pmatch/serialize.hpp"

namespace {

using pmatch::ExperimentConfig;

struct Flags {
  std::string experiment;
  std::string config;
  std::string classes;
  std::string algorithms;
  std::string k;
  std::size_t instances = 0;
  std::size_t predictions = 0;
  std::size_t radii = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t trials = 0;
  std::size_t jobs = 0;
  std::size_t metrics = 0;
  std::size_t points = 0;
  std::size_t embeddings = 0;
  std::size_t vertices = 0;
  std::string taxi_csv;
  std::string taxi_date;
  bool zero_radius = false;
};

struct Bound {
  std::map<std::string, CLI::Option*> opt;
  bool given(const std::string& name) const {
    auto it = opt.find(name);
    return it != opt.end() && it->second->count() > 0;
  }
};

Bound add_experiment_flags(CLI::App* app, Flags& f, bool with_experiment) {
  Bound b;
  if (with_experiment)
    b.opt["experiment"] =
        app->add_option("--experiment", f.experiment,
                        "exp1, exp2, adversary or embed-check");
  b.opt["config"] = app->add_option("--config", f.config, "JSON config file");
  b.opt["classes"] =
      app->add_option("--classes", f.classes, "comma list: line,plane,taxi");
  b.opt["algorithms"] =
      app->add_option("--algorithms", f.algorithms, "comma list of algorithms");
  b.opt["k"] = app->add_option("--k", f.k, "k values, e.g. 1-20 or 1,5,10");
  b.opt["instances"] =
      app->add_option("--instances", f.instances, "instances per class");
  b.opt["predictions"] = app->add_option(
      "--predictions", f.predictions, "prediction draws per radius (exp2)");
  b.opt["radii"] = app->add_option("--radii", f.radii, "noise radii (exp2)");
  b.opt["zero_radius"] =
      app->add_flag("--zero-radius", f.zero_radius, "add a radius-0 column");
  b.opt["seed"] = app->add_option("--seed", f.seed, "base seed");
  b.opt["out"] = app->add_option("--out", f.out, "output CSV (default stdout)");
  b.opt["trials"] =
      app->add_option("--trials", f.trials, "Monte Carlo trials (adversary)");
  b.opt["jobs"] = app->add_option("--jobs", f.jobs, "worker threads");
  b.opt["metrics"] =
      app->add_option("--metrics", f.metrics, "random metrics (embed-check)");
  b.opt["points"] =
      app->add_option("--points", f.points, "points per metric (embed-check)");
  b.opt["embeddings"] = app->add_option("--embeddings", f.embeddings,
                                        "embeddings per metric (embed-check)");
  b.opt["vertices"] =
      app->add_option("--vertices", f.vertices, "vertices per instance");
  b.opt["taxi_csv"] = app->add_option("--taxi-csv", f.taxi_csv, "trips CSV");
  b.opt["taxi_date"] =
      app->add_option("--taxi-date", f.taxi_date, "target day MM/DD/YYYY");
  return b;
}

ExperimentConfig resolve(std::string experiment, const Flags& f,
                         const Bound& b) {
  nlohmann::json file = nlohmann::json::object();
  if (b.given("config")) {
    std::ifstream in(f.config);
    if (!in) throw pmatch::UsageError("cannot open config '" + f.config + "'");
    file = nlohmann::json::parse(in);
  }
  if (b.given("experiment")) experiment = f.experiment;
  else if (experiment.empty()) experiment = file.value("experiment", "exp1");
  ExperimentConfig c = pmatch::default_config(experiment);
  c.jobs = std::max(1u, std::thread::hardware_concurrency());
  file.erase("experiment");
  pmatch::apply_json(c, file);

  nlohmann::json flags = nlohmann::json::object();
  if (b.given("classes")) flags["classes"] = f.classes;
  if (b.given("algorithms")) flags["algorithms"] = f.algorithms;
  if (b.given("k")) flags["k"] = f.k;
  if (b.given("instances")) flags["instances"] = f.instances;
  if (b.given("predictions")) flags["predictions"] = f.predictions;
  if (b.given("radii")) flags["radii"] = f.radii;
  if (b.given("zero_radius")) flags["zero_radius"] = f.zero_radius;
  if (b.given("seed")) flags["seed"] = f.seed;
  if (b.given("out")) flags["out"] = f.out;
  if (b.given("trials")) flags["trials"] = f.trials;
  if (b.given("jobs")) flags["jobs"] = f.jobs;
  if (b.given("metrics")) flags["metrics"] = f.metrics;
  if (b.given("points")) flags["points"] = f.points;
  if (b.given("embeddings")) flags["embeddings"] = f.embeddings;
  if (b.given("vertices")) flags["vertices"] = f.vertices;
  if (b.given("taxi_csv")) flags["taxi_csv"] = f.taxi_csv;
  if (b.given("taxi_date")) flags["taxi_date"] = f.taxi_date;
  pmatch::apply_json(c, flags);
  return c;
}

void emit(const pmatch::CsvTable& table, const std::string& path) {
  if (path.empty() || path == "-") {
    table.write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pmatch::UsageError("cannot write '" + path + "'");
  table.write(out);
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw pmatch::UsageError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parsimonious learning-augmented online metric matching"};
  app.require_subcommand(1);

  pmatch::GenConfig gen;
  std::string gen_class = "line", gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance as JSON");
  gen_cmd->add_option("--class", gen_class, "line, plane or taxi");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--vertices", gen.vertices, "vertex count");
  gen_cmd->add_option("--servers", gen.servers, "server count");
  gen_cmd->add_option("--requests", gen.requests, "request count");
  gen_cmd->add_option("--taxi-csv", gen.taxi_csv, "trips CSV");
  gen_cmd->add_option("--taxi-date", gen.taxi_date, "target day MM/DD/YYYY");
  gen_cmd->add_option("--out", gen_out, "output JSON (default stdout)");

  std::string play_instance, play_alg = "ours", play_out;
  std::size_t play_k = 1;
  double play_radius = -1.0;
  std::uint64_t play_seed = 0;
  auto* play_cmd =
      app.add_subcommand("play", "run one algorithm, print its transcript");
  play_cmd->add_option("--instance", play_instance, "instance JSON")
      ->required();
  play_cmd->add_option("--algorithm", play_alg, "algorithm name");
  play_cmd->add_option("--k", play_k, "separation parameter");
  play_cmd->add_option("--radius", play_radius,
                       "noise radius (default: perfect predictions)");
  play_cmd->add_option("--seed", play_seed, "run seed");
  play_cmd->add_option("--out", play_out, "output JSON (default stdout)");

  Flags flags[5];
  Bound bound[5];
  const char* names[5] = {"exp1", "exp2", "adversary", "embed-check", "run"};
  const char* help[5] = {"ratio vs k with perfect predictions",
                         "ratio vs prediction noise",
                         "lower-bound adversaries on the star metric",
                         "FRT embedding distortion check",
                         "run the experiment named by --experiment/--config"};
  CLI::App* exp_cmd[5];
  for (int i = 0; i < 5; ++i) {
    exp_cmd[i] = app.add_subcommand(names[i], help[i]);
    bound[i] = add_experiment_flags(exp_cmd[i], flags[i], i == 4);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen_cmd) {
      gen.cls = pmatch::parse_class(gen_class);
      write_json(pmatch::instance_to_json(pmatch::generate(gen)), gen_out);
      return 0;
    }
    if (*play_cmd) {
      std::ifstream in(play_instance);
      if (!in)
        throw pmatch::UsageError("cannot open '" + play_instance + "'");
      const pmatch::Instance inst =
          pmatch::instance_from_json(nlohmann::json::parse(in));
      auto opt = std::make_shared<const pmatch::OptimalReference>(
          pmatch::offline_opt(inst));
      std::unique_ptr<pmatch::PredictionOracle> oracle;
      if (play_radius < 0.0)
        oracle = std::make_unique<pmatch::PerfectOracle>(opt);
      else
        oracle = std::make_unique<pmatch::NoisyOracle>(
            inst, opt, play_radius, pmatch::RngStream(play_seed).split("noise"));
      const auto t = pmatch::run_algorithm(play_alg, play_k, inst, *opt,
                                           oracle.get(), play_seed);
      if (!t) {
        std::cerr << "optimum is zero; nothing to report\n";
        return 0;
      }
      write_json(pmatch::transcript_to_json(*t), play_out);
      return 0;
    }
    for (int i = 0; i < 5; ++i)
      if (*exp_cmd[i]) {
        const std::string experiment = i == 4 ? "" : names[i];
        const ExperimentConfig c = resolve(experiment, flags[i], bound[i]);
        emit(pmatch::run_experiment(c), c.out);
        return 0;
      }
  } catch (const std::exception& e) {
    std::cerr << "pmatch: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
