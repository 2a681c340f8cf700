// Copyright 2026 The bplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bplab/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using bplab::json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bplab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing rejects unknown keys and expands ranges") {
  const auto c = bplab::parse_config(
      "variance-sweep",
      json::parse(R"({"n": [3], "layers": {"from": 2, "to": 10, "step": 4}, "samples": 50})"),
      false);
  CHECK(c.layers == std::vector<int>{2, 6, 10});
  CHECK(c.samples == 50);
  CHECK(c.param_index == bplab::kDefaultGradientIndex);

  CHECK_THROWS_AS(bplab::parse_config("variance-sweep", json::parse(R"({"layer": [2]})"), false),
                  bplab::ConfigurationError);
  CHECK_THROWS_AS(bplab::parse_config("variance-sweep", json::parse(R"({"samples": 1})"), false),
                  bplab::ConfigurationError);
  CHECK_THROWS_AS(bplab::parse_config("train", json::parse(R"({"schedule": "cosine"})"), false),
                  bplab::ConfigurationError);

  const auto t = bplab::parse_config("train", json::parse(R"({"seeds": 3})"), false);
  CHECK(t.seeds == std::vector<std::uint64_t>{0, 1, 2});
}

TEST_CASE("full presets extend the CI presets") {
  const auto ci = bplab::default_config("variance-sweep", false);
  const auto full = bplab::default_config("variance-sweep", true);
  CHECK(full.n.size() > ci.n.size());
  CHECK(full.layers.back() > ci.layers.back());
  CHECK_THROWS_AS(bplab::default_config("bogus", false), bplab::ConfigurationError);
}

TEST_CASE("variance sweep: one row per scheme, thread-count independent") {
  auto c = bplab::default_config("variance-sweep", false);
  c.n = {3};
  c.n_cost = {1};
  c.layers = {2};
  c.samples = 300;
  c.entangling_layers = {1, 5};
  bplab::RunLog log;
  const auto rows = bplab::run_variance_sweep(c, 1, log);
  // random, partitioned, hardlimit:1; hardlimit:5 exceeds the layout.
  REQUIRE(rows.size() == 3);
  CHECK(log.warnings.size() == 1);
  for (const auto& r : rows) {
    CHECK(r.samples == 300);
    CHECK(r.seed == bplab::cell_seed(c.seed, 3, 1, 2));
    CHECK(r.variance > 0.0);
    CHECK(std::isfinite(r.variance_stderr));
  }
  bplab::RunLog log4;
  const auto again = bplab::run_variance_sweep(c, 4, log4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].variance == rows[i].variance);
    CHECK(again[i].mean_entropy == rows[i].mean_entropy);
  }
}

TEST_CASE("partitioned start keeps the default-partition entropy at zero") {
  const bplab::CircuitLayout layout({5, 0, 2}, 6);
  const auto cost = bplab::parse_cost("raw:Z1 Z2");
  const auto s = bplab::sample_gradient_and_entropy(layout, cost, bplab::InitScheme::partitioned(),
                                                    3, 20, 1, 1);
  for (double e : s.entropy) CHECK(e == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("entropy sweep summaries") {
  auto c = bplab::default_config("variance-vs-entropy", false);
  c.n = {3};
  c.layers = {2, 4, 6, 8};
  c.samples = 200;
  bplab::RunLog log;
  const auto rows = bplab::run_variance_vs_entropy(c, 1, log);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].entropy_initial == rows[0].mean_entropy);
  for (const auto& r : rows) {
    CHECK(r.entropy_initial == rows[0].entropy_initial);
    CHECK(r.entropy_plateau == rows[3].mean_entropy);
    CHECK(r.mean_entropy <= 1.0 + 1e-12);  // one qubit against two
  }
  CHECK(bplab::least_squares_slope({0, 1, 2}, {1, 3, 5}) == doctest::Approx(2.0));
}

TEST_CASE("small training and pretraining runs") {
  auto c = bplab::default_config("train", false);
  c.n = {4};
  c.n_cost = {2};
  c.layers = {4};
  c.costs = {"raw:Z1 Z2", "abs:Z1"};
  c.schemes = {"random", "partitioned"};
  c.modes = {"plain", "langevin"};
  c.seeds = {0, 1};
  c.epochs = 5;
  bplab::RunLog log;
  const auto runs = bplab::run_train(c, nullptr, 2, log);
  REQUIRE(runs.size() == 16);
  CHECK(runs[0].trace_name() == "train_c0_random_plain_seed0");
  for (const auto& r : runs) CHECK(r.report.epochs.size() <= 6);
  // Same seed index, same initial parameters across costs and modes.
  CHECK(runs[0].init_seed == runs[8].init_seed);

  auto p = bplab::default_config("pretrain", false);
  p.n = {3};
  p.layers = {4};
  p.seeds = {0};
  p.steps = 20;
  p.probe_every = 10;
  p.probe_samples = 10;
  const auto pre = bplab::run_pretrain(p, 1, log);
  REQUIRE(pre.size() == 1);
  CHECK(pre[0].result.trace.size() >= 2);
  CHECK(bplab::pretraining_objective(bplab::CircuitLayout(pre[0].reg, 4), pre[0].result.params) <=
        pre[0].result.trace.front().collective_entropy + 1e-12);
}

TEST_CASE("compressor training reads one shared dataset") {
  auto d = bplab::default_config("compressor-data", false);
  d.n = {4};
  d.n_g = 3;
  const auto data = bplab::run_compressor_data(d, 1);
  CHECK(data.samples.size() == 3);

  auto c = bplab::default_config("train", false);
  c.n = {4};
  c.n_cost = {2};
  c.layers = {3};
  c.costs = {"compressor"};
  c.schemes = {"random"};
  c.modes = {"plain"};
  c.seeds = {0, 1};
  c.epochs = 2;
  bplab::RunLog log;
  const auto runs = bplab::run_train(c, &data, 1, log);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].threshold == doctest::Approx(0.05 * 3));
}

#ifdef BPLAB_CLI_PATH
TEST_CASE("command-line tool: byte-identical reruns across thread counts") {
  const fs::path dir = scratch("cli");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"n": [3], "n_cost": [1], "layers": [2, 4], "samples": 100})";
  }
  const std::string exe = BPLAB_CLI_PATH;
  const std::string base = exe + " variance-sweep --config " + (dir / "cfg.json").string() +
                           " --seed 3 --out ";
  REQUIRE(std::system((base + (dir / "a").string() + " --threads 1").c_str()) == 0);
  REQUIRE(std::system((base + (dir / "b").string() + " --threads 3").c_str()) == 0);
  for (const char* f : {"variance_sweep.csv", "variance_sweep.json"}) {
    const std::string a = slurp(dir / "a" / f);
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b" / f));
  }
  const std::string csv = slurp(dir / "a" / "variance_sweep.csv");
  CHECK(csv.rfind("n,n_C,scheme,L,samples,mean_O1,var_O1,var_stderr,mean_S,seed\n", 0) == 0);

  {
    std::ofstream bad(dir / "bad.json");
    bad << R"({"nn": [3]})";
  }
  const int status =
      std::system((exe + " variance-sweep --config " + (dir / "bad.json").string() + " --out " +
                   (dir / "c").string() + " 2>/dev/null")
                      .c_str());
  CHECK(status != 0);
  fs::remove_all(dir);
}
#endif
