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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  int threads = 1;
  bool full = false;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "master seed (overrides the config)");
  sub->add_option("--out", flags.out, "output directory");
  sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--full", flags.full, "paper-scale defaults (hours of runtime)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barren-plateau laboratory for layered 1D parametrized circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bplab::code_version());

  CommonFlags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"variance-sweep", "gradient variance over n, n_C, L and initialization scheme"},
      {"variance-vs-entropy", "gradient variance against mean output entanglement"},
      {"train", "AMSGrad training runs with per-epoch traces"},
      {"pretrain", "collective-entanglement pre-training traces"},
      {"compressor-data", "ground-state compressor dataset"},
  };
  for (const auto& [name, help] : commands) add_common_flags(app.add_subcommand(name, help), flags);

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const bplab::json j =
        flags.config.empty() ? bplab::json::object() : bplab::read_json_file(flags.config);
    bplab::ExperimentConfig config = bplab::parse_config(command, j, flags.full);
    if (flags.seed) config.seed = *flags.seed;
    bplab::run_command(config, flags.threads, flags.out);
  } catch (const bplab::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
