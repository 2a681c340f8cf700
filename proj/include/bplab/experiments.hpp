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


#ifndef BPLAB_EXPERIMENTS_HPP
#define BPLAB_EXPERIMENTS_HPP

#include "bplab/circuit.hpp"
#include "bplab/groundstates.hpp"
#include "bplab/serialization.hpp"
#include "bplab/training.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// Seeded experiment runners behind the command-line tool. Each runner
// returns its rows in memory; write_* turns them into CSV + JSON sidecar.

namespace bplab {

/// Parameter index used as O_1 unless a config says otherwise: the first
/// angle whose derivative is not identically zero on a |0...0> input.
inline constexpr int kDefaultGradientIndex = 3;

struct ExperimentConfig {
  std::string command;
  std::uint64_t seed = 0;
  bool full = false;

  std::vector<int> n;
  std::vector<int> n_cost;
  int cost_offset = 0;
  std::vector<int> layers;
  std::vector<std::string> schemes;
  std::vector<std::string> costs;
  int param_index = kDefaultGradientIndex;
  std::size_t samples = 2000;

  // variance-sweep L_E sweep: each value adds a hardlimit:<L_E> scheme.
  std::vector<int> entangling_layers;
  std::string placement = "last";

  // train
  std::vector<std::string> modes;
  std::vector<std::uint64_t> seeds;
  int epochs = 1500;
  std::optional<double> target_loss;
  std::vector<double> thresholds;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double lambda = 0.1;
  std::string schedule = "adaptive";
  double adaptive_floor = 0.0;
  double langevin_lambda = 0.02;
  std::size_t langevin_size = 0;  // 0: default_langevin_size
  std::string compressor_observable;
  std::string dataset;

  // pretrain
  int steps = 3000;
  double fd_step = 1e-4;
  std::string probe_cost = "raw:Z1 Z2";
  std::size_t probe_samples = 200;
  double probe_width = 0.1;
  int probe_every = 100;

  // compressor-data
  int n_g = 8;
  double scale = 1.0;
};

/// Defaults for a subcommand; `full` selects the paper-scale sizes.
ExperimentConfig default_config(const std::string& command, bool full);

/// Overlays a JSON object on the defaults. Unknown keys are an error.
/// "layers" accepts a list or {"from": a, "to": b, "step": s}.
ExperimentConfig parse_config(const std::string& command, const json& j, bool full);

/// Resolved settings as recorded in sidecars (no thread count or paths).
json config_to_json(const ExperimentConfig& config);

/// Warnings collected while skipping invalid combinations.
struct RunLog {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Seed of one (n, n_C, L) cell of a sweep; shared across schemes so that
/// schemes see the same underlying angle draws.
std::uint64_t cell_seed(std::uint64_t master, int n, int n_cost, int layers);

struct GradientSamples {
  std::vector<double> gradient;  // O_{param_index} per sample
  std::vector<double> entropy;   // S of the output state per sample
};

/// O_{param_index} and the default-partition entropy of U|0> per sample.
GradientSamples sample_gradient_and_entropy(const CircuitLayout& layout,
                                            const CostFunction& cost,
                                            const InitScheme& scheme,
                                            Eigen::Index param_index,
                                            std::size_t samples,
                                            std::uint64_t seed, int threads);

struct VarianceRow {
  int n = 0;
  int n_cost = 0;
  std::string scheme;
  int layers = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  double mean_entropy = 0.0;
  std::uint64_t seed = 0;
};

std::vector<VarianceRow> run_variance_sweep(const ExperimentConfig& config,
                                            int threads, RunLog& log);

struct EntropyRow {
  int n = 0;
  int layers = 0;
  double variance = 0.0;
  double mean_entropy = 0.0;
  double entropy_initial = 0.0;   // S_mean at the smallest L of this n
  double entropy_plateau = 0.0;   // mean S_mean over the last quarter of L
};

std::vector<EntropyRow> run_variance_vs_entropy(const ExperimentConfig& config,
                                                int threads, RunLog& log);

/// Least-squares slope of log2(variance) on S_mean over the rows of one n
/// with S_mean < fraction * S_plateau. NaN with fewer than two such rows.
double pre_plateau_slope(const std::vector<EntropyRow>& rows, int n,
                         double fraction = 0.9);

/// Ordinary least-squares slope of y on x.
double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

struct TrainRun {
  std::size_t cost_index = 0;
  std::string cost;
  std::string scheme;
  std::string mode;
  std::uint64_t seed_index = 0;
  std::uint64_t init_seed = 0;
  std::uint64_t langevin_seed = 0;
  double threshold = 0.0;
  std::optional<int> epochs_to_threshold;
  RegisterSpec reg;
  TrainReport report;

  std::string trace_name() const;
};

/// Threshold used for epochs-to-threshold when the config gives none:
/// -0.9 for raw costs, 0.1 for |loss| of abs costs, 0.05 N_g for the
/// compressor.
double default_threshold(const CostFunction& cost);

/// Resolves a cost string: "raw:...", "abs:..." or "compressor".
CostFunction resolve_cost(const std::string& text, const ExperimentConfig& config,
                          const RegisterSpec& reg, const CompressorDataset* dataset);

/// One train() per (cost, scheme, mode, seed); every run with the same seed
/// index starts from the same angles for a given scheme.
std::vector<TrainRun> run_train(const ExperimentConfig& config,
                                const CompressorDataset* dataset, int threads,
                                RunLog& log);

struct PretrainRun {
  std::uint64_t seed_index = 0;
  std::uint64_t init_seed = 0;
  std::uint64_t probe_seed = 0;
  RegisterSpec reg;
  int layers = 0;
  PretrainResult result;
};

std::vector<PretrainRun> run_pretrain(const ExperimentConfig& config, int threads,
                                      RunLog& log);

CompressorDataset run_compressor_data(const ExperimentConfig& config, int threads);

/// Version string recorded in every sidecar.
std::string code_version();

/// Runs a subcommand and writes its outputs into `out`.
void run_command(const ExperimentConfig& config, int threads,
                 const std::filesystem::path& out);

}  // namespace bplab

#endif  // BPLAB_EXPERIMENTS_HPP
