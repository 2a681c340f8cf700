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

#include "bplab/entanglement.hpp"
#include "bplab/gradients.hpp"
#include "bplab/parallel.hpp"
#include "bplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#ifndef BPLAB_VERSION
#define BPLAB_VERSION "unknown"
#endif

namespace bplab {

std::string code_version() { return BPLAB_VERSION; }

namespace {

std::vector<int> range(int from, int to, int step) {
  std::vector<int> out;
  for (int v = from; v <= to; v += step) out.push_back(v);
  return out;
}

}  // namespace

ExperimentConfig default_config(const std::string& command, bool full) {
  ExperimentConfig c;
  c.command = command;
  c.full = full;
  c.costs = {"raw:Z1 Z2"};
  c.n_cost = {2};
  if (command == "variance-sweep") {
    c.n = full ? std::vector<int>{3, 5, 7, 9} : std::vector<int>{3, 5, 7};
    c.layers = full ? range(20, 200, 20) : std::vector<int>{10, 20, 40, 60};
    c.schemes = {"random", "partitioned"};
  } else if (command == "variance-vs-entropy") {
    c.n = full ? std::vector<int>{3, 5, 7, 9} : std::vector<int>{3, 5};
    c.layers = full ? range(2, 200, 2) : range(2, 40, 2);
    c.schemes = {"random"};
  } else if (command == "train") {
    c.n = {full ? 9 : 7};
    c.n_cost = {3};
    c.layers = {full ? 200 : 50};
    c.costs = {"raw:Z1 Z2 X3", "abs:Z1 Z2 Z3"};
    c.schemes = {"random"};
    c.modes = {"plain"};
    c.seeds = {0, 1, 2, 3, 4};
  } else if (command == "pretrain") {
    c.n = {full ? 5 : 3};
    c.layers = {full ? 100 : 20};
    c.schemes = {"random"};
    c.seeds = {0, 1, 2, 3, 4};
  } else if (command == "compressor-data") {
    c.n = {9};
  } else {
    throw ConfigurationError("unknown command '" + command + "'");
  }
  return c;
}

namespace {

class KeyReader {
 public:
  explicit KeyReader(const json& j) : j_(j) {
    if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& target) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    try {
      target = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigurationError(std::string("config key '") + key + "': " + e.what());
    }
  }

  /// Accepts a scalar or a list.
  template <typename T>
  void read_list(const char* key, std::vector<T>& target) {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array()) {
      T single{};
      read(key, single);
      target = {single};
      return;
    }
    read(key, target);
  }

  void read_layers(const char* key, std::vector<int>& target) {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (v.is_object()) {
      used_.insert(key);
      const int from = v.value("from", 1);
      const int to = v.value("to", from);
      const int step = v.value("step", 1);
      if (step <= 0 || to < from) throw ConfigurationError("invalid layer range");
      target = range(from, to, step);
      return;
    }
    read_list(key, target);
  }

  void read_optional(const char* key, std::optional<double>& target) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    if (j_.at(key).is_null()) {
      target.reset();
    } else {
      double v = 0.0;
      read(key, v);
      target = v;
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw ConfigurationError("unknown config key '" + key + "'");
    }
  }

 private:
  const json& j_;
  std::set<std::string> used_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& command, const json& j, bool full) {
  ExperimentConfig c = default_config(command, full);
  KeyReader r(j);
  r.read("seed", c.seed);
  r.read_list("n", c.n);
  r.read_list("n_cost", c.n_cost);
  r.read("cost_offset", c.cost_offset);
  r.read_layers("layers", c.layers);
  r.read_list("schemes", c.schemes);
  r.read_list("costs", c.costs);
  r.read("param_index", c.param_index);
  r.read("samples", c.samples);
  r.read_list("entangling_layers", c.entangling_layers);
  r.read("placement", c.placement);
  r.read_list("modes", c.modes);
  if (j.contains("seeds") && j.at("seeds").is_number_integer()) {
    std::uint64_t count = 0;
    r.read("seeds", count);
    c.seeds.resize(count);
    std::iota(c.seeds.begin(), c.seeds.end(), std::uint64_t{0});
  } else {
    r.read_list("seeds", c.seeds);
  }
  r.read("epochs", c.epochs);
  r.read_optional("target_loss", c.target_loss);
  r.read_list("thresholds", c.thresholds);
  r.read("learning_rate", c.learning_rate);
  r.read("beta1", c.beta1);
  r.read("beta2", c.beta2);
  r.read("epsilon", c.epsilon);
  r.read("lambda", c.lambda);
  r.read("schedule", c.schedule);
  r.read("adaptive_floor", c.adaptive_floor);
  r.read("langevin_lambda", c.langevin_lambda);
  r.read("langevin_size", c.langevin_size);
  r.read("compressor_observable", c.compressor_observable);
  r.read("dataset", c.dataset);
  r.read("steps", c.steps);
  r.read("fd_step", c.fd_step);
  r.read("probe_cost", c.probe_cost);
  r.read("probe_samples", c.probe_samples);
  r.read("probe_width", c.probe_width);
  r.read("probe_every", c.probe_every);
  r.read("n_g", c.n_g);
  r.read("scale", c.scale);
  r.finish();

  if (c.samples < 2 && (command == "variance-sweep" || command == "variance-vs-entropy")) {
    throw ConfigurationError("variance estimates need at least 2 samples");
  }
  if (!c.thresholds.empty() && c.thresholds.size() != c.costs.size()) {
    throw ConfigurationError("'thresholds' must have one entry per cost");
  }
  if (c.schedule != "adaptive" && c.schedule != "constant") {
    throw ConfigurationError("schedule must be 'adaptive' or 'constant'");
  }
  if (c.epochs < 0 || c.steps < 0) throw ConfigurationError("negative epoch or step count");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["full"] = c.full;
  j["n"] = c.n;
  if (c.command == "compressor-data") {
    j["n_g"] = c.n_g;
    j["scale"] = c.scale;
    return j;
  }
  j["n_cost"] = c.n_cost;
  j["cost_offset"] = c.cost_offset;
  j["layers"] = c.layers;
  j["schemes"] = c.schemes;
  if (c.command != "pretrain") j["costs"] = c.costs;
  if (c.command == "variance-sweep" || c.command == "variance-vs-entropy") {
    j["param_index"] = c.param_index;
    j["samples"] = c.samples;
  }
  if (c.command == "variance-sweep") {
    j["entangling_layers"] = c.entangling_layers;
    j["placement"] = c.placement;
  }
  if (c.command == "train" || c.command == "pretrain") {
    j["seeds"] = c.seeds;
    j["learning_rate"] = c.learning_rate;
    j["beta1"] = c.beta1;
    j["beta2"] = c.beta2;
    j["epsilon"] = c.epsilon;
  }
  if (c.command == "train") {
    j["modes"] = c.modes;
    j["epochs"] = c.epochs;
    j["target_loss"] = c.target_loss ? json(*c.target_loss) : json(nullptr);
    j["thresholds"] = c.thresholds;
    j["lambda"] = c.lambda;
    j["schedule"] = c.schedule;
    j["adaptive_floor"] = c.adaptive_floor;
    j["langevin_lambda"] = c.langevin_lambda;
    j["langevin_size"] = c.langevin_size;
    j["compressor_observable"] = c.compressor_observable;
    j["dataset"] = c.dataset;
  }
  if (c.command == "pretrain") {
    j["steps"] = c.steps;
    j["fd_step"] = c.fd_step;
    j["probe_cost"] = c.probe_cost;
    j["param_index"] = c.param_index;
    j["probe_samples"] = c.probe_samples;
    j["probe_width"] = c.probe_width;
    j["probe_every"] = c.probe_every;
  }
  if (c.command == "train") {
    j["n_g"] = c.n_g;
    j["scale"] = c.scale;
  }
  return j;
}

std::uint64_t cell_seed(std::uint64_t master, int n, int n_cost, int layers) {
  const std::string label = "cell:n=" + std::to_string(n) + ",nc=" + std::to_string(n_cost) +
                            ",L=" + std::to_string(layers);
  return derive_seed(master, label, 0);
}

GradientSamples sample_gradient_and_entropy(const CircuitLayout& layout,
                                            const CostFunction& cost,
                                            const InitScheme& scheme,
                                            Eigen::Index param_index,
                                            std::size_t samples,
                                            std::uint64_t seed, int threads) {
  if (param_index < 0 || param_index >= layout.num_params()) {
    throw ArgumentError("parameter index out of range");
  }
  cost.validate(layout.n());
  const Partition partition = default_partition(layout.register_spec());
  GradientSamples out;
  out.gradient.resize(samples);
  out.entropy.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const ParamVector params = sample_params(layout, scheme, seed, i);
    const CostGradient g = cost_and_gradient(cost, layout, params);
    out.gradient[i] = g.gradient(param_index);
    const StateVector state = g.output.size() > 0
                                  ? g.output
                                  : apply_circuit(layout, params, zero_state(layout.n()));
    out.entropy[i] = bipartite_entropy(state, partition);
  });
  return out;
}

namespace {

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

/// Layout and cost for one sweep cell, or nullopt with a warning.
std::optional<CircuitLayout> make_cell(const ExperimentConfig& c, int n, int n_cost,
                                       int layers, const CostFunction& cost, RunLog& log) {
  const std::string where = "n=" + std::to_string(n) + " n_C=" + std::to_string(n_cost) +
                            " L=" + std::to_string(layers);
  try {
    const RegisterSpec reg{n, c.cost_offset, n_cost};
    reg.validate();
    CircuitLayout layout(reg, layers);
    cost.validate(n);
    if (c.param_index < 0 || c.param_index >= layout.num_params()) {
      log.warn(where + ": parameter index " + std::to_string(c.param_index) +
               " out of range, skipped");
      return std::nullopt;
    }
    return layout;
  } catch (const std::exception& e) {
    log.warn(where + ": " + e.what() + ", skipped");
    return std::nullopt;
  }
}

}  // namespace

std::vector<VarianceRow> run_variance_sweep(const ExperimentConfig& c, int threads,
                                            RunLog& log) {
  std::vector<std::string> schemes = c.schemes;
  for (int le : c.entangling_layers) {
    schemes.push_back("hardlimit:" + std::to_string(le) + ":" + c.placement);
  }
  std::vector<InitScheme> parsed;
  for (const auto& s : schemes) parsed.push_back(parse_init_scheme(s));

  std::vector<VarianceRow> rows;
  for (const std::string& cost_text : c.costs) {
    const CostFunction cost = parse_cost(cost_text);
    for (int n : c.n) {
      for (int nc : c.n_cost) {
        for (int layers : c.layers) {
          const auto layout = make_cell(c, n, nc, layers, cost, log);
          if (!layout) continue;
          const std::uint64_t seed = cell_seed(c.seed, n, nc, layers);
          for (std::size_t s = 0; s < parsed.size(); ++s) {
            const InitScheme& scheme = parsed[s];
            if (scheme.kind == InitKind::HardLimit &&
                scheme.entangling_layers > static_cast<int>(layout->boundary_layers().size())) {
              log.warn("n=" + std::to_string(n) + " n_C=" + std::to_string(nc) + " L=" +
                       std::to_string(layers) + ": " + schemes[s] + " exceeds the " +
                       std::to_string(layout->boundary_layers().size()) +
                       " boundary layers, skipped");
              continue;
            }
            const GradientSamples g = sample_gradient_and_entropy(
                *layout, cost, scheme, c.param_index, c.samples, seed, threads);
            const VarianceReport v = summarize_variance(g.gradient, c.param_index);
            rows.push_back({n, nc, to_string(scheme), layers, c.samples, v.mean, v.variance,
                            v.variance_stderr, mean_of(g.entropy), seed});
          }
        }
      }
    }
  }
  return rows;
}

std::vector<EntropyRow> run_variance_vs_entropy(const ExperimentConfig& c, int threads,
                                                RunLog& log) {
  if (c.schemes.size() != 1 || c.costs.size() != 1 || c.n_cost.size() != 1) {
    throw ConfigurationError("variance-vs-entropy takes one scheme, one cost and one n_cost");
  }
  const InitScheme scheme = parse_init_scheme(c.schemes[0]);
  const CostFunction cost = parse_cost(c.costs[0]);
  const int nc = c.n_cost[0];
  std::vector<int> layers = c.layers;
  std::sort(layers.begin(), layers.end());

  std::vector<EntropyRow> rows;
  for (int n : c.n) {
    const std::size_t first = rows.size();
    for (int l : layers) {
      const auto layout = make_cell(c, n, nc, l, cost, log);
      if (!layout) continue;
      const std::uint64_t seed = cell_seed(c.seed, n, nc, l);
      const GradientSamples g = sample_gradient_and_entropy(*layout, cost, scheme,
                                                            c.param_index, c.samples, seed,
                                                            threads);
      EntropyRow row;
      row.n = n;
      row.layers = l;
      row.variance = summarize_variance(g.gradient, c.param_index).variance;
      row.mean_entropy = mean_of(g.entropy);
      rows.push_back(row);
    }
    const std::size_t count = rows.size() - first;
    if (count == 0) continue;
    const std::size_t tail = std::max<std::size_t>(1, (count + 3) / 4);
    double plateau = 0.0;
    for (std::size_t i = rows.size() - tail; i < rows.size(); ++i) plateau += rows[i].mean_entropy;
    plateau /= static_cast<double>(tail);
    const double initial = rows[first].mean_entropy;
    for (std::size_t i = first; i < rows.size(); ++i) {
      rows[i].entropy_initial = initial;
      rows[i].entropy_plateau = plateau;
    }
  }
  return rows;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nan("");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::nan("");
}

double pre_plateau_slope(const std::vector<EntropyRow>& rows, int n, double fraction) {
  std::vector<double> s;
  std::vector<double> lv;
  for (const auto& r : rows) {
    if (r.n != n || !(r.mean_entropy < fraction * r.entropy_plateau)) continue;
    s.push_back(r.mean_entropy);
    lv.push_back(std::log2(r.variance));
  }
  return least_squares_slope(s, lv);
}

std::string TrainRun::trace_name() const {
  std::string s = scheme;
  std::replace(s.begin(), s.end(), ':', '-');
  return "train_c" + std::to_string(cost_index) + "_" + s + "_" + mode + "_seed" +
         std::to_string(seed_index);
}

double default_threshold(const CostFunction& cost) {
  switch (cost.kind) {
    case CostKind::RawExpectation:
      return -0.9;
    case CostKind::AbsExpectation:
      return 0.1;
    case CostKind::CompressorL1:
      return 0.05 * static_cast<double>(cost.dataset.size());
  }
  return 0.0;
}

CostFunction resolve_cost(const std::string& text, const ExperimentConfig& c,
                          const RegisterSpec& reg, const CompressorDataset* dataset) {
  if (text != "compressor") return parse_cost(text);
  if (dataset == nullptr) throw ConfigurationError("compressor cost needs a dataset");
  if (dataset->n != reg.n) {
    throw ConfigurationError("dataset has " + std::to_string(dataset->n) +
                             " qubits, circuit has " + std::to_string(reg.n));
  }
  ObservableSum obs;
  if (!c.compressor_observable.empty()) {
    obs = parse_observable(c.compressor_observable);
  } else {
    for (int q : reg.cost_qubits()) {
      obs.terms.emplace_back(std::vector{std::pair{q, PauliAxis::Z}}, 1.0 / reg.n_cost);
    }
  }
  return CostFunction::compressor(dataset->samples, std::move(obs));
}

std::vector<TrainRun> run_train(const ExperimentConfig& c, const CompressorDataset* dataset,
                                int threads, RunLog& log) {
  if (c.n.size() != 1 || c.n_cost.size() != 1 || c.layers.size() != 1) {
    throw ConfigurationError("train takes a single n, n_cost and layer count");
  }
  const RegisterSpec reg{c.n[0], c.cost_offset, c.n_cost[0]};
  reg.validate();
  const CircuitLayout layout(reg, c.layers[0]);

  struct Job {
    std::size_t cost_index;
    CostFunction cost;
    std::string scheme;
    InitScheme init;
    GradientMode mode;
    std::uint64_t seed_index;
  };
  std::vector<Job> jobs;
  for (std::size_t ci = 0; ci < c.costs.size(); ++ci) {
    CostFunction cost;
    try {
      cost = resolve_cost(c.costs[ci], c, reg, dataset);
      cost.validate(reg.n);
    } catch (const std::exception& e) {
      log.warn("cost '" + c.costs[ci] + "': " + e.what() + ", skipped");
      continue;
    }
    for (const auto& scheme : c.schemes) {
      const InitScheme init = parse_init_scheme(scheme);
      if (init.kind == InitKind::HardLimit &&
          init.entangling_layers > static_cast<int>(layout.boundary_layers().size())) {
        log.warn("scheme " + scheme + " exceeds the boundary layers, skipped");
        continue;
      }
      for (const auto& mode : c.modes) {
        for (std::uint64_t s : c.seeds) {
          jobs.push_back({ci, cost, scheme, init, parse_gradient_mode(mode), s});
        }
      }
    }
  }

  std::vector<TrainRun> runs(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    TrainRun& run = runs[k];
    run.cost_index = job.cost_index;
    run.cost = c.costs[job.cost_index];
    run.scheme = to_string(job.init);
    run.mode = to_string(job.mode);
    run.seed_index = job.seed_index;
    run.init_seed = derive_seed(c.seed, "train-init", job.seed_index);
    run.langevin_seed = derive_seed(c.seed, "train-langevin", job.seed_index);
    run.threshold = c.thresholds.empty() ? default_threshold(job.cost)
                                         : c.thresholds[job.cost_index];
    run.reg = reg;

    TrainConfig tc;
    tc.optimizer = {c.learning_rate, c.beta1, c.beta2, c.epsilon};
    tc.mode = job.mode;
    tc.regularization.lambda0 = c.lambda;
    tc.regularization.schedule = c.schedule == "adaptive" ? RegularizationSchedule::Adaptive
                                                          : RegularizationSchedule::Constant;
    tc.regularization.adaptive_floor = c.adaptive_floor;
    if (job.mode == GradientMode::Langevin) {
      const std::size_t size = c.langevin_size > 0 ? c.langevin_size
                                                   : default_langevin_size(layout);
      tc.langevin = make_langevin_config(layout, c.langevin_lambda, size, run.langevin_seed);
    }
    tc.epochs = c.epochs;
    tc.target_loss = c.target_loss;
    tc.seed = run.init_seed;
    const ParamVector initial = init_params(layout, job.init, run.init_seed);
    run.report = train(layout, initial, job.cost, tc);

    const bool absolute = job.cost.kind != CostKind::RawExpectation;
    for (const auto& e : run.report.epochs) {
      const double value = absolute ? std::abs(e.loss) : e.loss;
      if (value <= run.threshold) {
        run.epochs_to_threshold = e.epoch;
        break;
      }
    }
  });
  return runs;
}

std::vector<PretrainRun> run_pretrain(const ExperimentConfig& c, int threads, RunLog& log) {
  if (c.n.size() != 1 || c.n_cost.size() != 1 || c.layers.size() != 1 ||
      c.schemes.size() != 1) {
    throw ConfigurationError("pretrain takes a single n, n_cost, layer count and scheme");
  }
  const RegisterSpec reg{c.n[0], c.cost_offset, c.n_cost[0]};
  reg.validate();
  if (2 * reg.n > kMaxQubits) {
    throw ConfigurationError("pre-training needs 2n <= " + std::to_string(kMaxQubits));
  }
  const CircuitLayout layout(reg, c.layers[0]);
  const InitScheme init = parse_init_scheme(c.schemes[0]);
  const CostFunction probe_cost = parse_cost(c.probe_cost);
  probe_cost.validate(reg.n);
  if (c.param_index < 0 || c.param_index >= layout.num_params()) {
    throw ConfigurationError("parameter index out of range");
  }
  if (layout.entangling_indices().empty()) {
    log.warn("layout has no entangling gates; S_C is identically zero");
  }

  std::vector<PretrainRun> runs(c.seeds.size());
  // Seed-level parallelism; each run probes its variance on one thread.
  parallel_for(c.seeds.size(), threads, [&](std::size_t k) {
    PretrainRun& run = runs[k];
    run.seed_index = c.seeds[k];
    run.init_seed = derive_seed(c.seed, "pretrain-init", run.seed_index);
    run.probe_seed = derive_seed(c.seed, "pretrain-probe", run.seed_index);
    run.reg = reg;
    run.layers = c.layers[0];
    PretrainConfig pc;
    pc.steps = c.steps;
    pc.optimizer = {c.learning_rate, c.beta1, c.beta2, c.epsilon};
    pc.fd_step = c.fd_step;
    pc.probe = VarianceProbe{probe_cost, c.param_index, c.probe_samples, c.probe_width,
                             run.probe_seed, c.probe_every};
    pc.threads = 1;
    run.result = pretrain_minimize_sc(layout, init_params(layout, init, run.init_seed), pc);
  });
  return runs;
}

CompressorDataset run_compressor_data(const ExperimentConfig& c, int threads) {
  if (c.n.size() != 1) throw ConfigurationError("compressor-data takes a single n");
  return make_compressor_dataset(c.n[0], c.n_g, c.seed, c.scale, threads);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << text;
}

json sidecar(const ExperimentConfig& c, const std::vector<std::string>& columns) {
  json j;
  j["command"] = c.command;
  j["version"] = code_version();
  j["seed"] = c.seed;
  j["config"] = config_to_json(c);
  j["columns"] = columns;
  j["distributions"] = {
      {"angles", "uniform[0, 2pi) per angle, stream derive_seed(seed, \"init-params\")"},
      {"sample_seed", "derive_seed(cell_seed, \"gradient-sample\", i)"},
      {"hamiltonian_coefficients", kCoefficientDistribution}};
  j["gradient_component"] = {
      {"param_index", c.param_index},
      {"note", "0-based flat angle index; index 3 is the first angle acting on |0...0>"}};
  return j;
}

void write_variance_sweep(const ExperimentConfig& c, int threads,
                          const std::filesystem::path& out, RunLog& log) {
  const std::vector<std::string> columns = {"n",      "n_C",      "scheme",     "L",
                                            "samples", "mean_O1", "var_O1", "var_stderr",
                                            "mean_S", "seed"};
  const auto rows = run_variance_sweep(c, threads, log);
  std::ostringstream csv_text;
  CsvWriter csv(csv_text, columns);
  for (const auto& r : rows) {
    csv.cell(r.n).cell(r.n_cost).cell(r.scheme).cell(r.layers).cell(r.samples).cell(r.mean);
    csv.cell(r.variance).cell(r.variance_stderr).cell(r.mean_entropy).cell(r.seed);
    csv.end_row();
  }
  write_text(out / "variance_sweep.csv", csv_text.str());
  json meta = sidecar(c, columns);
  meta["entropy"] = "bipartite S of U|0> on the default partition, bits";
  meta["variance_stderr"] = "leave-one-out jackknife";
  write_json_file(out / "variance_sweep.json", meta);
}

void write_variance_vs_entropy(const ExperimentConfig& c, int threads,
                               const std::filesystem::path& out, RunLog& log) {
  const std::vector<std::string> columns = {"n", "L", "var_O1", "S_mean", "S_0",
                                            "S_plateau_estimate"};
  const auto rows = run_variance_vs_entropy(c, threads, log);
  std::ostringstream csv_text;
  CsvWriter csv(csv_text, columns);
  for (const auto& r : rows) {
    csv.cell(r.n).cell(r.layers).cell(r.variance).cell(r.mean_entropy);
    csv.cell(r.entropy_initial).cell(r.entropy_plateau);
    csv.end_row();
  }
  write_text(out / "variance_vs_entropy.csv", csv_text.str());
  json meta = sidecar(c, columns);
  meta["S_0"] = "S_mean at the smallest L of each n";
  meta["S_plateau_estimate"] = "mean S_mean over the last quarter of the L values of each n";
  json slopes = json::object();
  for (int n : c.n) slopes[std::to_string(n)] = pre_plateau_slope(rows, n);
  meta["pre_plateau_slope_log2var_vs_S"] = slopes;
  write_json_file(out / "variance_vs_entropy.json", meta);
}

void write_train(const ExperimentConfig& c, int threads, const std::filesystem::path& out,
                 RunLog& log) {
  std::optional<CompressorDataset> dataset;
  const bool needs_dataset =
      std::find(c.costs.begin(), c.costs.end(), "compressor") != c.costs.end();
  if (needs_dataset) {
    if (!c.dataset.empty()) {
      dataset = dataset_from_json(read_json_file(c.dataset));
    } else {
      dataset = make_compressor_dataset(c.n.at(0), c.n_g, derive_seed(c.seed, "train-dataset", 0),
                                        c.scale, threads);
      write_json_file(out / "dataset.json", dataset_to_json(*dataset));
    }
  }
  const auto runs = run_train(c, dataset ? &*dataset : nullptr, threads, log);

  const std::vector<std::string> columns = {"cost",        "scheme",  "mode",
                                            "seed",        "final_loss", "epochs_to_threshold",
                                            "final_S",     "threshold",  "stop_reason",
                                            "trace"};
  std::ostringstream summary_text;
  CsvWriter summary(summary_text, columns);
  for (const auto& run : runs) {
    const std::string name = run.trace_name();
    std::ostringstream trace;
    write_train_csv(trace, run.report);
    write_text(out / (name + ".csv"), trace.str());

    json meta = sidecar(c, {"epoch", "loss", "S", "mixing", "grad_norm"});
    meta["run"] = {{"cost", run.cost},
                   {"scheme", run.scheme},
                   {"mode", run.mode},
                   {"seed_index", run.seed_index},
                   {"init_seed", run.init_seed},
                   {"langevin_seed", run.langevin_seed},
                   {"stop_reason", run.report.stop_reason},
                   {"epochs_to_threshold",
                    run.epochs_to_threshold ? json(*run.epochs_to_threshold) : json(nullptr)}};
    meta["train_config"] = train_config_to_json(run.report.config);
    meta["final_params"] = params_to_json(
        {run.reg, c.layers[0], run.scheme, run.init_seed, run.report.final_params});
    if (dataset) meta["dataset"] = c.dataset.empty() ? "dataset.json" : c.dataset;
    write_json_file(out / (name + ".json"), meta);

    summary.cell(run.cost).cell(run.scheme).cell(run.mode).cell(run.seed_index);
    summary.cell(run.report.final_loss())
        .cell(run.epochs_to_threshold ? static_cast<std::int64_t>(*run.epochs_to_threshold)
                                      : std::int64_t{-1});
    summary.cell(run.report.epochs.back().entropy).cell(run.threshold);
    summary.cell(run.report.stop_reason).cell(name + ".csv");
    summary.end_row();
  }
  write_text(out / "train_summary.csv", summary_text.str());
  json meta = sidecar(c, columns);
  meta["epochs_to_threshold"] =
      "first logged epoch with loss <= threshold (|loss| for abs and compressor costs); -1 if never";
  write_json_file(out / "train_summary.json", meta);
}

void write_pretrain(const ExperimentConfig& c, int threads, const std::filesystem::path& out,
                    RunLog& log) {
  const auto runs = run_pretrain(c, threads, log);
  const std::vector<std::string> columns = {"step", "S_C", "mixing", "var_O1_estimate"};
  for (const auto& run : runs) {
    const std::string name = "pretrain_seed" + std::to_string(run.seed_index);
    std::ostringstream text;
    CsvWriter csv(text, columns);
    for (const auto& s : run.result.trace) {
      csv.cell(s.step).cell(s.collective_entropy).cell(s.mixing).cell(s.variance);
      csv.end_row();
    }
    write_text(out / (name + ".csv"), text.str());
    json meta = sidecar(c, columns);
    meta["run"] = {{"seed_index", run.seed_index},
                   {"init_seed", run.init_seed},
                   {"probe_seed", run.probe_seed}};
    meta["objective"] = "S_C of the Choi state, central finite-difference gradients, AMSGrad";
    meta["variance_protocol"] =
        "var of O at param_index over probe_samples re-draws theta -> theta + probe_width * "
        "U[-1, 1] of every non-entangling angle, entangling angles held; logged at step 0, "
        "every probe_every steps and the last step, nan elsewhere";
    meta["best_params"] = params_to_json(
        {run.reg, run.layers, c.schemes[0], run.init_seed, run.result.params});
    write_json_file(out / (name + ".json"), meta);
  }
}

}  // namespace

void run_command(const ExperimentConfig& c, int threads, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  RunLog log;
  if (c.command == "variance-sweep") {
    write_variance_sweep(c, threads, out, log);
  } else if (c.command == "variance-vs-entropy") {
    write_variance_vs_entropy(c, threads, out, log);
  } else if (c.command == "train") {
    write_train(c, threads, out, log);
  } else if (c.command == "pretrain") {
    write_pretrain(c, threads, out, log);
  } else if (c.command == "compressor-data") {
    const CompressorDataset data = run_compressor_data(c, threads);
    json j = dataset_to_json(data);
    j["generator"] = {{"version", code_version()}, {"config", config_to_json(c)}};
    write_json_file(out / "dataset.json", j);
  } else {
    throw ConfigurationError("unknown command '" + c.command + "'");
  }
  std::ostringstream text;
  for (const auto& w : log.warnings) {
    text << "warning: " << w << '\n';
    std::cerr << "warning: " << w << '\n';
  }
  write_text(out / "run.log", text.str());
}

}  // namespace bplab
