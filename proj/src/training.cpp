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


#include "bplab/training.hpp"

#include "bplab/entanglement.hpp"
#include "bplab/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

namespace bplab {

AMSGradState AMSGradState::fresh(const AMSGradConfig& config, Eigen::Index size) {
  AMSGradState s;
  s.config = config;
  s.m = Eigen::VectorXd::Zero(size);
  s.v = Eigen::VectorXd::Zero(size);
  s.v_hat = Eigen::VectorXd::Zero(size);
  return s;
}

void amsgrad_step(AMSGradState& state, ParamVector& params, const GradientVector& gradient) {
  if (gradient.size() != params.size() || state.m.size() != params.size()) {
    throw ArgumentError("AMSGrad: gradient, parameter and moment lengths differ");
  }
  if (!gradient.allFinite()) throw NumericError("AMSGrad: non-finite gradient");
  const auto& c = state.config;
  state.m = c.beta1 * state.m + (1.0 - c.beta1) * gradient;
  state.v = c.beta2 * state.v + (1.0 - c.beta2) * gradient.cwiseAbs2();
  state.v_hat = state.v_hat.cwiseMax(state.v);
  params.array() -= c.learning_rate * state.m.array() / (state.v_hat.array().sqrt() + c.epsilon);
  ++state.step;
}

double effective_lambda(const RegularizationConfig& cfg, double loss) {
  if (cfg.schedule == RegularizationSchedule::Constant) return cfg.lambda0;
  if (!(cfg.reference_loss > 0.0)) return cfg.lambda0;
  const double ratio = std::clamp(loss / cfg.reference_loss, cfg.adaptive_floor, 1.0);
  return cfg.lambda0 * ratio;
}

namespace {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

RegularizedGradient regularized_gradient(const CircuitLayout& layout, const ParamVector& params,
                                         const CostFunction& cost,
                                         const RegularizationConfig& cfg) {
  if (cfg.lambda0 < 0.0) throw ConfigurationError("regularization scale must be >= 0");
  CostGradient base = cost_and_gradient(cost, layout, params);
  RegularizedGradient out;
  out.loss = base.value;
  out.output = std::move(base.output);
  out.lambda = effective_lambda(cfg, base.value);
  if (out.lambda == 0.0) {
    out.gradient = std::move(base.gradient);
    return out;
  }
  const auto& entangling = layout.entangling_indices();
  if (entangling.empty()) {
    throw ConfigurationError("regularization needs entangling angles in the layout");
  }
  double sin_sum = 0.0;
  for (Eigen::Index i : entangling) sin_sum += std::abs(std::sin(params(i)));
  out.gradient = (1.0 + out.lambda * sin_sum) * base.gradient;
  for (Eigen::Index i : entangling) {
    out.gradient(i) += out.lambda * std::cos(params(i)) * sign0(std::sin(params(i))) * base.value;
  }
  out.penalty = out.lambda * sin_sum * base.value;
  return out;
}

std::size_t default_langevin_size(const CircuitLayout& layout) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(layout.num_params()))));
}

LangevinConfig make_langevin_config(const CircuitLayout& layout, double lambda,
                                    std::size_t size, std::uint64_t seed) {
  const auto total = static_cast<std::size_t>(layout.num_params());
  if (size > total) throw ConfigurationError("Langevin subset larger than parameter count");
  if (lambda < 0.0) throw ConfigurationError("Langevin scale must be >= 0");
  std::vector<Eigen::Index> pool(total);
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  CounterRng rng(seed, "langevin-subset");
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(pool[i], pool[j]);
  }
  LangevinConfig cfg;
  cfg.lambda = lambda;
  cfg.subset.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
  std::sort(cfg.subset.begin(), cfg.subset.end());
  return cfg;
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

LangevinGradient langevin_gradient_with_loss(const CircuitLayout& layout,
                                             const ParamVector& params,
                                             const CostFunction& cost,
                                             const LangevinConfig& cfg) {
  if (cfg.lambda < 0.0) throw ConfigurationError("Langevin scale must be >= 0");
  for (Eigen::Index i : cfg.subset) {
    if (i < 0 || i >= layout.num_params()) {
      throw ConfigurationError("Langevin subset index out of range");
    }
  }
  CostGradient base = cost_and_gradient(cost, layout, params);
  LangevinGradient out;
  out.loss = base.value;
  out.output = std::move(base.output);
  if (cfg.lambda == 0.0) {
    out.gradient = std::move(base.gradient);
    return out;
  }
  double phi_sum = 0.0;
  for (Eigen::Index i : cfg.subset) phi_sum += wrap_angle(params(i));
  out.gradient = (1.0 + cfg.lambda * phi_sum) * base.gradient;
  for (Eigen::Index i : cfg.subset) {
    out.gradient(i) += cfg.lambda * sign0(wrap_angle(params(i))) * base.value;
  }
  return out;
}

GradientVector langevin_gradient(const CircuitLayout& layout, const ParamVector& params,
                                 const CostFunction& cost, const LangevinConfig& cfg) {
  return langevin_gradient_with_loss(layout, params, cost, cfg).gradient;
}

GradientMode parse_gradient_mode(const std::string& text) {
  if (text == "plain") return GradientMode::Plain;
  if (text == "regularized") return GradientMode::Regularized;
  if (text == "langevin") return GradientMode::Langevin;
  throw ConfigurationError("unknown gradient mode '" + text + "'");
}

std::string to_string(GradientMode mode) {
  switch (mode) {
    case GradientMode::Plain:
      return "plain";
    case GradientMode::Regularized:
      return "regularized";
    case GradientMode::Langevin:
      return "langevin";
  }
  return "unknown";
}

std::optional<int> TrainReport::first_epoch_at_or_below(double threshold) const {
  for (const auto& r : epochs) {
    if (r.loss <= threshold) return r.epoch;
  }
  return std::nullopt;
}

TrainReport train(const CircuitLayout& layout, const ParamVector& initial,
                  const CostFunction& cost, const TrainConfig& config) {
  if (config.epochs < 1) throw ConfigurationError("training needs at least one epoch");
  if (initial.size() != layout.num_params()) {
    throw ArgumentError("initial parameters do not match the layout");
  }
  cost.validate(layout.n());
  const auto start = std::chrono::steady_clock::now();

  TrainReport report;
  report.config = config;
  const Partition partition = default_partition(layout.register_spec());
  const bool has_entangling = !layout.entangling_indices().empty();

  ParamVector params = initial;
  AMSGradState optimizer = AMSGradState::fresh(config.optimizer, params.size());
  RegularizationConfig reg = config.regularization;

  for (int epoch = 0;; ++epoch) {
    GradientVector gradient;
    double loss = 0.0;
    StateVector output;
    switch (config.mode) {
      case GradientMode::Plain: {
        auto g = cost_and_gradient(cost, layout, params);
        gradient = std::move(g.gradient);
        loss = g.value;
        output = std::move(g.output);
        break;
      }
      case GradientMode::Regularized: {
        if (epoch == 0 && reg.schedule == RegularizationSchedule::Adaptive &&
            std::isnan(reg.reference_loss)) {
          reg.reference_loss = cost_value(cost, layout, params);
        }
        auto g = regularized_gradient(layout, params, cost, reg);
        gradient = std::move(g.gradient);
        loss = g.loss;
        output = std::move(g.output);
        break;
      }
      case GradientMode::Langevin: {
        auto g = langevin_gradient_with_loss(layout, params, cost, config.langevin);
        gradient = std::move(g.gradient);
        loss = g.loss;
        output = std::move(g.output);
        break;
      }
    }
    if (!gradient.allFinite() || !std::isfinite(loss)) {
      throw NumericError("non-finite loss or gradient at epoch " + std::to_string(epoch));
    }
    if (output.size() == 0) output = apply_circuit(layout, params, zero_state(layout.n()));

    EpochRecord record;
    record.epoch = epoch;
    record.loss = loss;
    record.entropy = bipartite_entropy(output, partition);
    record.mixing = has_entangling ? mixing_metric(params, layout.entangling_indices())
                                   : std::numeric_limits<double>::quiet_NaN();
    record.grad_norm = gradient.norm();
    report.epochs.push_back(record);

    if (config.target_loss && loss <= *config.target_loss) {
      report.stop_reason = "target";
      break;
    }
    if (record.grad_norm < config.grad_tolerance) {
      report.stop_reason = "stationary";
      break;
    }
    if (epoch == config.epochs) {
      report.stop_reason = "epochs";
      break;
    }
    try {
      amsgrad_step(optimizer, params, gradient);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (epoch " + std::to_string(epoch) + ")");
    }
  }
  report.final_params = params;
  report.config.regularization = reg;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double pretraining_objective(const CircuitLayout& layout, const ParamVector& params) {
  return collective_entropy(layout, params);
}

VarianceReport perturbed_variance(const CircuitLayout& layout, const ParamVector& params,
                                  const CostFunction& cost, Eigen::Index param_index,
                                  std::size_t samples, double width, std::uint64_t seed,
                                  int threads) {
  if (param_index < 0 || param_index >= layout.num_params()) {
    throw ArgumentError("parameter index out of range");
  }
  std::vector<bool> entangling(static_cast<std::size_t>(layout.num_params()), false);
  for (Eigen::Index i : layout.entangling_indices()) entangling[i] = true;
  const auto values = map_samples(samples, threads, [&](std::size_t s) {
    CounterRng rng(seed, "perturbed-variance", s);
    ParamVector p = params;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (!entangling[i]) p(i) += width * rng.uniform(-1.0, 1.0);
    }
    return grad_cost(cost, layout, p)(param_index);
  });
  return summarize_variance(values, param_index);
}

PretrainResult pretrain_minimize_sc(const CircuitLayout& layout, const ParamVector& initial,
                                    const PretrainConfig& config) {
  if (2 * layout.n() > kMaxQubits) {
    throw ConfigurationError("pre-training needs 2n <= " + std::to_string(kMaxQubits));
  }
  if (config.steps < 0) throw ConfigurationError("negative step count");
  if (initial.size() != layout.num_params()) {
    throw ArgumentError("initial parameters do not match the layout");
  }
  const auto objective = [&](const ParamVector& p) { return pretraining_objective(layout, p); };
  const bool has_entangling = !layout.entangling_indices().empty();

  PretrainResult result;
  ParamVector params = initial;
  AMSGradState optimizer = AMSGradState::fresh(config.optimizer, params.size());
  double best = std::numeric_limits<double>::infinity();

  for (int step = 0; step <= config.steps; ++step) {
    PretrainStep row;
    row.step = step;
    row.collective_entropy = objective(params);
    const bool converged = row.collective_entropy <= config.converged;
    row.mixing = has_entangling ? mixing_metric(params, layout.entangling_indices())
                                : std::numeric_limits<double>::quiet_NaN();
    if (config.probe) {
      const auto& probe = *config.probe;
      const bool due = step == 0 || step == config.steps || converged ||
                       (probe.every > 0 && step % probe.every == 0);
      if (due) {
        row.variance = perturbed_variance(layout, params, probe.cost, probe.param_index,
                                          probe.samples, probe.width, probe.seed, config.threads)
                           .variance;
      }
    }
    result.trace.push_back(row);
    if (row.collective_entropy < best) {
      best = row.collective_entropy;
      result.params = params;
    }
    if (step == config.steps || converged) break;
    const GradientVector g = central_difference(objective, params, config.fd_step);
    amsgrad_step(optimizer, params, g);
  }
  return result;
}

}  // namespace bplab
