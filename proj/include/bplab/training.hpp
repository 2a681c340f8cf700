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


#ifndef BPLAB_TRAINING_HPP
#define BPLAB_TRAINING_HPP

#include "bplab/circuit.hpp"
#include "bplab/gradients.hpp"
#include "bplab/observables.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace bplab {

struct AMSGradConfig {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// AMSGrad moments. No bias correction.
struct AMSGradState {
  AMSGradConfig config;
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  Eigen::VectorXd v_hat;
  std::int64_t step = 0;

  static AMSGradState fresh(const AMSGradConfig& config, Eigen::Index size);
};

/// One update of `params` in place.
void amsgrad_step(AMSGradState& state, ParamVector& params, const GradientVector& gradient);

enum class RegularizationSchedule { Constant, Adaptive };

struct RegularizationConfig {
  double lambda0 = 0.0;
  RegularizationSchedule schedule = RegularizationSchedule::Constant;
  /// Lower bound on lambda_eff / lambda0 for the adaptive schedule.
  double adaptive_floor = 0.0;
  /// L_ref of the adaptive schedule; train() fills it with the initial loss.
  double reference_loss = std::numeric_limits<double>::quiet_NaN();
};

/// lambda0 * clamp(loss / reference_loss, adaptive_floor, 1) for the adaptive
/// schedule (lambda0 when the reference loss is not positive).
double effective_lambda(const RegularizationConfig& cfg, double loss);

struct RegularizedGradient {
  GradientVector gradient;
  double loss = 0.0;     // unregularized L
  double penalty = 0.0;  // eta = lambda sum |sin theta_E| L
  double lambda = 0.0;   // lambda_eff
  StateVector output;
};

/// Gradient of L + lambda sum_E |sin theta_E| L.
RegularizedGradient regularized_gradient(const CircuitLayout& layout, const ParamVector& params,
                                         const CostFunction& cost,
                                         const RegularizationConfig& cfg);

struct LangevinConfig {
  double lambda = 0.0;
  std::vector<Eigen::Index> subset;
};

/// `size` distinct parameter indices drawn from the (seed, "langevin-subset") stream.
LangevinConfig make_langevin_config(const CircuitLayout& layout, double lambda,
                                    std::size_t size, std::uint64_t seed);
/// 10% of the parameters, at least one.
std::size_t default_langevin_size(const CircuitLayout& layout);

/// Angle representative in [0, 2pi).
double wrap_angle(double theta);

struct LangevinGradient {
  GradientVector gradient;
  double loss = 0.0;
  StateVector output;
};

/// Gradient of G = (1 + lambda sum_subset |phi|) L with phi wrapped to [0, 2pi).
LangevinGradient langevin_gradient_with_loss(const CircuitLayout& layout,
                                             const ParamVector& params,
                                             const CostFunction& cost,
                                             const LangevinConfig& cfg);
GradientVector langevin_gradient(const CircuitLayout& layout, const ParamVector& params,
                                 const CostFunction& cost, const LangevinConfig& cfg);

enum class GradientMode { Plain, Regularized, Langevin };

GradientMode parse_gradient_mode(const std::string& text);
std::string to_string(GradientMode mode);

struct TrainConfig {
  AMSGradConfig optimizer;
  GradientMode mode = GradientMode::Plain;
  RegularizationConfig regularization;
  LangevinConfig langevin;
  int epochs = 1000;
  std::optional<double> target_loss;
  double grad_tolerance = 1e-12;
  std::uint64_t seed = 0;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double entropy = 0.0;  // bipartite S of U|0> on the default partition
  double mixing = 0.0;   // NaN when the layout has no entangling angles
  double grad_norm = 0.0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  ParamVector final_params;
  TrainConfig config;
  std::string stop_reason;
  double wall_seconds = 0.0;

  /// First epoch whose loss is <= threshold.
  std::optional<int> first_epoch_at_or_below(double threshold) const;
  double final_loss() const { return epochs.back().loss; }
};

/// AMSGrad on the chosen gradient mode. Epoch e logs the state before the
/// e-th update; stops once loss <= target or the gradient norm vanishes.
TrainReport train(const CircuitLayout& layout, const ParamVector& initial,
                  const CostFunction& cost, const TrainConfig& config);

/// The quantity pre-training minimizes: S_C of the circuit's Choi state.
double pretraining_objective(const CircuitLayout& layout, const ParamVector& params);

/// Variance of O_{param_index} over re-draws of every non-entangling angle
/// theta -> theta + width * u, u ~ U[-1, 1], with entangling angles held.
VarianceReport perturbed_variance(const CircuitLayout& layout, const ParamVector& params,
                                  const CostFunction& cost, Eigen::Index param_index,
                                  std::size_t samples, double width, std::uint64_t seed,
                                  int threads = 1);

struct VarianceProbe {
  CostFunction cost;
  Eigen::Index param_index = 0;
  std::size_t samples = 200;
  double width = 0.5;
  std::uint64_t seed = 0;
  int every = 0;  // 0: first and last step only
};

struct PretrainConfig {
  int steps = 3000;
  AMSGradConfig optimizer;
  double fd_step = 1e-4;
  /// Stop once S_C <= converged; at S_C = 0 finite differences only see noise.
  double converged = 1e-8;
  std::optional<VarianceProbe> probe;
  int threads = 1;
};

struct PretrainStep {
  int step = 0;
  double collective_entropy = 0.0;
  double mixing = 0.0;
  double variance = std::numeric_limits<double>::quiet_NaN();
};

struct PretrainResult {
  ParamVector params;  // lowest-S_C parameters seen
  std::vector<PretrainStep> trace;
};

/// Minimizes S_C with central finite-difference gradients and AMSGrad. The
/// trace ends early when S_C reaches the convergence threshold.
PretrainResult pretrain_minimize_sc(const CircuitLayout& layout, const ParamVector& initial,
                                    const PretrainConfig& config);

}  // namespace bplab

#endif  // BPLAB_TRAINING_HPP
