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


#ifndef BPLAB_GRADIENTS_HPP
#define BPLAB_GRADIENTS_HPP

#include "bplab/circuit.hpp"
#include "bplab/observables.hpp"
#include "bplab/parallel.hpp"
#include "bplab/rng.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bplab {

using GradientVector = Eigen::VectorXd;

struct ExpectationGradient {
  double value = 0.0;
  GradientVector gradient;
  StateVector output;  // U|input>
};

/// <M> on U|input> together with d<M>/dtheta for every angle.
///
/// One forward pass, then a reverse sweep that un-applies each gate from the
/// state and carries the adjoint M|psi> back through the circuit. The six
/// angle derivatives of a gate come from a single 4x4 overlap matrix between
/// the adjoint and the state on that gate's pair.
ExpectationGradient expectation_and_gradient(const CircuitLayout& layout,
                                             const ParamVector& params,
                                             const StateVector& input,
                                             const ObservableSum& obs);

GradientVector grad_expectation(const CircuitLayout& layout, const ParamVector& params,
                                const StateVector& input, const ObservableSum& obs);

struct CostGradient {
  double value = 0.0;
  GradientVector gradient;
  StateVector output;  // U|0>; empty for dataset costs
};

/// Chain rule through f; sign(0) is taken as 0 for absolute-value costs.
CostGradient cost_and_gradient(const CostFunction& cost, const CircuitLayout& layout,
                               const ParamVector& params);

GradientVector grad_cost(const CostFunction& cost, const CircuitLayout& layout,
                         const ParamVector& params);

/// (f(x + h e_i) - f(x - h e_i)) / 2h for every coordinate.
GradientVector central_difference(const std::function<double(const ParamVector&)>& f,
                                  const ParamVector& x, double h);

GradientVector finite_difference_grad(const CostFunction& cost, const CircuitLayout& layout,
                                      const ParamVector& params, double h);

struct VarianceReport {
  Eigen::Index param_index = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;         // unbiased
  double variance_stderr = 0.0;  // jackknife
};

/// Mean, unbiased variance and jackknife standard error of the variance.
VarianceReport summarize_variance(std::span<const double> values,
                                  Eigen::Index param_index = 0);

/// Parameters of Monte-Carlo sample `index`: init_params with the seed
/// derived from (seed, "gradient-sample", index).
ParamVector sample_params(const CircuitLayout& layout, const InitScheme& scheme,
                          std::uint64_t seed, std::uint64_t index);

/// Evaluates fn(i) for i in [0, count) in parallel and returns the results in
/// index order.
template <typename Fn>
auto map_samples(std::size_t count, int threads, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

/// O_{param_index} for n_samples draws of `scheme`.
std::vector<double> sample_gradient_component(const CircuitLayout& layout,
                                              const CostFunction& cost,
                                              const InitScheme& scheme,
                                              Eigen::Index param_index,
                                              std::size_t n_samples, std::uint64_t seed,
                                              int threads = 1);

VarianceReport grad_variance_estimate(const CircuitLayout& layout, const CostFunction& cost,
                                      const InitScheme& scheme, Eigen::Index param_index,
                                      std::size_t n_samples, std::uint64_t seed,
                                      int threads = 1);

}  // namespace bplab

#endif  // BPLAB_GRADIENTS_HPP
