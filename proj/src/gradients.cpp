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


#include "bplab/gradients.hpp"

#include <array>
#include <cmath>

namespace bplab {

namespace {

/// C(r, s) = sum over groups of conj(adjoint_r) * state_s on pair (first, first+1).
Eigen::Matrix4cd pair_overlap(const StateVector& adjoint, const StateVector& state, int n,
                              int first) {
  const Eigen::Index lo = Eigen::Index{1} << (n - 2 - first);
  const Eigen::Index hi = lo << 1;
  const Eigen::Index stride = hi << 1;
  const Eigen::Index dim = state.size();
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  std::array<std::complex<double>, 4> a;
  std::array<std::complex<double>, 4> s;
  for (Eigen::Index outer = 0; outer < dim; outer += stride) {
    for (Eigen::Index i = outer; i < outer + lo; ++i) {
      const Eigen::Index idx[4] = {i, i + lo, i + hi, i + hi + lo};
      for (int r = 0; r < 4; ++r) {
        a[r] = std::conj(adjoint(idx[r]));
        s[r] = state(idx[r]);
      }
      for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) c(r, col) += a[r] * s[col];
      }
    }
  }
  return c;
}

/// d/dtheta of givens(a, b, theta).
Eigen::Matrix4d givens_derivative(int a, int b, double theta) {
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  d(a - 1, a - 1) = -s;
  d(b - 1, b - 1) = -s;
  d(a - 1, b - 1) = -c;
  d(b - 1, a - 1) = c;
  return d;
}

/// Derivatives of gate_unitary with respect to each of its six angles.
std::array<Eigen::Matrix4d, kAnglesPerGate> gate_derivatives(const GateAngles& angles) {
  std::array<Eigen::Matrix4d, kAnglesPerGate> rot;
  for (int m = 0; m < kAnglesPerGate; ++m) {
    rot[m] = givens(kRotationAxes[m].first, kRotationAxes[m].second, angles(m));
  }
  // before[m] = R_{m-1} ... R_0, after[m] = R_5 ... R_{m+1}.
  std::array<Eigen::Matrix4d, kAnglesPerGate> before;
  std::array<Eigen::Matrix4d, kAnglesPerGate> after;
  before[0].setIdentity();
  for (int m = 1; m < kAnglesPerGate; ++m) before[m] = rot[m - 1] * before[m - 1];
  after[kAnglesPerGate - 1].setIdentity();
  for (int m = kAnglesPerGate - 2; m >= 0; --m) after[m] = after[m + 1] * rot[m + 1];

  std::array<Eigen::Matrix4d, kAnglesPerGate> out;
  for (int m = 0; m < kAnglesPerGate; ++m) {
    const auto [a, b] = kRotationAxes[m];
    out[m] = after[m] * givens_derivative(a, b, angles(m)) * before[m];
  }
  return out;
}

}  // namespace

ExpectationGradient expectation_and_gradient(const CircuitLayout& layout,
                                             const ParamVector& params,
                                             const StateVector& input,
                                             const ObservableSum& obs) {
  const int n = layout.n();
  if (qubit_count(input) != n) {
    throw ArgumentError("input state does not match the layout's qubit count");
  }
  if (params.size() != layout.num_params()) {
    throw ArgumentError("parameter vector length does not match layout");
  }
  for (const auto& t : obs.terms) {
    if (t.max_qubit() >= n) throw ArgumentError("observable exceeds the register");
  }

  const auto& gates = layout.gates();
  std::vector<Eigen::Matrix4d> unitaries;
  unitaries.reserve(gates.size());
  StateVector psi = input;
  for (const GateSite& gate : gates) {
    unitaries.push_back(gate_unitary(params.segment<kAnglesPerGate>(gate.param_offset)));
    apply_two_qubit_inplace(psi, unitaries.back(), n, gate.first_qubit);
  }

  ExpectationGradient result;
  result.output = psi;
  StateVector adjoint = apply_observable(psi, obs);
  result.value = psi.dot(adjoint).real();
  result.gradient = GradientVector::Zero(layout.num_params());

  for (std::size_t g = gates.size(); g-- > 0;) {
    const GateSite& gate = gates[g];
    const Eigen::Matrix4d inverse = unitaries[g].transpose();
    apply_two_qubit_inplace(psi, inverse, n, gate.first_qubit);
    const Eigen::Matrix4cd overlap = pair_overlap(adjoint, psi, n, gate.first_qubit);
    const auto derivs = gate_derivatives(params.segment<kAnglesPerGate>(gate.param_offset));
    for (int m = 0; m < kAnglesPerGate; ++m) {
      // d<M>/dtheta = 2 Re <adjoint| dU |psi_before>.
      const double value = (derivs[m].cast<std::complex<double>>().cwiseProduct(overlap)).sum().real();
      result.gradient(gate.param_offset + m) = 2.0 * value;
    }
    apply_two_qubit_inplace(adjoint, inverse, n, gate.first_qubit);
  }
  return result;
}

GradientVector grad_expectation(const CircuitLayout& layout, const ParamVector& params,
                                const StateVector& input, const ObservableSum& obs) {
  return expectation_and_gradient(layout, params, input, obs).gradient;
}

namespace {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

CostGradient cost_and_gradient(const CostFunction& cost, const CircuitLayout& layout,
                               const ParamVector& params) {
  cost.validate(layout.n());
  CostGradient out;
  switch (cost.kind) {
    case CostKind::RawExpectation: {
      auto eg = expectation_and_gradient(layout, params, zero_state(layout.n()),
                                         cost.observable);
      out.value = eg.value;
      out.gradient = std::move(eg.gradient);
      out.output = std::move(eg.output);
      break;
    }
    case CostKind::AbsExpectation: {
      auto eg = expectation_and_gradient(layout, params, zero_state(layout.n()),
                                         cost.observable);
      out.value = std::abs(eg.value);
      out.gradient = sign0(eg.value) * eg.gradient;
      out.output = std::move(eg.output);
      break;
    }
    case CostKind::CompressorL1: {
      out.gradient = GradientVector::Zero(layout.num_params());
      for (const auto& sample : cost.dataset) {
        const auto eg =
            expectation_and_gradient(layout, params, sample.input, cost.observable);
        const double residual = eg.value - sample.label;
        out.value += std::abs(residual);
        out.gradient += sign0(residual) * eg.gradient;
      }
      break;
    }
  }
  return out;
}

GradientVector grad_cost(const CostFunction& cost, const CircuitLayout& layout,
                         const ParamVector& params) {
  return cost_and_gradient(cost, layout, params).gradient;
}

GradientVector central_difference(const std::function<double(const ParamVector&)>& f,
                                  const ParamVector& x, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
  GradientVector g(x.size());
  ParamVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

GradientVector finite_difference_grad(const CostFunction& cost, const CircuitLayout& layout,
                                      const ParamVector& params, double h) {
  return central_difference(
      [&](const ParamVector& p) { return cost_value(cost, layout, p); }, params, h);
}

VarianceReport summarize_variance(std::span<const double> values, Eigen::Index param_index) {
  const std::size_t count = values.size();
  if (count < 2) throw ArgumentError("variance needs at least two samples");
  VarianceReport report;
  report.param_index = param_index;
  report.samples = count;
  const double n = static_cast<double>(count);
  report.mean = pairwise_sum(values) / n;

  std::vector<double> centered(count);
  std::vector<double> squares(count);
  for (std::size_t i = 0; i < count; ++i) {
    centered[i] = values[i] - report.mean;
    squares[i] = centered[i] * centered[i];
  }
  const double s1 = pairwise_sum(centered);
  const double s2 = pairwise_sum(squares);
  report.variance = (s2 - s1 * s1 / n) / (n - 1.0);

  if (count >= 3) {
    // Leave-one-out variances from the running sums.
    std::vector<double> loo(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double m = n - 1.0;
      const double t1 = s1 - centered[i];
      const double t2 = s2 - squares[i];
      loo[i] = (t2 - t1 * t1 / m) / (m - 1.0);
    }
    const double loo_mean = pairwise_sum(loo) / n;
    std::vector<double> dev(count);
    for (std::size_t i = 0; i < count; ++i) dev[i] = (loo[i] - loo_mean) * (loo[i] - loo_mean);
    report.variance_stderr = std::sqrt((n - 1.0) / n * pairwise_sum(dev));
  }
  return report;
}

ParamVector sample_params(const CircuitLayout& layout, const InitScheme& scheme,
                          std::uint64_t seed, std::uint64_t index) {
  return init_params(layout, scheme, derive_seed(seed, "gradient-sample", index));
}

std::vector<double> sample_gradient_component(const CircuitLayout& layout,
                                              const CostFunction& cost,
                                              const InitScheme& scheme,
                                              Eigen::Index param_index,
                                              std::size_t n_samples, std::uint64_t seed,
                                              int threads) {
  if (param_index < 0 || param_index >= layout.num_params()) {
    throw ArgumentError("parameter index out of range");
  }
  cost.validate(layout.n());
  return map_samples(n_samples, threads, [&](std::size_t i) {
    const ParamVector params = sample_params(layout, scheme, seed, i);
    return grad_cost(cost, layout, params)(param_index);
  });
}

VarianceReport grad_variance_estimate(const CircuitLayout& layout, const CostFunction& cost,
                                      const InitScheme& scheme, Eigen::Index param_index,
                                      std::size_t n_samples, std::uint64_t seed,
                                      int threads) {
  const auto values =
      sample_gradient_component(layout, cost, scheme, param_index, n_samples, seed, threads);
  return summarize_variance(values, param_index);
}

}  // namespace bplab
