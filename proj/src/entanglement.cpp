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


#include "bplab/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace bplab {

Partition make_partition(int n, std::vector<int> alpha) {
  std::sort(alpha.begin(), alpha.end());
  if (alpha.empty() || static_cast<int>(alpha.size()) >= n) {
    throw ArgumentError("partition sides must both be non-empty");
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] >= n) throw ArgumentError("partition index out of range");
    if (i > 0 && alpha[i] != alpha[i - 1] + 1) {
      throw ArgumentError("partition alpha must be contiguous");
    }
  }
  Partition p;
  p.alpha = std::move(alpha);
  for (int q = 0; q < n; ++q) {
    if (q < p.alpha.front() || q > p.alpha.back()) p.beta.push_back(q);
  }
  return p;
}

Partition default_partition(const RegisterSpec& reg) {
  reg.validate();
  const int n = reg.n;
  if (n < 2) throw ConfigurationError("partition needs at least 2 qubits");
  const int size = std::max(1, (n - 1) / 2);
  int best_start = 0;
  int best_overlap = -1;
  int best_distance = 0;
  for (int start = 0; start + size <= n; ++start) {
    int overlap = 0;
    for (int q = start; q < start + size; ++q) overlap += reg.in_cost(q) ? 1 : 0;
    const int distance = std::abs(start - reg.cost_offset);
    if (overlap > best_overlap || (overlap == best_overlap && distance < best_distance)) {
      best_start = start;
      best_overlap = overlap;
      best_distance = distance;
    }
  }
  std::vector<int> alpha;
  for (int q = best_start; q < best_start + size; ++q) alpha.push_back(q);
  return make_partition(n, std::move(alpha));
}

double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    const double p = std::clamp(lambda, 0.0, 1.0);
    if (p < kEntropyClip) continue;
    s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_from_spectrum(hermitian_eig(rho).values);
}

double subsystem_entropy(const StateVector& state, const std::vector<int>& keep) {
  const int n = qubit_count(state);
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw ArgumentError("subsystem must be a non-empty strict subset");
  }
  const ComplexMatrix<double> coeffs = bipartite_coefficients(state, keep);
  // Both reduced matrices share their nonzero spectrum; diagonalize the smaller.
  const DensityMatrix gram = coeffs.rows() <= coeffs.cols()
                                 ? DensityMatrix(coeffs * coeffs.adjoint())
                                 : DensityMatrix(coeffs.adjoint() * coeffs);
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("reduced-state eigensolver failed");
  return entropy_from_spectrum(solver.eigenvalues());
}

double bipartite_entropy(const StateVector& state, const Partition& partition) {
  const int n = qubit_count(state);
  if (static_cast<int>(partition.alpha.size() + partition.beta.size()) != n) {
    throw ArgumentError("partition does not cover the state's qubits");
  }
  return subsystem_entropy(state, partition.alpha);
}

double mutual_information_sum(const StateVector& state, const RegisterSpec& reg) {
  reg.validate();
  if (qubit_count(state) != reg.n) throw ArgumentError("state does not match register");
  if (reg.n_noncost() < 1) throw ConfigurationError("mutual information needs n_N >= 1");
  const std::vector<int> cost = reg.cost_qubits();
  const double s_cost = subsystem_entropy(state, cost);
  double total = 0.0;
  for (int q : reg.noncost_qubits()) {
    std::vector<int> joint = cost;
    joint.push_back(q);
    std::sort(joint.begin(), joint.end());
    const double s_q = subsystem_entropy(state, {q});
    const double s_joint =
        static_cast<int>(joint.size()) == reg.n ? 0.0 : subsystem_entropy(state, joint);
    total += s_cost + s_q - s_joint;
  }
  return total;
}

namespace {

void check_choi_size(int n) {
  if (2 * n > kMaxQubits) {
    throw ConfigurationError("Choi state needs 2n <= " + std::to_string(kMaxQubits) +
                             " qubits (n=" + std::to_string(n) + ")");
  }
}

}  // namespace

StateVector choi_state(const CircuitLayout& layout, const ParamVector& params) {
  const int n = layout.n();
  check_choi_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  StateVector psi = StateVector::Zero(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) psi(j * dim + j) = amp;
  apply_circuit_inplace(layout, params, psi, n);
  return psi;
}

double collective_entropy(const CircuitLayout& layout, const ParamVector& params) {
  const RegisterSpec& reg = layout.register_spec();
  if (reg.n_noncost() == 0) return 0.0;
  const StateVector psi = choi_state(layout, params);
  std::vector<int> keep;
  for (int q : reg.cost_qubits()) keep.push_back(q);
  for (int q : reg.cost_qubits()) keep.push_back(reg.n + q);
  return subsystem_entropy(psi, keep);
}

double mixing_metric(const ParamVector& params, const std::vector<Eigen::Index>& indices) {
  if (indices.empty()) throw ArgumentError("mixing metric needs entangling angles");
  double total = 0.0;
  for (Eigen::Index i : indices) {
    if (i < 0 || i >= params.size()) throw ArgumentError("angle index out of range");
    total += std::abs(std::sin(params(i)));
  }
  return total / static_cast<double>(indices.size());
}

}  // namespace bplab
