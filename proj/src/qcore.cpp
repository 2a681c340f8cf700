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

#include "bplab/qcore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace bplab {

int qubit_count(Eigen::Index dimension) {
  if (dimension < 2 || (dimension & (dimension - 1)) != 0) {
    throw ArgumentError("amplitude count " + std::to_string(dimension) +
                        " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dimension) ++n;
  return n;
}

StateVector zero_state(int n) { return basis_state(n, 0); }

StateVector basis_state(int n, Eigen::Index index) {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigurationError("qubit count " + std::to_string(n) +
                             " outside [1, " + std::to_string(kMaxQubits) +
                             "]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (index < 0 || index >= dim) {
    throw ArgumentError("basis index out of range");
  }
  StateVector state = StateVector::Zero(dim);
  state(index) = 1.0;
  return state;
}

StateVector apply_two_qubit(const StateVector& state,
                            const Eigen::Matrix4cd& gate,
                            std::pair<int, int> pair) {
  const int n = qubit_count(state);
  if (pair.second != pair.first + 1) {
    throw UnsupportedTopologyError(
        "two-qubit gates act on adjacent pairs (i, i+1) only");
  }
  if (pair.first < 0 || pair.second >= n) {
    throw ArgumentError("qubit pair out of range");
  }
  if (!is_unitary(gate)) {
    throw ArgumentError("gate is not unitary within tolerance");
  }
  StateVector out = state;
  apply_two_qubit_inplace(out, gate, n, pair.first);
  return out;
}

namespace {

void check_keep_set(int n, const std::vector<int>& keep) {
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw ArgumentError("kept qubit set must be a non-empty strict subset");
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n) {
      throw ArgumentError("kept qubit index out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw ArgumentError("kept qubit set must be sorted and unique");
    }
  }
}

}  // namespace

ComplexMatrix<double> bipartite_coefficients(const StateVector& state,
                                             const std::vector<int>& keep) {
  const int n = qubit_count(state);
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n || kept[q]) {
      throw ArgumentError("invalid kept qubit set");
    }
    kept[q] = true;
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!kept[q]) rest.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const int r = static_cast<int>(rest.size());
  ComplexMatrix<double> coeffs(Eigen::Index{1} << k, Eigen::Index{1} << r);
  for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
    Eigen::Index row = 0;
    for (int q : keep) row = (row << 1) | ((idx >> (n - 1 - q)) & 1);
    Eigen::Index col = 0;
    for (int q : rest) col = (col << 1) | ((idx >> (n - 1 - q)) & 1);
    coeffs(row, col) = state(idx);
  }
  return coeffs;
}

DensityMatrix partial_trace(const StateVector& state,
                            const std::vector<int>& keep) {
  check_keep_set(qubit_count(state), keep);
  const ComplexMatrix<double> coeffs = bipartite_coefficients(state, keep);
  return coeffs * coeffs.adjoint();
}

EigenDecomposition hermitian_eig(const HermitianMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ArgumentError("hermitian_eig expects a non-empty square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, kStructuralTol * scale)) {
    throw ArgumentError("matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace bplab
