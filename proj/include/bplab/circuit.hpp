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


#ifndef BPLAB_CIRCUIT_HPP
#define BPLAB_CIRCUIT_HPP

#include "bplab/qcore.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bplab {

/// Contiguous cost register [cost_offset, cost_offset + n_cost) inside n
/// qubits; everything else is the non-cost register.
struct RegisterSpec {
  int n = 0;
  int cost_offset = 0;
  int n_cost = 0;

  static RegisterSpec leftmost(int n, int n_cost) { return {n, 0, n_cost}; }

  int n_noncost() const { return n - n_cost; }
  bool in_cost(int q) const { return q >= cost_offset && q < cost_offset + n_cost; }
  /// Gate (q, q+1) straddles a cost / non-cost boundary.
  bool straddles(int q) const { return in_cost(q) != in_cost(q + 1); }
  std::vector<int> cost_qubits() const;
  std::vector<int> noncost_qubits() const;
  void validate() const;

  friend bool operator==(const RegisterSpec&, const RegisterSpec&) = default;
};

struct GateSite {
  int layer = 0;        // 1-based
  int first_qubit = 0;  // the gate acts on (first_qubit, first_qubit + 1)
  Eigen::Index param_offset = 0;
  bool entangling = false;
};

inline constexpr int kAnglesPerGate = 6;

/// Brick-wall placement of two-qubit gates.
///
/// Layer k starts at qubit q = (k - 1) mod 2 and places gates on
/// (q + 2m, q + 2m + 1) while they fit. On two qubits the odd-offset layer
/// would be empty, so every layer holds the single (0, 1) gate.
class CircuitLayout {
 public:
  CircuitLayout(RegisterSpec reg, int layers);

  const RegisterSpec& register_spec() const { return reg_; }
  int n() const { return reg_.n; }
  int layers() const { return layers_; }
  const std::vector<GateSite>& gates() const { return gates_; }
  /// Gates of layer k (1-based) are gates()[layer_begin(k) .. layer_begin(k+1)).
  std::size_t layer_begin(int k) const { return layer_begin_[k - 1]; }
  Eigen::Index num_params() const {
    return static_cast<Eigen::Index>(gates_.size()) * kAnglesPerGate;
  }
  const std::vector<Eigen::Index>& entangling_indices() const {
    return entangling_indices_;
  }
  /// Sorted 1-based layers that contain at least one entangling gate.
  const std::vector<int>& boundary_layers() const { return boundary_layers_; }

 private:
  RegisterSpec reg_;
  int layers_;
  std::vector<GateSite> gates_;
  std::vector<std::size_t> layer_begin_;
  std::vector<Eigen::Index> entangling_indices_;
  std::vector<int> boundary_layers_;
};

using ParamVector = Eigen::VectorXd;
using GateAngles = Eigen::Matrix<double, kAnglesPerGate, 1>;

CircuitLayout build_layout(const RegisterSpec& reg, int layers);

/// K_ab for 1-based axes 1 <= a < b <= 4: -i at (a-1, b-1), +i at (b-1, a-1).
HermitianMatrix generator_matrix(int a, int b);

/// Givens rotation R_ab(theta) = exp(-i theta K_ab) (real, 1-based axes).
Eigen::Matrix4d givens(int a, int b, double theta);

/// Axis pairs of the six rotations in application order: angle m (0-based)
/// rotates the axes kRotationAxes[m].
inline constexpr std::pair<int, int> kRotationAxes[kAnglesPerGate] = {
    {3, 4}, {2, 3}, {3, 4}, {1, 2}, {2, 3}, {3, 4}};

/// R34(a6) R23(a5) R12(a4) R34(a3) R23(a2) R34(a1).
Eigen::Matrix4d gate_unitary(const GateAngles& angles);

void apply_circuit_inplace(const CircuitLayout& layout, const ParamVector& params,
                           StateVector& state, int qubit_offset = 0);
StateVector apply_circuit(const CircuitLayout& layout, const ParamVector& params,
                          const StateVector& input);

enum class InitKind { Random, Partitioned, HardLimit, FromValues };
enum class Placement { First, Last, Even };

struct InitScheme {
  InitKind kind = InitKind::Random;
  int entangling_layers = 0;  // HardLimit only
  Placement placement = Placement::Last;
  ParamVector values;  // FromValues only

  static InitScheme random() { return {}; }
  static InitScheme partitioned() { return {InitKind::Partitioned, 0, Placement::Last, {}}; }
  static InitScheme hard_limit(int layers, Placement p = Placement::Last) {
    return {InitKind::HardLimit, layers, p, {}};
  }
  static InitScheme from_values(ParamVector v) {
    return {InitKind::FromValues, 0, Placement::Last, std::move(v)};
  }
};

/// Parses "random", "partitioned", "hardlimit:<L_E>[:first|last|even]".
InitScheme parse_init_scheme(const std::string& text);
std::string to_string(const InitScheme& scheme);

/// Layers (1-based) where HardLimit leaves the entangling angles random.
std::vector<int> selected_boundary_layers(const CircuitLayout& layout, int count,
                                          Placement placement);

ParamVector init_params(const CircuitLayout& layout, const InitScheme& scheme,
                        std::uint64_t seed);

}  // namespace bplab

#endif  // BPLAB_CIRCUIT_HPP
