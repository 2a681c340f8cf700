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


#include "bplab/circuit.hpp"

#include "bplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bplab {

std::vector<int> RegisterSpec::cost_qubits() const {
  std::vector<int> out;
  for (int q = cost_offset; q < cost_offset + n_cost; ++q) out.push_back(q);
  return out;
}

std::vector<int> RegisterSpec::noncost_qubits() const {
  std::vector<int> out;
  for (int q = 0; q < n; ++q) {
    if (!in_cost(q)) out.push_back(q);
  }
  return out;
}

void RegisterSpec::validate() const {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigurationError("register size n=" + std::to_string(n) +
                             " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (n_cost < 1 || n_cost > n || cost_offset < 0 || cost_offset + n_cost > n) {
    throw ConfigurationError("cost register [" + std::to_string(cost_offset) +
                             ", " + std::to_string(cost_offset + n_cost) +
                             ") does not fit in n=" + std::to_string(n));
  }
}

CircuitLayout::CircuitLayout(RegisterSpec reg, int layers)
    : reg_(reg), layers_(layers) {
  reg_.validate();
  if (reg_.n < 2) throw ConfigurationError("circuits need at least 2 qubits");
  if (layers < 1) throw ConfigurationError("layer count must be >= 1");

  Eigen::Index offset = 0;
  for (int k = 1; k <= layers; ++k) {
    layer_begin_.push_back(gates_.size());
    int start = (k - 1) % 2;
    if (start + 1 > reg_.n - 1) start = 0;
    bool boundary = false;
    for (int q = start; q + 1 <= reg_.n - 1; q += 2) {
      const bool entangling = reg_.straddles(q);
      gates_.push_back({k, q, offset, entangling});
      if (entangling) {
        boundary = true;
        for (int m = 0; m < kAnglesPerGate; ++m) {
          entangling_indices_.push_back(offset + m);
        }
      }
      offset += kAnglesPerGate;
    }
    if (boundary) boundary_layers_.push_back(k);
  }
  layer_begin_.push_back(gates_.size());
}

CircuitLayout build_layout(const RegisterSpec& reg, int layers) {
  return CircuitLayout(reg, layers);
}

HermitianMatrix generator_matrix(int a, int b) {
  if (a < 1 || b > 4 || a >= b) {
    throw ArgumentError("generator axes must satisfy 1 <= a < b <= 4");
  }
  HermitianMatrix k = HermitianMatrix::Zero(4, 4);
  k(a - 1, b - 1) = std::complex<double>(0.0, -1.0);
  k(b - 1, a - 1) = std::complex<double>(0.0, 1.0);
  return k;
}

Eigen::Matrix4d givens(int a, int b, double theta) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r(a - 1, a - 1) = c;
  r(b - 1, b - 1) = c;
  r(a - 1, b - 1) = -s;
  r(b - 1, a - 1) = s;
  return r;
}

Eigen::Matrix4d gate_unitary(const GateAngles& angles) {
  if (!angles.allFinite()) throw NumericError("non-finite gate angle");
  Eigen::Matrix4d u = Eigen::Matrix4d::Identity();
  for (int m = 0; m < kAnglesPerGate; ++m) {
    const auto [a, b] = kRotationAxes[m];
    u = givens(a, b, angles(m)) * u;
  }
  return u;
}

void apply_circuit_inplace(const CircuitLayout& layout, const ParamVector& params,
                           StateVector& state, int qubit_offset) {
  const int total = qubit_count(state);
  if (params.size() != layout.num_params()) {
    throw ArgumentError("parameter vector length " + std::to_string(params.size()) +
                        " does not match layout (" +
                        std::to_string(layout.num_params()) + ")");
  }
  if (qubit_offset < 0 || qubit_offset + layout.n() > total) {
    throw ArgumentError("state does not match the layout's qubit count");
  }
  for (const GateSite& gate : layout.gates()) {
    const Eigen::Matrix4d u =
        gate_unitary(params.segment<kAnglesPerGate>(gate.param_offset));
    apply_two_qubit_inplace(state, u, total, qubit_offset + gate.first_qubit);
  }
}

StateVector apply_circuit(const CircuitLayout& layout, const ParamVector& params,
                          const StateVector& input) {
  if (qubit_count(input) != layout.n()) {
    throw ArgumentError("input state has " + std::to_string(qubit_count(input)) +
                        " qubits, layout has " + std::to_string(layout.n()));
  }
  StateVector out = input;
  apply_circuit_inplace(layout, params, out);
  return out;
}

InitScheme parse_init_scheme(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "random") return InitScheme::random();
  if (lower == "partitioned") return InitScheme::partitioned();
  const std::string prefix = "hardlimit:";
  if (lower.rfind(prefix, 0) == 0) {
    const std::string rest = lower.substr(prefix.size());
    const auto colon = rest.find(':');
    const std::string digits = rest.substr(0, colon);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigurationError("hard-limit layer count must be a non-negative integer");
    }
    const int count = std::stoi(digits);
    Placement placement = Placement::Last;
    if (colon != std::string::npos) {
      const std::string p = rest.substr(colon + 1);
      if (p == "first") {
        placement = Placement::First;
      } else if (p == "last") {
        placement = Placement::Last;
      } else if (p == "even") {
        placement = Placement::Even;
      } else {
        throw ConfigurationError("unknown hard-limit placement '" + p + "'");
      }
    }
    return InitScheme::hard_limit(count, placement);
  }
  throw ConfigurationError("unknown initialization scheme '" + text + "'");
}

std::string to_string(const InitScheme& scheme) {
  switch (scheme.kind) {
    case InitKind::Random:
      return "random";
    case InitKind::Partitioned:
      return "partitioned";
    case InitKind::FromValues:
      return "values";
    case InitKind::HardLimit: {
      const char* p = scheme.placement == Placement::First  ? "first"
                      : scheme.placement == Placement::Last ? "last"
                                                            : "even";
      return "hardlimit:" + std::to_string(scheme.entangling_layers) + ":" + p;
    }
  }
  return "unknown";
}

std::vector<int> selected_boundary_layers(const CircuitLayout& layout, int count,
                                          Placement placement) {
  const auto& all = layout.boundary_layers();
  const int available = static_cast<int>(all.size());
  if (count < 0 || count > available) {
    throw ConfigurationError("hard limit L_E=" + std::to_string(count) +
                             " exceeds the " + std::to_string(available) +
                             " boundary layers of the layout");
  }
  std::vector<int> chosen;
  if (count == 0) return chosen;
  switch (placement) {
    case Placement::First:
      chosen.assign(all.begin(), all.begin() + count);
      break;
    case Placement::Last:
      chosen.assign(all.end() - count, all.end());
      break;
    case Placement::Even:
      // Spread count picks over the available layers, always including the last.
      for (int j = 0; j < count; ++j) {
        const int idx = available - 1 -
                        static_cast<int>(static_cast<long long>(j) * available / count);
        chosen.push_back(all[idx]);
      }
      std::sort(chosen.begin(), chosen.end());
      break;
  }
  return chosen;
}

ParamVector init_params(const CircuitLayout& layout, const InitScheme& scheme,
                        std::uint64_t seed) {
  if (scheme.kind == InitKind::FromValues) {
    if (scheme.values.size() != layout.num_params()) {
      throw ConfigurationError("supplied parameter vector has wrong length");
    }
    if (!scheme.values.allFinite()) throw NumericError("non-finite parameter");
    return scheme.values;
  }
  // All schemes draw every angle from the same stream, so Random and
  // Partitioned share their non-entangling angles for a given seed.
  CounterRng rng(seed, "init-params");
  ParamVector params(layout.num_params());
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    params(i) = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  if (scheme.kind == InitKind::Random) return params;

  std::vector<int> keep_layers;
  if (scheme.kind == InitKind::HardLimit) {
    keep_layers =
        selected_boundary_layers(layout, scheme.entangling_layers, scheme.placement);
  }
  for (const GateSite& gate : layout.gates()) {
    if (!gate.entangling) continue;
    if (std::find(keep_layers.begin(), keep_layers.end(), gate.layer) !=
        keep_layers.end()) {
      continue;
    }
    params.segment<kAnglesPerGate>(gate.param_offset).setZero();
  }
  return params;
}

}  // namespace bplab
