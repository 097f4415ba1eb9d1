// Copyright 2026 The noisebench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBENCH_CIRCUITS_HPP_
#define NOISEBENCH_CIRCUITS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace noisebench::circuits {

// Gate alphabet. X, SX, RZ and CX are the device-native operations; RY shows
// up only in circuits that have not been compiled yet.
enum class GateKind { X, SX, RZ, RY, CX };

struct Gate {
  GateKind kind;
  std::vector<int> qubits;  // one entry, or two for CX with the control first
  double theta = 0.0;       // rotation angle, RZ/RY only

  bool operator==(const Gate&) const = default;
};

Gate make_x(int q);
Gate make_sx(int q);
Gate make_rz(int q, double theta);
Gate make_ry(int q, double theta);
Gate make_cx(int control, int target);

// Ordered gate list on a linear chain of `width` qubits. layer_tags, when
// non-empty, holds the 0-based layer index of each gate. angle_seed records
// the sub-seed a generated circuit's angles were drawn from.
struct Circuit {
  int width = 1;
  std::vector<Gate> gates;
  std::vector<int> layer_tags;
  std::optional<std::uint64_t> angle_seed;

  bool is_native() const;  // true iff the circuit contains no RY gate

  bool operator==(const Circuit&) const = default;
};

/// Throws std::invalid_argument if the circuit violates a structural
/// invariant (qubit out of range, duplicate qubits, non-adjacent CX).
void validate(const Circuit& circuit);

/// Number of rotational layers in a depth-d alternating circuit (layers
/// 0, 2, 4, ... are rotational).
int rotational_layers(int depth);

/// Gate count of efficient_su2(w, d, ...): ceil(d/2)*2w + floor(d/2)*(w-1).
std::size_t efficient_su2_gate_count(int width, int depth);

// Hardware-efficient ansatz: d alternating layers starting with a rotational
// layer. A rotational layer applies Ry(theta) then Rz(theta') on every qubit;
// an entanglement layer applies CX(q, q+1) for q = 0..w-2. Angles are
// consumed layer-major, qubit-major, Ry before Rz, and there must be exactly
// rotational_layers(d)*2*w of them.
Circuit efficient_su2(int width, int depth, std::span<const double> angles);

/// `count` efficient_su2 circuits with angles i.i.d. uniform on [0, 2*pi).
/// Circuit i draws from derive_seed(seed, i), recorded in angle_seed, so a
/// batch is a pure function of (width, depth, count, seed).
std::vector<Circuit> random_circuit_batch(int width, int depth, int count,
                                          std::uint64_t seed);

// Unitary of a single gate (2x2, or 4x4 for CX with the control on the more
// significant bit). Rotation convention: R_a(theta) = exp(-i*theta/2 * a).
Eigen::MatrixXcd gate_matrix(const Gate& gate);

/// Stable 64-bit hash of (width, gates); used as the circuit id in counts
/// records. Layer tags and angle_seed do not participate.
std::uint64_t circuit_hash(const Circuit& circuit);
std::string circuit_hex_id(const Circuit& circuit);

// JSON schema:
//   {"width": int,
//    "gates": [{"kind": "x"|"sx"|"rz"|"ry"|"cx", "qubits": [int,...],
//               "theta": float?}, ...],
//    "angle_seed": int?}
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace noisebench::circuits

#endif  // NOISEBENCH_CIRCUITS_HPP_
