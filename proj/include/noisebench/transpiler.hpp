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

#ifndef NOISEBENCH_TRANSPILER_HPP_
#define NOISEBENCH_TRANSPILER_HPP_

#include <Eigen/Dense>

#include "noisebench/circuits.hpp"

namespace noisebench::transpiler {

enum class OptimizeLevel { none, peephole };

struct TranspileOptions {
  OptimizeLevel optimize = OptimizeLevel::peephole;
  double angle_epsilon = 1e-12;  // rotations at or below this are dropped
};

// Compiles to the native set {X, SX, RZ, CX}. Ry(theta) rewrites to the
// fixed pattern Rz(pi) * SX * Rz(theta + pi) * SX (matrix order), i.e. in
// circuit order [SX, Rz(theta + pi), SX, Rz(pi)]; a reversed CX is
// conjugated into control-on-lower-index form. Peephole merges adjacent Rz
// mod 2*pi, drops eps-rotations and cancels adjacent identical CX pairs.
// The result equals the input up to global phase within 1e-9.
circuits::Circuit transpile(const circuits::Circuit& circuit,
                            const TranspileOptions& options = {});

struct EquivalenceResult {
  bool equivalent = false;
  double max_deviation = 0.0;
};

/// Dense verification oracle (test scale, width <= 6): true iff the two
/// circuit unitaries agree up to a global phase within 1e-9 max-norm.
EquivalenceResult equivalent_up_to_phase(const circuits::Circuit& a,
                                         const circuits::Circuit& b);

/// Full 2^w x 2^w unitary of a circuit by dense multiplication; width <= 6.
Eigen::MatrixXcd circuit_unitary(const circuits::Circuit& circuit);

}  // namespace noisebench::transpiler

#endif  // NOISEBENCH_TRANSPILER_HPP_
