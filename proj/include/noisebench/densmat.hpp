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

#ifndef NOISEBENCH_DENSMAT_HPP_
#define NOISEBENCH_DENSMAT_HPP_

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace noisebench::densmat {

// Dense exact state engine. Basis index convention everywhere: qubit 0 is
// the MOST significant bit of the index, so bitstring "q0 q1 ... q_{w-1}"
// read left to right is the binary expansion of the index.

inline constexpr int kMaxWidth = 12;  // 32 MB complex-double at w = 12

struct DensityMatrix {
  int width = 1;
  Eigen::MatrixXcd data;  // 2^width x 2^width, Hermitian, trace 1
};

struct OutcomeDistribution {
  int width = 1;
  std::vector<double> probs;  // length 2^width, nonnegative, sums to 1
};

/// |0...0><0...0| on `width` qubits. Width is capped at kMaxWidth.
DensityMatrix init_state(int width);

/// rho <- U~ rho U~^dagger with U embedded on the target qubits (targets[0]
/// is the most significant gate-local bit). U must be unitary to 1e-8.
void apply_unitary(DensityMatrix& rho, const Eigen::MatrixXcd& u,
                   std::span<const int> targets);

/// rho <- sum_i K~_i rho K~_i^dagger. The Kraus set must be trace preserving:
/// sum_i K_i^dagger K_i = I to 1e-8 on the target subspace.
void apply_kraus(DensityMatrix& rho, std::span<const Eigen::MatrixXcd> kraus,
                 std::span<const int> targets);

/// Computational-basis outcome probabilities: the clamped, renormalized
/// diagonal of rho. Throws if the diagonal sum strays from 1 by more than
/// 1e-8 (internal consistency failure).
OutcomeDistribution distribution(const DensityMatrix& rho);

/// <Z^{(x)w}> = sum_b (-1)^popcount(b) probs[b].
double expval_zz(const OutcomeDistribution& dist);

namespace detail {
// Low-level embedded products on a 2^width square matrix:
//   m <- Op~ * m      (left)
//   m <- m * Op~^dagger   (right_dagger)
// Shared by the state engine and by the transpiler's unitary builder.
void apply_matrix_left(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& op,
                       std::span<const int> targets, int width);
void apply_matrix_right_dagger(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& op,
                               std::span<const int> targets, int width);
}  // namespace detail

}  // namespace noisebench::densmat

#endif  // NOISEBENCH_DENSMAT_HPP_
