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

#ifndef NOISEBENCH_CHANNELS_HPP_
#define NOISEBENCH_CHANNELS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "noisebench/densmat.hpp"

namespace noisebench::channels {

// Per-qubit classical measurement confusion. p01[q] is the probability a
// true '0' on qubit q is read as '1'; p10[q] the reverse.
struct ReadoutConfusion {
  std::vector<double> p01;
  std::vector<double> p10;

  int width() const { return static_cast<int>(p01.size()); }
};

/// Validates lengths match and all probabilities lie in [0, 1].
void validate(const ReadoutConfusion& confusion);

/// Bit-flip channel applied right after state initialization:
/// {sqrt(1-p_sp) I, sqrt(p_sp) X}.
std::vector<Eigen::MatrixXcd> state_prep_channel(double p_sp);

/// Uniform depolarizing channel on num_qubits in {1, 2}: the state is
/// replaced by I/2^n with probability lambda. Kraus weights are
/// {1 - (D^2-1)/D^2 * lambda; lambda/D^2 for each non-identity Pauli string}.
std::vector<Eigen::MatrixXcd> depolarizing_channel(double lambda,
                                                   int num_qubits);

/// Thermal relaxation and dephasing over a gate of duration t_gate:
/// {sqrt(p_I) I, sqrt(p_Z) Z, sqrt(p_reset)|0><0|, sqrt(p_reset)|0><1|} with
/// p_reset = 1 - exp(-t/T1) and
/// p_Z = (1 - p_reset)(1 - exp(-t/T2 + t/T1))/2.
/// Durations must share one unit and satisfy 0 < T2 <= T1, t_gate >= 0.
std::vector<Eigen::MatrixXcd> thermal_channel(double t1, double t2,
                                              double t_gate);

/// X rotation exp(-i phi/2 X) picked up by linear-layout neighbours of a
/// qubit driven with X or SX.
Eigen::Matrix2cd crosstalk_unitary(double phi);

/// dist' = (tensor_q M_q) dist with M_q = [[1-p01, p10], [p01, 1-p10]],
/// computed as `width` in-place rank-1 sweeps; the 2^w x 2^w confusion
/// matrix is never materialized.
densmat::OutcomeDistribution apply_readout(
    const densmat::OutcomeDistribution& dist,
    const ReadoutConfusion& confusion);

}  // namespace noisebench::channels

#endif  // NOISEBENCH_CHANNELS_HPP_
