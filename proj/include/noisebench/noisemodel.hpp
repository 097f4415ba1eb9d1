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

#ifndef NOISEBENCH_NOISEMODEL_HPP_
#define NOISEBENCH_NOISEMODEL_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <json.hpp>

#include "noisebench/channels.hpp"
#include "noisebench/circuits.hpp"
#include "noisebench/densmat.hpp"

namespace noisebench::noisemodel {

// Trainable parameters of the device model on an N-qubit linear chain.
// 11N-1 scalars in total: N state-preparation flips, 4N-1 depolarizing
// strengths (x, sx, rz per qubit; cx per ordered pair (q, q+1)), 2N crosstalk
// angles, 2N relaxation times and 2N readout flips.
struct NoiseParams {
  int n = 1;
  std::vector<double> p_sp;                            // N
  std::vector<double> lambda_x, lambda_sx, lambda_rz;  // N each
  std::vector<double> lambda_cx;                       // N-1
  std::vector<double> phi_x, phi_sx;                   // N each
  std::vector<double> t1_us, t2_us;                    // N each, microseconds
  std::vector<double> p01, p10;                        // N each

  // Schedule-level switch used by the readout-only configuration: when
  // false, thermal steps are emitted with zero duration and therefore act as
  // the identity. Not part of the packed vector.
  bool thermal_enabled = true;

  /// The ideal model: all-zero error rates, placeholder relaxation times
  /// (T1 = T2 = 1 us) and thermal_enabled = false.
  static NoiseParams zeros(int n);

  bool scalars_equal(const NoiseParams& other) const;
};

/// Throws std::invalid_argument when field lengths or value ranges are off.
void validate(const NoiseParams& params);

struct GateTimes {
  double t_x_ns = 35.0;
  double t_sx_ns = 35.0;
  double t_rz_ns = 0.0;  // virtual on the target hardware
  double t_cx_ns = 300.0;
};

// One step of a compiled channel program.
struct UnitaryStep {
  Eigen::MatrixXcd matrix;
  std::vector<int> targets;
};
struct KrausStep {
  std::vector<Eigen::MatrixXcd> kraus;
  std::vector<int> targets;
};
struct ReadoutStep {
  channels::ReadoutConfusion confusion;
};
using ProgramStep = std::variant<UnitaryStep, KrausStep, ReadoutStep>;

// Fully resolved execution plan for one circuit under one parameter set:
// state-preparation channels first, exactly one readout step last.
struct ChannelProgram {
  int width = 1;
  std::vector<ProgramStep> steps;
};

/// 11n - 1.
std::size_t param_count(int n);

/// Flattens params into the fixed order: p_sp | lambda_x | lambda_sx |
/// lambda_rz | lambda_cx | phi_x | phi_sx | t1_us | t2_us | p01 | p10,
/// each block qubit-ascending.
std::vector<double> pack(const NoiseParams& params);

/// Inverse of pack. Enforces T2 <= T1 (clamped) so thermal-channel
/// preconditions hold for any optimizer iterate; otherwise exact.
NoiseParams unpack(std::span<const double> vec, int n);

/// Maps a native circuit to its channel program: per-qubit state prep, then
/// per gate the gate unitary followed by crosstalk on existing neighbours
/// (X/SX only), the gate's depolarizing channel, and per-qubit thermal
/// relaxation; readout confusion last. Circuit qubit i is device qubit i.
ChannelProgram schedule(const circuits::Circuit& circuit,
                        const NoiseParams& params, const GateTimes& times);

/// Exact outcome distribution: runs the channel program on |0...0><0...0|
/// with the dense density-matrix engine.
densmat::OutcomeDistribution predict_distribution(
    const circuits::Circuit& circuit, const NoiseParams& params,
    const GateTimes& times);

/// expval_zz of predict_distribution.
double predict_expval(const circuits::Circuit& circuit,
                      const NoiseParams& params, const GateTimes& times);

/// Model containing only measurement error: every other rate is zero and
/// thermal steps are forced to the identity.
NoiseParams readout_only_params(std::span<const double> p01,
                                std::span<const double> p10);

// JSON schemas:
//   params:  {"n": int, "p_sp": [...], "lambda": {"x": [...], "sx": [...],
//             "rz": [...], "cx": [...]}, "phi": {"x": [...], "sx": [...]},
//             "t1_us": [...], "t2_us": [...], "p01": [...], "p10": [...],
//             "thermal_enabled": bool?, "gate_times_ns": gate-times?}
//   gate times: {"x": float, "sx": float, "rz": float, "cx": float}
nlohmann::json params_to_json(const NoiseParams& params);
NoiseParams params_from_json(const nlohmann::json& j);
nlohmann::json gate_times_to_json(const GateTimes& times);
GateTimes gate_times_from_json(const nlohmann::json& j);

}  // namespace noisebench::noisemodel

#endif  // NOISEBENCH_NOISEMODEL_HPP_
