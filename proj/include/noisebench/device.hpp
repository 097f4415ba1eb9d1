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

#ifndef NOISEBENCH_DEVICE_HPP_
#define NOISEBENCH_DEVICE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisebench/circuits.hpp"
#include "noisebench/densmat.hpp"
#include "noisebench/noisemodel.hpp"

namespace noisebench::device {

enum class CountsSource { synthetic, imported };

// Measured bitstring counts for one compiled circuit. Bitstrings follow the
// engine convention: the leftmost character is qubit 0.
struct CountsRecord {
  std::string circuit_id;  // circuits::circuit_hex_id of the compiled circuit
  int width = 1;
  std::uint64_t shots = 8192;
  std::map<std::string, std::uint64_t> counts;
  CountsSource source = CountsSource::synthetic;
  std::optional<std::uint64_t> seed;  // synthetic only
  std::string timestamp;              // RFC 3339, UTC
};

/// Checks bitstring lengths and that counts sum to shots.
void validate(const CountsRecord& record);

// One (w, d) cell worth of compiled circuits and their counts, plus an
// optional snapshot of the generating model's parameters.
struct ExperimentBatch {
  int w = 1;
  int d = 1;
  std::uint64_t shots = 8192;
  std::vector<circuits::Circuit> circuits;
  std::vector<CountsRecord> records;  // aligned with circuits by index
  std::optional<noisemodel::NoiseParams> params_snapshot;
};

void validate(const ExperimentBatch& batch);

/// Multinomial draw of `shots` outcomes from dist by inverse CDF with a
/// deterministic seeded generator. circuit_id is left empty.
CountsRecord sample_counts(const densmat::OutcomeDistribution& dist,
                           std::uint64_t shots, std::uint64_t seed);

/// Runs every circuit through the hidden-parameter model and samples counts;
/// circuit i uses derive_seed(seed, i), so batches are reproducible and
/// order-independent. The hidden parameters are stored as params_snapshot.
ExperimentBatch run_synthetic(std::vector<circuits::Circuit> circuits,
                              const noisemodel::NoiseParams& hidden,
                              const noisemodel::GateTimes& times,
                              std::uint64_t shots, std::uint64_t seed,
                              int depth);

/// Relative frequencies of a counts record.
densmat::OutcomeDistribution counts_to_distribution(const CountsRecord& record);

/// expval_zz of the relative frequencies.
double counts_expval(const CountsRecord& record);

// Batch file schema:
//   {"w": int, "d": int, "shots": int, "circuits": [circuit...],
//    "records": [{"circuit_id": hex, "counts": {bitstring: int},
//                 "seed": int?, "source": "synthetic"|"imported",
//                 "timestamp": str}],
//    "params_snapshot": params?}
nlohmann::json batch_to_json(const ExperimentBatch& batch);
ExperimentBatch batch_from_json(const nlohmann::json& j);

/// Lossless round-trip persistence. Schema violations raise
/// std::invalid_argument naming the offending field/record.
ExperimentBatch import_batch(const std::string& path);
void export_batch(const ExperimentBatch& batch, const std::string& path);

// The documented "plausible device" preset used as the synthetic hidden
// truth: invented defaults, not calibration data. p_sp = 0.005,
// lambda_1q = 0.0005, lambda_cx = 0.01, phi = 0.02 rad, T1 = 120 us,
// T2 = 90 us, p01 = 0.02, p10 = 0.025 on every qubit.
noisemodel::NoiseParams plausible_device_params(int n);

/// Current UTC time formatted as RFC 3339 (seconds resolution).
std::string rfc3339_now();

}  // namespace noisebench::device

#endif  // NOISEBENCH_DEVICE_HPP_
