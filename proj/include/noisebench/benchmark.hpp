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

#ifndef NOISEBENCH_BENCHMARK_HPP_
#define NOISEBENCH_BENCHMARK_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "noisebench/device.hpp"
#include "noisebench/noisemodel.hpp"

namespace noisebench::benchmark {

struct GridSpec {
  std::vector<int> widths = {1, 2, 3, 4, 5};
  std::vector<int> depths = {1, 2, 3, 4, 5};
  int circuits_per_cell = 200;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
};

void validate(const GridSpec& spec);

// One (w, d) cell: mean absolute deviation of the model's Z^w expectation
// from the hardware-side estimate, with a bootstrap confidence interval.
struct CellResult {
  int w = 0;
  int d = 0;
  double mean_deviation = 0.0;  // L
  std::vector<double> per_circuit;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_circuits = 0;
  std::uint64_t shots = 0;
  std::string model_id;
  std::string provenance;
};

struct GridResult {
  GridSpec spec;
  std::string model_id;
  std::vector<CellResult> cells;
  std::vector<std::pair<int, int>> missing;  // cells without a batch
};

/// |model - hardware|.
double circuit_deviation(double model_expval, double hardware_expval);

/// Percentile bootstrap for the cell mean: each replicate resamples circuits
/// with replacement, then resamples each chosen circuit's shots with
/// replacement from its empirical distribution, and recomputes L. Returns
/// the ((1-level)/2, 1-(1-level)/2) percentiles (linear interpolation) of the
/// replicate values. Only the hardware side is resampled; model expectations
/// are exact. Replicate r draws from derive_seed(seed, r).
std::pair<double, double> bootstrap_ci(
    std::span<const device::CountsRecord> records,
    std::span<const double> model_expvals, int replicates = 1000,
    double level = 0.95, std::uint64_t seed = 0);

/// Evaluates one cell: model side by exact prediction on the batch's
/// compiled circuits, hardware side from the recorded counts.
CellResult run_cell(int w, int d, const noisemodel::NoiseParams& model,
                    const noisemodel::GateTimes& times,
                    const device::ExperimentBatch& batch,
                    std::uint64_t bootstrap_seed, const std::string& model_id);

using BatchProvider =
    std::function<std::optional<device::ExperimentBatch>(int w, int d)>;

/// Runs every cell of the grid. Cells without a batch are reported in
/// `missing`; completed cells are preserved. Per-cell bootstrap seeds derive
/// from (spec.seed, w, d), so results do not depend on execution order.
GridResult run_grid(const GridSpec& spec, const noisemodel::NoiseParams& model,
                    const noisemodel::GateTimes& times,
                    const BatchProvider& provider, const std::string& model_id);

nlohmann::json grid_to_json(const GridResult& grid);
GridResult grid_from_json(const nlohmann::json& j);

/// CSV with columns w,d,n_circuits,shots,L,ci_low,ci_high.
std::string grid_to_csv(const GridResult& grid);

/// Heatmap with one square per (w, d), sequential white-to-dark scale
/// clipped at palette_max, and a numeric legend. palette_max must be shared
/// when comparing models.
std::string render_svg(const GridResult& grid, double palette_max);

/// Writes <stem>.json, <stem>.csv and <stem>.svg.
void render_report(const GridResult& grid, double palette_max,
                   const std::string& stem);

/// Largest mean deviation across the grid; the default palette maximum.
double max_deviation(const GridResult& grid);

}  // namespace noisebench::benchmark

#endif  // NOISEBENCH_BENCHMARK_HPP_
