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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "noisebench/benchmark.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/transpiler.hpp"

namespace nb = noisebench::benchmark;
namespace ndev = noisebench::device;
namespace nm = noisebench::noisemodel;
namespace nc = noisebench::circuits;

namespace {

ndev::ExperimentBatch synthetic_batch(int w, int d, int n_circuits,
                                      std::uint64_t shots,
                                      const nm::NoiseParams& hidden,
                                      std::uint64_t seed) {
  auto raw = nc::random_circuit_batch(w, d, n_circuits, seed);
  std::vector<nc::Circuit> native;
  for (const auto& c : raw) {
    native.push_back(noisebench::transpiler::transpile(c));
  }
  return ndev::run_synthetic(native, hidden, nm::GateTimes{}, shots,
                             noisebench::derive_seed(seed, 1), d);
}

// A record whose counts land on a single bitstring: resampling it can never
// vary.
ndev::CountsRecord deterministic_record(const std::string& bits,
                                        std::uint64_t shots) {
  ndev::CountsRecord rec;
  rec.width = static_cast<int>(bits.size());
  rec.shots = shots;
  rec.counts[bits] = shots;
  rec.circuit_id = "fixed";
  return rec;
}

}  // namespace

TEST_SUITE("benchmark") {

TEST_CASE("circuit_deviation is the absolute difference") {
  CHECK(nb::circuit_deviation(0.5, 0.5) == 0.0);
  CHECK(nb::circuit_deviation(1.0, -1.0) == 2.0);
  CHECK(nb::circuit_deviation(0.3, 0.1) == doctest::Approx(0.2));
}

TEST_CASE("cell mean equals the average of per-circuit deviations") {
  // Three deterministic records; a cell whose deviations average 0.043 must
  // report L = 0.043.
  std::vector<ndev::CountsRecord> records = {deterministic_record("0", 100),
                                             deterministic_record("0", 100),
                                             deterministic_record("0", 100)};
  // hardware expval = +1 for each; choose model expvals for deviations
  // 0.03, 0.043, 0.056.
  std::vector<double> model = {0.97, 0.957, 0.944};
  double mean = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    mean += nb::circuit_deviation(model[i], ndev::counts_expval(records[i]));
  }
  mean /= 3.0;
  CHECK(mean == doctest::Approx(0.043).epsilon(1e-12));
}

TEST_CASE("bootstrap of zero-variance inputs has zero width") {
  std::vector<ndev::CountsRecord> records(4, deterministic_record("10", 64));
  std::vector<double> model(4, 0.8);  // every deviation = |0.8 - (-1)| = 1.8
  auto [lo, hi] = nb::bootstrap_ci(records, model, 1000, 0.95, 3);
  CHECK(lo == doctest::Approx(1.8));
  CHECK(hi == doctest::Approx(1.8));
}

TEST_CASE("bootstrap is deterministic under a fixed seed") {
  auto batch = synthetic_batch(2, 2, 12, 512,
                               ndev::plausible_device_params(2), 64);
  std::vector<double> model(12);
  for (std::size_t i = 0; i < model.size(); ++i) {
    model[i] = nm::predict_expval(batch.circuits[i],
                                  *batch.params_snapshot, nm::GateTimes{});
  }
  auto a = nb::bootstrap_ci(batch.records, model, 500, 0.95, 11);
  auto b = nb::bootstrap_ci(batch.records, model, 500, 0.95, 11);
  CHECK(a == b);
  auto c = nb::bootstrap_ci(batch.records, model, 500, 0.95, 12);
  CHECK(a != c);
}

TEST_CASE("point estimate sits inside its own interval") {
  auto batch = synthetic_batch(2, 2, 20, 2048,
                               ndev::plausible_device_params(2), 65);
  auto cell = nb::run_cell(2, 2, *batch.params_snapshot, nm::GateTimes{},
                           batch, 17, "hidden");
  CHECK(cell.ci_low <= cell.mean_deviation);
  CHECK(cell.mean_deviation <= cell.ci_high);
  CHECK(cell.mean_deviation ==
        doctest::Approx([](const std::vector<double>& v) {
          double s = 0.0;
          for (double x : v) s += x;
          return s / static_cast<double>(v.size());
        }(cell.per_circuit)).epsilon(1e-12));
  for (double d : cell.per_circuit) {
    CHECK(d >= 0.0);
    CHECK(d <= 2.0);
  }
}

TEST_CASE("interval width shrinks with more circuits") {
  const auto hidden = ndev::plausible_device_params(2);
  auto small = synthetic_batch(2, 2, 50, 1024, hidden, 66);
  auto large = synthetic_batch(2, 2, 200, 1024, hidden, 66);
  auto cell_small =
      nb::run_cell(2, 2, hidden, nm::GateTimes{}, small, 5, "m");
  auto cell_large =
      nb::run_cell(2, 2, hidden, nm::GateTimes{}, large, 5, "m");
  CHECK(cell_large.ci_high - cell_large.ci_low <
        cell_small.ci_high - cell_small.ci_low);
}

TEST_CASE("self-consistent model beats the ideal model on noisy data") {
  const auto hidden = ndev::plausible_device_params(2);
  auto batch = synthetic_batch(2, 3, 30, 8192, hidden, 67);
  auto self = nb::run_cell(2, 3, hidden, nm::GateTimes{}, batch, 2, "hidden");
  auto ideal = nb::run_cell(2, 3, nm::NoiseParams::zeros(2), nm::GateTimes{},
                            batch, 2, "ideal");
  CHECK(self.mean_deviation <= 0.02);  // shot-noise floor
  CHECK(ideal.mean_deviation > self.mean_deviation);
}

TEST_CASE("run_grid covers cells and reports missing ones") {
  const auto hidden = ndev::plausible_device_params(2);
  nb::GridSpec spec;
  spec.widths = {1, 2};
  spec.depths = {1, 2};
  spec.circuits_per_cell = 6;
  spec.shots = 256;
  spec.seed = 99;
  nb::BatchProvider provider =
      [&](int w, int d) -> std::optional<ndev::ExperimentBatch> {
    if (w == 2 && d == 2) return std::nullopt;  // simulate a missing cell
    return synthetic_batch(w, d, spec.circuits_per_cell, spec.shots, hidden,
                           noisebench::derive_seed(spec.seed, w * 10 + d));
  };
  auto grid = nb::run_grid(spec, hidden, nm::GateTimes{}, provider, "hidden");
  CHECK(grid.cells.size() == 3);
  REQUIRE(grid.missing.size() == 1);
  CHECK(grid.missing[0] == std::pair<int, int>(2, 2));

  // 1x1 grid reduces to run_cell.
  nb::GridSpec tiny;
  tiny.widths = {1};
  tiny.depths = {1};
  tiny.circuits_per_cell = 6;
  tiny.shots = 256;
  tiny.seed = 99;
  auto batch11 = provider(1, 1);
  auto grid11 = nb::run_grid(tiny, hidden, nm::GateTimes{}, provider, "h");
  const std::uint64_t cell_seed = noisebench::derive_seed(
      noisebench::derive_seed(tiny.seed, 1), 1);
  auto direct =
      nb::run_cell(1, 1, hidden, nm::GateTimes{}, *batch11, cell_seed, "h");
  REQUIRE(grid11.cells.size() == 1);
  CHECK(grid11.cells[0].mean_deviation == direct.mean_deviation);
  CHECK(grid11.cells[0].ci_low == direct.ci_low);
  CHECK(grid11.cells[0].ci_high == direct.ci_high);
}

TEST_CASE("grid JSON round-trip and CSV shape") {
  const auto hidden = ndev::plausible_device_params(1);
  nb::GridSpec spec;
  spec.widths = {1};
  spec.depths = {1, 2};
  spec.circuits_per_cell = 5;
  spec.shots = 128;
  spec.seed = 41;
  nb::BatchProvider provider =
      [&](int w, int d) -> std::optional<ndev::ExperimentBatch> {
    return synthetic_batch(w, d, spec.circuits_per_cell, spec.shots, hidden,
                           noisebench::derive_seed(spec.seed, w * 10 + d));
  };
  auto grid = nb::run_grid(spec, hidden, nm::GateTimes{}, provider, "m0");
  auto j = nb::grid_to_json(grid);
  auto back = nb::grid_from_json(j);
  CHECK(nb::grid_to_json(back) == j);

  const auto csv = nb::grid_to_csv(grid);
  CHECK(csv.rfind("w,d,n_circuits,shots,L,ci_low,ci_high\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cells
}

TEST_CASE("svg rendering maps values to the palette") {
  nb::GridResult grid;
  grid.spec.widths = {1};
  grid.spec.depths = {1, 2};
  grid.model_id = "demo";
  nb::CellResult zero;
  zero.w = 1;
  zero.d = 1;
  zero.mean_deviation = 0.0;
  nb::CellResult maxed;
  maxed.w = 1;
  maxed.d = 2;
  maxed.mean_deviation = 0.1;
  grid.cells = {zero, maxed};

  const auto svg = nb::render_svg(grid, 0.1);
  CHECK(svg.find("#ffffff") != std::string::npos);  // L = 0 -> lightest
  CHECK(svg.find("#08306b") != std::string::npos);  // L = max -> darkest
  CHECK(svg.find("</svg>") != std::string::npos);

  // Equal L under a shared palette renders the same fill in both grids.
  nb::GridResult other = grid;
  other.model_id = "other";
  const auto svg2 = nb::render_svg(other, 0.1);
  auto fill_of = [](const std::string& s) {
    const auto pos = s.find("fill=\"#");
    return s.substr(pos, 14);
  };
  CHECK(fill_of(svg) == fill_of(svg2));

  CHECK_THROWS_AS(nb::render_svg(grid, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
