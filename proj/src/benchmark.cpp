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

#include "noisebench/benchmark.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "noisebench/parallel.hpp"
#include "noisebench/rng.hpp"

namespace noisebench::benchmark {

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return std::string(buf);
}

int bitstring_parity(const std::string& bits) {
  int ones = 0;
  for (char c : bits) ones += (c == '1');
  return ones & 1;
}

// Flattened view of one record for fast resampling: the parity of the
// outcome each of the `shots` inverse-CDF slots maps to, expanded so a draw
// is a single table lookup.
struct RecordView {
  std::vector<signed char> slot_parity;
  std::uint64_t shots = 0;
};

RecordView make_view(const device::CountsRecord& record) {
  RecordView view;
  view.shots = record.shots;
  view.slot_parity.reserve(record.shots);
  for (const auto& [bits, count] : record.counts) {
    const auto parity = static_cast<signed char>(bitstring_parity(bits));
    view.slot_parity.insert(view.slot_parity.end(), count, parity);
  }
  return view;
}

// Resampled Z^w expectation: draws `shots` outcomes with replacement from
// the record's empirical distribution. Only the outcome parity matters for
// Z^w, so each draw reduces to one lookup.
double resample_expval(const RecordView& view, RngEngine& rng) {
  std::int64_t parity_balance = 0;  // (+1 outcomes) - (-1 outcomes)
  for (std::uint64_t s = 0; s < view.shots; ++s) {
    const std::uint64_t v = rng.uniform_int(view.shots);
    parity_balance += view.slot_parity[v] ? -1 : 1;
  }
  return static_cast<double>(parity_balance) / static_cast<double>(view.shots);
}

double percentile(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("empty percentile input");
  if (sorted.size() == 1) return sorted[0];
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

}  // namespace

void validate(const GridSpec& spec) {
  if (spec.widths.empty() || spec.depths.empty()) {
    throw std::invalid_argument("grid widths/depths must be nonempty");
  }
  if (spec.circuits_per_cell < 1) {
    throw std::invalid_argument("circuits_per_cell must be >= 1");
  }
  if (spec.shots < 1) throw std::invalid_argument("shots must be >= 1");
  for (int w : spec.widths) {
    if (w < 1) throw std::invalid_argument("grid width must be >= 1");
  }
  for (int d : spec.depths) {
    if (d < 1) throw std::invalid_argument("grid depth must be >= 1");
  }
}

double circuit_deviation(double model_expval, double hardware_expval) {
  return std::abs(model_expval - hardware_expval);
}

std::pair<double, double> bootstrap_ci(
    std::span<const device::CountsRecord> records,
    std::span<const double> model_expvals, int replicates, double level,
    std::uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("bootstrap_ci: empty cell");
  if (records.size() != model_expvals.size()) {
    throw std::invalid_argument("bootstrap_ci: records/expvals misaligned");
  }
  if (replicates < 100) {
    throw std::invalid_argument("bootstrap_ci: need >= 100 replicates");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("bootstrap_ci: level must be in (0, 1)");
  }

  const std::size_t n = records.size();
  std::vector<RecordView> views;
  views.reserve(n);
  for (const auto& r : records) views.push_back(make_view(r));

  std::vector<double> replicate_means(static_cast<std::size_t>(replicates));
  parallel_for(replicate_means.size(), [&](std::size_t r) {
    RngEngine rng(derive_seed(seed, r));
    double sum = 0.0;
    for (std::size_t pick = 0; pick < n; ++pick) {
      const auto idx = static_cast<std::size_t>(rng.uniform_int(n));
      const double hw = resample_expval(views[idx], rng);
      sum += circuit_deviation(model_expvals[idx], hw);
    }
    replicate_means[r] = sum / static_cast<double>(n);
  });

  std::sort(replicate_means.begin(), replicate_means.end());
  const double tail = (1.0 - level) / 2.0;
  return {percentile(replicate_means, tail),
          percentile(replicate_means, 1.0 - tail)};
}

CellResult run_cell(int w, int d, const noisemodel::NoiseParams& model,
                    const noisemodel::GateTimes& times,
                    const device::ExperimentBatch& batch,
                    std::uint64_t bootstrap_seed, const std::string& model_id) {
  device::validate(batch);
  if (batch.w != w || batch.d != d) {
    throw std::invalid_argument("batch (w, d) does not match the cell");
  }
  if (batch.circuits.empty()) {
    throw std::invalid_argument("cell batch has no circuits");
  }

  const std::size_t n = batch.circuits.size();
  std::vector<double> model_side(n), hardware_side(n);
  parallel_for(n, [&](std::size_t i) {
    model_side[i] = noisemodel::predict_expval(batch.circuits[i], model, times);
    hardware_side[i] = device::counts_expval(batch.records[i]);
  });

  CellResult cell;
  cell.w = w;
  cell.d = d;
  cell.n_circuits = static_cast<int>(n);
  cell.shots = batch.shots;
  cell.model_id = model_id;
  cell.provenance = batch.params_snapshot ? "synthetic" : "imported";
  cell.per_circuit.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cell.per_circuit[i] = circuit_deviation(model_side[i], hardware_side[i]);
    sum += cell.per_circuit[i];
  }
  cell.mean_deviation = sum / static_cast<double>(n);
  std::tie(cell.ci_low, cell.ci_high) =
      bootstrap_ci(batch.records, model_side, 1000, 0.95, bootstrap_seed);
  return cell;
}

GridResult run_grid(const GridSpec& spec, const noisemodel::NoiseParams& model,
                    const noisemodel::GateTimes& times,
                    const BatchProvider& provider,
                    const std::string& model_id) {
  validate(spec);
  GridResult grid;
  grid.spec = spec;
  grid.model_id = model_id;
  for (int w : spec.widths) {
    for (int d : spec.depths) {
      auto batch = provider(w, d);
      if (!batch) {
        grid.missing.emplace_back(w, d);
        continue;
      }
      const std::uint64_t cell_seed =
          derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(w)),
                      static_cast<std::uint64_t>(d));
      grid.cells.push_back(
          run_cell(w, d, model, times, *batch, cell_seed, model_id));
    }
  }
  return grid;
}

nlohmann::json grid_to_json(const GridResult& grid) {
  nlohmann::json j;
  j["spec"] = {{"widths", grid.spec.widths},
               {"depths", grid.spec.depths},
               {"circuits_per_cell", grid.spec.circuits_per_cell},
               {"shots", grid.spec.shots},
               {"seed", grid.spec.seed}};
  j["model_id"] = grid.model_id;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : grid.cells) {
    cells.push_back({{"w", c.w},
                     {"d", c.d},
                     {"L", c.mean_deviation},
                     {"ci_low", c.ci_low},
                     {"ci_high", c.ci_high},
                     {"n_circuits", c.n_circuits},
                     {"shots", c.shots},
                     {"model_id", c.model_id},
                     {"provenance", c.provenance},
                     {"per_circuit", c.per_circuit}});
  }
  j["cells"] = std::move(cells);
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& [w, d] : grid.missing) missing.push_back({w, d});
  j["missing"] = std::move(missing);
  return j;
}

GridResult grid_from_json(const nlohmann::json& j) {
  GridResult grid;
  const auto& spec = j.at("spec");
  grid.spec.widths = spec.at("widths").get<std::vector<int>>();
  grid.spec.depths = spec.at("depths").get<std::vector<int>>();
  grid.spec.circuits_per_cell = spec.at("circuits_per_cell").get<int>();
  grid.spec.shots = spec.at("shots").get<std::uint64_t>();
  grid.spec.seed = spec.at("seed").get<std::uint64_t>();
  grid.model_id = j.at("model_id").get<std::string>();
  for (const auto& jc : j.at("cells")) {
    CellResult c;
    c.w = jc.at("w").get<int>();
    c.d = jc.at("d").get<int>();
    c.mean_deviation = jc.at("L").get<double>();
    c.ci_low = jc.at("ci_low").get<double>();
    c.ci_high = jc.at("ci_high").get<double>();
    c.n_circuits = jc.at("n_circuits").get<int>();
    c.shots = jc.at("shots").get<std::uint64_t>();
    c.model_id = jc.at("model_id").get<std::string>();
    c.provenance = jc.at("provenance").get<std::string>();
    c.per_circuit = jc.at("per_circuit").get<std::vector<double>>();
    grid.cells.push_back(std::move(c));
  }
  for (const auto& jm : j.at("missing")) {
    grid.missing.emplace_back(jm.at(0).get<int>(), jm.at(1).get<int>());
  }
  return grid;
}

std::string grid_to_csv(const GridResult& grid) {
  std::string csv = "w,d,n_circuits,shots,L,ci_low,ci_high\n";
  for (const auto& c : grid.cells) {
    csv += std::to_string(c.w) + "," + std::to_string(c.d) + "," +
           std::to_string(c.n_circuits) + "," + std::to_string(c.shots) + "," +
           format_double("%.12g", c.mean_deviation) + "," +
           format_double("%.12g", c.ci_low) + "," +
           format_double("%.12g", c.ci_high) + "\n";
  }
  return csv;
}

double max_deviation(const GridResult& grid) {
  double m = 0.0;
  for (const auto& c : grid.cells) m = std::max(m, c.mean_deviation);
  return m;
}

std::string render_svg(const GridResult& grid, double palette_max) {
  if (!(palette_max > 0.0)) {
    throw std::invalid_argument("palette_max must be > 0");
  }
  // Sequential white -> dark blue scale, clipped at palette_max.
  auto fill_color = [palette_max](double value) {
    const double t = std::clamp(value / palette_max, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255 + t * (8 - 255)));
    const int g = static_cast<int>(std::lround(255 + t * (48 - 255)));
    const int b = static_cast<int>(std::lround(255 + t * (107 - 255)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  const int cell_px = 56;
  const int left = 70, top = 40, gap = 4;
  const int legend_w = 26, legend_gap = 30;
  const auto& widths = grid.spec.widths;
  const auto& depths = grid.spec.depths;
  const int grid_w = static_cast<int>(depths.size()) * (cell_px + gap);
  const int grid_h = static_cast<int>(widths.size()) * (cell_px + gap);
  const int total_w = left + grid_w + legend_gap + legend_w + 70;
  const int total_h = top + grid_h + 50;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(total_w) + "\" height=\"" + std::to_string(total_h) +
         "\" font-family=\"sans-serif\">\n";
  svg += "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" "
         "y2=\"0\"><stop offset=\"0\" stop-color=\"" + fill_color(0.0) +
         "\"/><stop offset=\"1\" stop-color=\"" + fill_color(palette_max) +
         "\"/></linearGradient></defs>\n";
  svg += "<text x=\"" + std::to_string(left + grid_w / 2) +
         "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">model: " +
         grid.model_id + "</text>\n";

  auto cell_at = [&grid](int w, int d) -> const CellResult* {
    for (const auto& c : grid.cells) {
      if (c.w == w && c.d == d) return &c;
    }
    return nullptr;
  };

  for (std::size_t wi = 0; wi < widths.size(); ++wi) {
    const int y = top + static_cast<int>(wi) * (cell_px + gap);
    svg += "<text x=\"" + std::to_string(left - 10) + "\" y=\"" +
           std::to_string(y + cell_px / 2 + 4) +
           "\" text-anchor=\"end\" font-size=\"12\">w=" +
           std::to_string(widths[wi]) + "</text>\n";
    for (std::size_t di = 0; di < depths.size(); ++di) {
      const int x = left + static_cast<int>(di) * (cell_px + gap);
      const CellResult* cell = cell_at(widths[wi], depths[di]);
      if (cell == nullptr) {
        svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" +
               std::to_string(y) + "\" width=\"" + std::to_string(cell_px) +
               "\" height=\"" + std::to_string(cell_px) +
               "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4\"/>\n";
        continue;
      }
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" width=\"" + std::to_string(cell_px) + "\" height=\"" +
             std::to_string(cell_px) + "\" fill=\"" +
             fill_color(cell->mean_deviation) +
             "\" stroke=\"#555555\"/>\n";
      const bool dark = cell->mean_deviation / palette_max > 0.55;
      svg += "<text x=\"" + std::to_string(x + cell_px / 2) + "\" y=\"" +
             std::to_string(y + cell_px / 2 + 4) +
             "\" text-anchor=\"middle\" font-size=\"11\" fill=\"" +
             (dark ? "#ffffff" : "#000000") + "\">" +
             format_double("%.3f", cell->mean_deviation) + "</text>\n";
    }
  }

  for (std::size_t di = 0; di < depths.size(); ++di) {
    const int x = left + static_cast<int>(di) * (cell_px + gap);
    svg += "<text x=\"" + std::to_string(x + cell_px / 2) + "\" y=\"" +
           std::to_string(top + grid_h + 18) +
           "\" text-anchor=\"middle\" font-size=\"12\">d=" +
           std::to_string(depths[di]) + "</text>\n";
  }

  // Legend.
  const int lx = left + grid_w + legend_gap;
  svg += "<rect x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(top) +
         "\" width=\"" + std::to_string(legend_w) + "\" height=\"" +
         std::to_string(grid_h) +
         "\" fill=\"url(#scale)\" stroke=\"#555555\"/>\n";
  for (int tick = 0; tick <= 2; ++tick) {
    const double value = palette_max * tick / 2.0;
    const int y = top + grid_h - grid_h * tick / 2;
    svg += "<text x=\"" + std::to_string(lx + legend_w + 6) + "\" y=\"" +
           std::to_string(y + 4) + "\" font-size=\"11\">" +
           format_double("%.3f", value) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render_report(const GridResult& grid, double palette_max,
                   const std::string& stem) {
  {
    std::ofstream out(stem + ".json");
    if (!out) throw std::runtime_error("cannot write " + stem + ".json");
    out << grid_to_json(grid).dump(2) << "\n";
  }
  {
    std::ofstream out(stem + ".csv");
    if (!out) throw std::runtime_error("cannot write " + stem + ".csv");
    out << grid_to_csv(grid);
  }
  {
    std::ofstream out(stem + ".svg");
    if (!out) throw std::runtime_error("cannot write " + stem + ".svg");
    out << render_svg(grid, palette_max);
  }
}

}  // namespace noisebench::benchmark
