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

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisebench/benchmark.hpp"
#include "noisebench/circuits.hpp"
#include "noisebench/device.hpp"
#include "noisebench/noisemodel.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/trainer.hpp"
#include "noisebench/transpiler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes, also documented in --help.
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;
constexpr int kExitSchema = 4;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void print_error(int code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitFile, "cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return std::string(buf);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitFile, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CliError(kExitSchema, path + ": invalid JSON: " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw CliError(kExitFile, "cannot write " + path);
  out << content;
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// Per-command provenance sidecar: inputs/outputs with content hashes, the
// resolved seed, and the tool version. Re-running the recorded command with
// the recorded seed reproduces every output byte-for-byte (timestamps
// excluded).
class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed)
      : command_(std::move(command)), seed_(seed) {}

  void add_input(const std::string& path) {
    inputs_.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a_file(path))}});
  }
  void add_output(const std::string& path) {
    outputs_.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a_file(path))}});
  }

  void write(const std::string& path) const {
    json j;
    j["command"] = command_;
    j["version"] = kVersion;
    j["seed"] = seed_;
    j["timestamp"] = noisebench::device::rfc3339_now();
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    write_json_file(path, j);
  }

 private:
  std::string command_;
  std::uint64_t seed_;
  json inputs_ = json::array();
  json outputs_ = json::array();
};

void print_seed(std::uint64_t seed) { std::cout << "seed: " << seed << "\n"; }

// ---------------------------------------------------------------------------
// Circuit batch files: {"w": int, "d": int, "seed": int?, "circuits": [...]}
// ---------------------------------------------------------------------------

struct CircuitsFile {
  int w = 1;
  int d = 1;
  std::optional<std::uint64_t> seed;
  std::vector<noisebench::circuits::Circuit> circuits;
};

CircuitsFile read_circuits_file(const std::string& path) {
  const json j = read_json_file(path);
  CircuitsFile file;
  try {
    file.w = j.at("w").get<int>();
    file.d = j.at("d").get<int>();
    if (j.contains("seed")) file.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jc : j.at("circuits")) {
      file.circuits.push_back(noisebench::circuits::circuit_from_json(jc));
    }
  } catch (const json::exception& e) {
    throw CliError(kExitSchema, path + ": schema violation: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitSchema, path + ": " + std::string(e.what()));
  }
  return file;
}

void write_circuits_file(const std::string& path, const CircuitsFile& file) {
  json j;
  j["w"] = file.w;
  j["d"] = file.d;
  if (file.seed) j["seed"] = *file.seed;
  json arr = json::array();
  for (const auto& c : file.circuits) {
    arr.push_back(noisebench::circuits::circuit_to_json(c));
  }
  j["circuits"] = std::move(arr);
  write_json_file(path, j);
}

noisebench::noisemodel::NoiseParams read_params_file(const std::string& path) {
  try {
    return noisebench::noisemodel::params_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw CliError(kExitSchema, path + ": schema violation: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitSchema, path + ": " + std::string(e.what()));
  }
}

// Gate times ride along in params files under "gate_times_ns".
noisebench::noisemodel::GateTimes read_gate_times(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("gate_times_ns")) return {};
  try {
    return noisebench::noisemodel::gate_times_from_json(j.at("gate_times_ns"));
  } catch (const json::exception& e) {
    throw CliError(kExitSchema, path + ": gate_times_ns: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  noisebench::benchmark::GridSpec grid;
  noisebench::noisemodel::GateTimes times;
  std::optional<std::string> model_initial;
  std::optional<std::string> model_trained;
  std::optional<std::string> device_synthetic;  // hidden-params path
  std::optional<std::string> device_import;     // batch directory
  noisebench::trainer::SpsaConfig spsa;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
};

RunConfig read_config(const std::string& path) {
  const json j = read_json_file(path);
  RunConfig cfg;
  try {
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("widths")) {
        cfg.grid.widths = g.at("widths").get<std::vector<int>>();
      }
      if (g.contains("depths")) {
        cfg.grid.depths = g.at("depths").get<std::vector<int>>();
      }
      cfg.grid.circuits_per_cell =
          g.value("circuits_per_cell", cfg.grid.circuits_per_cell);
      cfg.grid.shots = g.value("shots", cfg.grid.shots);
      cfg.grid.seed = g.value("seed", cfg.seed);
    } else {
      cfg.grid.seed = cfg.seed;
    }
    if (j.contains("gate_times_ns")) {
      cfg.times =
          noisebench::noisemodel::gate_times_from_json(j.at("gate_times_ns"));
    }
    if (j.contains("model")) {
      const auto& m = j.at("model");
      if (m.contains("initial")) {
        cfg.model_initial = m.at("initial").get<std::string>();
      }
      if (m.contains("trained")) {
        cfg.model_trained = m.at("trained").get<std::string>();
      }
    }
    if (j.contains("device")) {
      const auto& d = j.at("device");
      if (d.contains("synthetic")) {
        cfg.device_synthetic = d.at("synthetic").get<std::string>();
      }
      if (d.contains("import")) {
        cfg.device_import = d.at("import").get<std::string>();
      }
    }
    if (j.contains("trainer")) {
      const auto& t = j.at("trainer");
      cfg.spsa.epochs = t.value("epochs", cfg.spsa.epochs);
      cfg.spsa.a = t.value("a", cfg.spsa.a);
      cfg.spsa.c = t.value("c", cfg.spsa.c);
      cfg.spsa.alpha = t.value("alpha", cfg.spsa.alpha);
      cfg.spsa.gamma = t.value("gamma", cfg.spsa.gamma);
      cfg.spsa.stability_offset =
          t.value("stability_offset", cfg.spsa.stability_offset);
      cfg.spsa.seed = t.value("seed", cfg.seed);
    } else {
      cfg.spsa.seed = cfg.seed;
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw CliError(kExitSchema, path + ": schema violation: " + e.what());
  }
  if (cfg.device_synthetic && cfg.device_import) {
    throw CliError(kExitSchema, path +
                                    ": device must name exactly one source "
                                    "(synthetic or import)");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Shared pipeline pieces
// ---------------------------------------------------------------------------

std::vector<noisebench::circuits::Circuit> transpile_all(
    const std::vector<noisebench::circuits::Circuit>& circuits) {
  std::vector<noisebench::circuits::Circuit> native(circuits.size());
  noisebench::parallel_for(circuits.size(), [&](std::size_t i) {
    native[i] = noisebench::transpiler::transpile(circuits[i]);
  });
  return native;
}

// Synthetic device side of one grid cell: seeded circuit generation,
// compilation, hidden-model sampling.
noisebench::device::ExperimentBatch make_synthetic_cell(
    int w, int d, int n_circuits, std::uint64_t shots, std::uint64_t grid_seed,
    const noisebench::noisemodel::NoiseParams& hidden,
    const noisebench::noisemodel::GateTimes& times) {
  const std::uint64_t gen_seed = noisebench::derive_seed(
      noisebench::derive_seed(noisebench::derive_seed(grid_seed, 101),
                              static_cast<std::uint64_t>(w)),
      static_cast<std::uint64_t>(d));
  auto raw =
      noisebench::circuits::random_circuit_batch(w, d, n_circuits, gen_seed);
  return noisebench::device::run_synthetic(
      transpile_all(raw), hidden, times, shots,
      noisebench::derive_seed(gen_seed, 1), d);
}

std::string cell_batch_filename(int w, int d) {
  return "batch_w" + std::to_string(w) + "_d" + std::to_string(d) + ".json";
}

void run_bench(const RunConfig& cfg, const std::string& model_path,
               const std::string& out_dir, double palette_max_flag,
               Manifest& manifest, const std::string& batch_dir_override = "") {
  const auto model = read_params_file(model_path);
  manifest.add_input(model_path);
  const std::string model_id = fs::path(model_path).stem().string();

  std::optional<noisebench::noisemodel::NoiseParams> hidden;
  if (cfg.device_synthetic) {
    hidden = read_params_file(*cfg.device_synthetic);
    manifest.add_input(*cfg.device_synthetic);
  } else if (!cfg.device_import) {
    throw CliError(kExitSchema, "config names no device source");
  }

  const std::string batch_dir = !batch_dir_override.empty()
                                    ? batch_dir_override
                                    : cfg.device_import.value_or("");

  noisebench::benchmark::BatchProvider provider =
      [&](int w, int d) -> std::optional<noisebench::device::ExperimentBatch> {
    if (hidden) {
      auto batch = make_synthetic_cell(w, d, cfg.grid.circuits_per_cell,
                                       cfg.grid.shots, cfg.grid.seed, *hidden,
                                       cfg.times);
      if (!batch_dir.empty()) {
        noisebench::device::export_batch(
            batch, (fs::path(batch_dir) / cell_batch_filename(w, d)).string());
      }
      return batch;
    }
    const auto path = fs::path(batch_dir) / cell_batch_filename(w, d);
    if (!fs::exists(path)) return std::nullopt;
    try {
      return noisebench::device::import_batch(path.string());
    } catch (const std::invalid_argument& e) {
      throw CliError(kExitSchema, e.what());
    }
  };

  auto grid = noisebench::benchmark::run_grid(cfg.grid, model, cfg.times,
                                              provider, model_id);
  const double palette_max =
      palette_max_flag > 0.0
          ? palette_max_flag
          : std::max(noisebench::benchmark::max_deviation(grid), 1e-6);

  fs::create_directories(out_dir);
  const std::string stem = (fs::path(out_dir) / "results").string();
  noisebench::benchmark::render_report(grid, palette_max, stem);
  manifest.add_output(stem + ".json");
  manifest.add_output(stem + ".csv");
  manifest.add_output(stem + ".svg");

  if (!grid.missing.empty()) {
    std::string cells;
    for (const auto& [w, d] : grid.missing) {
      if (!cells.empty()) cells += ", ";
      cells += "(" + std::to_string(w) + "," + std::to_string(d) + ")";
    }
    throw CliError(kExitFile, "missing device batches for cells " + cells +
                                  "; completed cells were written to " + stem +
                                  ".json");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "noisebench: train and volumetrically benchmark parameterized "
      "quantum-noise models"};
  app.set_version_flag("--version", kVersion);
  app.footer(
      "Exit codes: 0 success, 1 internal error, 2 usage error, 3 missing or\n"
      "unreadable file, 4 schema/validation error.\n"
      "Threads default to all cores; override with --threads or "
      "NOISEBENCH_THREADS.");
  app.require_subcommand(1);

  int threads = 0;
  if (const char* env = std::getenv("NOISEBENCH_THREADS")) {
    threads = std::atoi(env);
  }
  app.add_option("--threads", threads,
                 "Worker thread budget (0 = hardware concurrency)");

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a batch of circuits");
  int gen_w = 2, gen_d = 2, gen_n = 100;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--w", gen_w, "Circuit width (qubits)")->required();
  gen->add_option("--d", gen_d, "Layer count")->required();
  gen->add_option("--n", gen_n, "Number of circuits");
  gen->add_option("--seed", gen_seed, "Batch seed");
  gen->add_option("--out", gen_out, "Output circuits file")->required();

  // --- transpile ---------------------------------------------------------
  auto* tp =
      app.add_subcommand("transpile", "Compile circuits to the native gate set");
  std::string tp_in, tp_out, tp_opt = "peephole";
  double tp_eps = 1e-12;
  tp->add_option("--in", tp_in, "Input circuits file")->required();
  tp->add_option("--out", tp_out, "Output circuits file")->required();
  tp->add_option("--optimize", tp_opt, "none | peephole")
      ->check(CLI::IsMember({"none", "peephole"}));
  tp->add_option("--epsilon", tp_eps, "Rotation drop threshold (radians)");

  // --- predict -----------------------------------------------------------
  auto* pred = app.add_subcommand(
      "predict", "Exact model expectations/distributions for a batch");
  std::string pred_circuits, pred_params, pred_out;
  bool pred_dists = false;
  pred->add_option("--circuits", pred_circuits, "Native circuits file")
      ->required();
  pred->add_option("--params", pred_params, "Model parameters file")
      ->required();
  pred->add_option("--out", pred_out, "Output predictions file")->required();
  pred->add_flag("--distributions", pred_dists,
                 "Include full outcome distributions");

  // --- sample --------------------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample", "Run the synthetic device over a circuits file");
  std::string sample_circuits, sample_params, sample_out;
  std::uint64_t sample_shots = 8192, sample_seed = 0;
  sample->add_option("--circuits", sample_circuits, "Native circuits file")
      ->required();
  sample->add_option("--params", sample_params, "Hidden device parameters")
      ->required();
  sample->add_option("--shots", sample_shots, "Shots per circuit");
  sample->add_option("--seed", sample_seed, "Sampling seed");
  sample->add_option("--out", sample_out, "Output batch file")->required();

  // --- import --------------------------------------------------------------
  auto* imp = app.add_subcommand(
      "import", "Validate an externally recorded counts batch");
  std::string imp_in;
  imp->add_option("--in", imp_in, "Batch file to validate")->required();

  // --- train ---------------------------------------------------------------
  auto* train =
      app.add_subcommand("train", "Fit noise parameters to a batch with SPSA");
  std::string train_batch, train_theta0, train_out = "out", train_config;
  std::string train_metric = "hellinger";
  int train_epochs = -1, train_n = 0;
  double train_a = -1.0, train_c = -1.0;
  std::int64_t train_seed = -1;
  train->add_option("--batch", train_batch, "Training batch file")->required();
  train->add_option("--config", train_config, "Run config (trainer section)");
  train->add_option("--theta0", train_theta0,
                    "Start parameters (default: half the plausible preset)");
  train->add_option("--n", train_n, "Model qubit count (default: batch w)");
  train->add_option("--metric", train_metric, "hellinger | kl")
      ->check(CLI::IsMember({"hellinger", "kl"}));
  train->add_option("--epochs", train_epochs, "SPSA epochs (flag wins)");
  train->add_option("--a", train_a, "SPSA step scale (flag wins)");
  train->add_option("--c", train_c, "SPSA perturbation scale (flag wins)");
  train->add_option("--seed", train_seed, "SPSA seed (flag wins)");
  train->add_option("--out", train_out, "Output directory");

  // --- bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench", "Run the volumetric benchmark grid for one model");
  std::string bench_config, bench_model, bench_out;
  double bench_palette = 0.0;
  bench->add_option("--config", bench_config, "Run config file")->required();
  bench->add_option("--model", bench_model,
                    "Model parameters file (default: config trained, then "
                    "initial)");
  bench->add_option("--out", bench_out, "Output directory (flag wins)");
  bench->add_option("--palette-max", bench_palette,
                    "Shared color-scale maximum (default: grid max)");

  // --- report ----------------------------------------------------------------
  auto* report =
      app.add_subcommand("report", "Re-render CSV/SVG from a results JSON file");
  std::string report_grid, report_out = "report";
  double report_palette = 0.0;
  report->add_option("--grid", report_grid, "Results JSON file")->required();
  report->add_option("--out", report_out,
                     "Output stem (writes .json/.csv/.svg)");
  report->add_option("--palette-max", report_palette,
                     "Shared color-scale maximum (default: grid max)");

  // --- demo ------------------------------------------------------------------
  auto* demo = app.add_subcommand(
      "demo",
      "Full reduced-scale pipeline: generate, sample, train, bench, report");
  std::string demo_out = "demo_out";
  std::uint64_t demo_seed = 7;
  demo->add_option("--out", demo_out, "Output directory");
  demo->add_option("--seed", demo_seed, "Pipeline seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    print_error(kExitUsage, e.what());
    return kExitUsage;
  }

  noisebench::set_thread_budget(threads);

  try {
    if (*gen) {
      auto circuits = noisebench::circuits::random_circuit_batch(
          gen_w, gen_d, gen_n, gen_seed);
      write_circuits_file(gen_out,
                          {gen_w, gen_d, gen_seed, std::move(circuits)});
      print_seed(gen_seed);
      Manifest manifest("gen", gen_seed);
      manifest.add_output(gen_out);
      manifest.write(gen_out + ".manifest.json");
    } else if (*tp) {
      auto file = read_circuits_file(tp_in);
      noisebench::transpiler::TranspileOptions options;
      options.optimize = tp_opt == "none"
                             ? noisebench::transpiler::OptimizeLevel::none
                             : noisebench::transpiler::OptimizeLevel::peephole;
      options.angle_epsilon = tp_eps;
      for (auto& c : file.circuits) {
        c = noisebench::transpiler::transpile(c, options);
      }
      write_circuits_file(tp_out, file);
      print_seed(file.seed.value_or(0));
      Manifest manifest("transpile", file.seed.value_or(0));
      manifest.add_input(tp_in);
      manifest.add_output(tp_out);
      manifest.write(tp_out + ".manifest.json");
    } else if (*pred) {
      auto file = read_circuits_file(pred_circuits);
      const auto params = read_params_file(pred_params);
      const auto times = read_gate_times(pred_params);
      std::vector<json> rows(file.circuits.size());
      noisebench::parallel_for(file.circuits.size(), [&](std::size_t i) {
        const auto dist = noisebench::noisemodel::predict_distribution(
            file.circuits[i], params, times);
        json row;
        row["circuit_id"] =
            noisebench::circuits::circuit_hex_id(file.circuits[i]);
        row["expval"] = noisebench::densmat::expval_zz(dist);
        if (pred_dists) row["distribution"] = dist.probs;
        rows[i] = std::move(row);
      });
      json results = json::array();
      for (auto& r : rows) results.push_back(std::move(r));
      json out;
      out["params"] = pred_params;
      out["results"] = std::move(results);
      write_json_file(pred_out, out);
      print_seed(0);
      Manifest manifest("predict", 0);
      manifest.add_input(pred_circuits);
      manifest.add_input(pred_params);
      manifest.add_output(pred_out);
      manifest.write(pred_out + ".manifest.json");
    } else if (*sample) {
      auto file = read_circuits_file(sample_circuits);
      for (const auto& c : file.circuits) {
        if (!c.is_native()) {
          throw CliError(kExitSchema,
                         sample_circuits +
                             ": circuits must be native; run transpile first");
        }
      }
      const auto hidden = read_params_file(sample_params);
      const auto times = read_gate_times(sample_params);
      auto batch = noisebench::device::run_synthetic(
          file.circuits, hidden, times, sample_shots, sample_seed, file.d);
      noisebench::device::export_batch(batch, sample_out);
      print_seed(sample_seed);
      Manifest manifest("sample", sample_seed);
      manifest.add_input(sample_circuits);
      manifest.add_input(sample_params);
      manifest.add_output(sample_out);
      manifest.write(sample_out + ".manifest.json");
    } else if (*imp) {
      noisebench::device::ExperimentBatch batch;
      try {
        batch = noisebench::device::import_batch(imp_in);
      } catch (const std::invalid_argument& e) {
        throw CliError(kExitSchema, e.what());
      }
      std::cout << "imported " << imp_in << ": w=" << batch.w
                << " d=" << batch.d << " circuits=" << batch.circuits.size()
                << " shots=" << batch.shots << "\n";
      print_seed(0);
      Manifest manifest("import", 0);
      manifest.add_input(imp_in);
      manifest.write(imp_in + ".import.manifest.json");
    } else if (*train) {
      noisebench::trainer::SpsaConfig spsa;
      noisebench::noisemodel::GateTimes times;
      if (!train_config.empty()) {
        const auto cfg = read_config(train_config);
        spsa = cfg.spsa;
        times = cfg.times;
      }
      if (train_epochs > 0) spsa.epochs = train_epochs;
      if (train_a > 0.0) spsa.a = train_a;
      if (train_c > 0.0) spsa.c = train_c;
      if (train_seed >= 0) spsa.seed = static_cast<std::uint64_t>(train_seed);

      noisebench::device::ExperimentBatch batch;
      try {
        batch = noisebench::device::import_batch(train_batch);
      } catch (const std::invalid_argument& e) {
        throw CliError(kExitSchema, e.what());
      }
      const int n = train_n > 0 ? train_n : batch.w;
      noisebench::noisemodel::NoiseParams theta0 =
          train_theta0.empty() ? noisebench::trainer::default_initial_params(n)
                               : read_params_file(train_theta0);
      if (!train_theta0.empty()) times = read_gate_times(train_theta0);
      const auto metric = train_metric == "kl"
                              ? noisebench::trainer::LossMetric::kl
                              : noisebench::trainer::LossMetric::hellinger;

      const auto report_data =
          noisebench::trainer::train(batch, theta0, times, spsa, metric);
      fs::create_directories(train_out);
      const std::string report_path =
          (fs::path(train_out) / "train_report.json").string();
      const std::string params_path =
          (fs::path(train_out) / "trained_params.json").string();
      write_json_file(report_path,
                      noisebench::trainer::report_to_json(report_data, n));
      auto trained =
          noisebench::noisemodel::unpack(report_data.final_theta, n);
      auto trained_json = noisebench::noisemodel::params_to_json(trained);
      trained_json["gate_times_ns"] =
          noisebench::noisemodel::gate_times_to_json(times);
      write_json_file(params_path, trained_json);

      print_seed(spsa.seed);
      std::cout << "initial loss: " << report_data.loss_history.front()
                << "\nfinal loss (mean of last perturbed pair): "
                << report_data.loss_history.back() << "\n";
      Manifest manifest("train", spsa.seed);
      manifest.add_input(train_batch);
      if (!train_theta0.empty()) manifest.add_input(train_theta0);
      if (!train_config.empty()) manifest.add_input(train_config);
      manifest.add_output(report_path);
      manifest.add_output(params_path);
      manifest.write((fs::path(train_out) / "train.manifest.json").string());
    } else if (*bench) {
      const auto cfg = read_config(bench_config);
      std::string model_path = bench_model;
      if (model_path.empty()) {
        model_path =
            cfg.model_trained.value_or(cfg.model_initial.value_or(""));
      }
      if (model_path.empty()) {
        throw CliError(kExitSchema,
                       "no model: pass --model or set model.trained/"
                       "model.initial in the config");
      }
      const std::string out_dir = bench_out.empty() ? cfg.output_dir : bench_out;
      Manifest manifest("bench", cfg.grid.seed);
      manifest.add_input(bench_config);
      run_bench(cfg, model_path, out_dir, bench_palette, manifest);
      print_seed(cfg.grid.seed);
      manifest.write((fs::path(out_dir) / "bench.manifest.json").string());
    } else if (*report) {
      noisebench::benchmark::GridResult grid;
      try {
        grid =
            noisebench::benchmark::grid_from_json(read_json_file(report_grid));
      } catch (const json::exception& e) {
        throw CliError(kExitSchema,
                       report_grid + ": schema violation: " + e.what());
      }
      const double palette =
          report_palette > 0.0
              ? report_palette
              : std::max(noisebench::benchmark::max_deviation(grid), 1e-6);
      noisebench::benchmark::render_report(grid, palette, report_out);
      print_seed(grid.spec.seed);
      Manifest manifest("report", grid.spec.seed);
      manifest.add_input(report_grid);
      manifest.add_output(report_out + ".json");
      manifest.add_output(report_out + ".csv");
      manifest.add_output(report_out + ".svg");
      manifest.write(report_out + ".manifest.json");
    } else if (*demo) {
      // Reduced-scale end-to-end pipeline; every artifact lands in demo_out.
      print_seed(demo_seed);
      fs::create_directories(demo_out);
      Manifest manifest("demo", demo_seed);
      const auto out = [&](const std::string& name) {
        return (fs::path(demo_out) / name).string();
      };

      // 1. Hidden synthetic device.
      const int device_qubits = 5;
      auto hidden = noisebench::device::plausible_device_params(device_qubits);
      noisebench::noisemodel::GateTimes times;
      auto hidden_json = noisebench::noisemodel::params_to_json(hidden);
      hidden_json["gate_times_ns"] =
          noisebench::noisemodel::gate_times_to_json(times);
      write_json_file(out("hidden_params.json"), hidden_json);
      std::cout << "[demo] hidden device written\n";

      // 2. Training circuits -> compile -> sample on the hidden device.
      const int train_w = 5, train_d = 2, train_count = 25;
      const std::uint64_t circuits_seed = noisebench::derive_seed(demo_seed, 1);
      auto raw = noisebench::circuits::random_circuit_batch(
          train_w, train_d, train_count, circuits_seed);
      CircuitsFile file{train_w, train_d, circuits_seed, std::move(raw)};
      write_circuits_file(out("train_circuits.json"), file);
      file.circuits = transpile_all(file.circuits);
      write_circuits_file(out("train_circuits_native.json"), file);
      auto batch = noisebench::device::run_synthetic(
          file.circuits, hidden, times, 2048,
          noisebench::derive_seed(demo_seed, 2), train_d);
      noisebench::device::export_batch(batch, out("train_batch.json"));
      std::cout << "[demo] training batch sampled (" << train_count
                << " circuits, w=" << train_w << ", d=" << train_d << ")\n";

      // 3. Train for a reduced number of epochs.
      noisebench::trainer::SpsaConfig spsa;
      spsa.epochs = 150;
      spsa.a = 0.05;
      spsa.seed = noisebench::derive_seed(demo_seed, 3);
      const auto theta0 =
          noisebench::trainer::default_initial_params(device_qubits);
      const auto train_report =
          noisebench::trainer::train(batch, theta0, times, spsa);
      write_json_file(
          out("train_report.json"),
          noisebench::trainer::report_to_json(train_report, device_qubits));
      auto trained = noisebench::noisemodel::unpack(train_report.final_theta,
                                                    device_qubits);
      auto trained_json = noisebench::noisemodel::params_to_json(trained);
      trained_json["gate_times_ns"] =
          noisebench::noisemodel::gate_times_to_json(times);
      write_json_file(out("trained_params.json"), trained_json);
      std::cout << "[demo] trained " << spsa.epochs << " epochs, loss "
                << train_report.loss_history.front() << " -> "
                << train_report.loss_history.back() << "\n";

      // 4.+5. Volumetric benchmark of the trained model on a fresh 5x5 grid.
      RunConfig cfg;
      cfg.grid.widths = {1, 2, 3, 4, 5};
      cfg.grid.depths = {1, 2, 3, 4, 5};
      cfg.grid.circuits_per_cell = 40;
      cfg.grid.shots = 2048;
      cfg.grid.seed = noisebench::derive_seed(demo_seed, 4);
      cfg.times = times;
      cfg.device_synthetic = out("hidden_params.json");
      fs::create_directories(out("batches"));
      run_bench(cfg, out("trained_params.json"), demo_out, 0.0, manifest,
                out("batches"));
      std::cout << "[demo] benchmark grid complete\n";

      manifest.add_output(out("hidden_params.json"));
      manifest.add_output(out("train_circuits.json"));
      manifest.add_output(out("train_circuits_native.json"));
      manifest.add_output(out("train_batch.json"));
      manifest.add_output(out("train_report.json"));
      manifest.add_output(out("trained_params.json"));
      manifest.write(out("demo.manifest.json"));
      std::cout << "[demo] outputs in " << demo_out << "\n";
    }
  } catch (const CliError& e) {
    print_error(e.code(), e.what());
    return e.code();
  } catch (const std::invalid_argument& e) {
    print_error(kExitSchema, e.what());
    return kExitSchema;
  } catch (const json::exception& e) {
    print_error(kExitSchema, e.what());
    return kExitSchema;
  } catch (const std::exception& e) {
    print_error(kExitInternal, e.what());
    return kExitInternal;
  }
  return 0;
}
