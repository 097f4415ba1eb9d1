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

#include "noisebench/device.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "noisebench/parallel.hpp"
#include "noisebench/rng.hpp"

namespace noisebench::device {

namespace {

std::string index_to_bitstring(std::size_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q) {
    if (index & (std::size_t{1} << (width - 1 - q))) {
      s[static_cast<std::size_t>(q)] = '1';
    }
  }
  return s;
}

std::size_t bitstring_to_index(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring contains non-binary character '" +
                                  std::string(1, c) + "'");
    }
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

const char* source_name(CountsSource source) {
  return source == CountsSource::synthetic ? "synthetic" : "imported";
}

CountsSource source_from_name(const std::string& name) {
  if (name == "synthetic") return CountsSource::synthetic;
  if (name == "imported") return CountsSource::imported;
  throw std::invalid_argument("unknown counts source '" + name + "'");
}

}  // namespace

void validate(const CountsRecord& record) {
  if (record.width < 1) throw std::invalid_argument("record width must be >= 1");
  if (record.shots < 1) throw std::invalid_argument("record shots must be >= 1");
  std::uint64_t total = 0;
  for (const auto& [bits, count] : record.counts) {
    if (static_cast<int>(bits.size()) != record.width) {
      throw std::invalid_argument("record " + record.circuit_id +
                                  ": bitstring '" + bits +
                                  "' does not match circuit width");
    }
    bitstring_to_index(bits);
    total += count;
  }
  if (total != record.shots) {
    throw std::invalid_argument(
        "record " + record.circuit_id + ": counts sum to " +
        std::to_string(total) + " but shots = " + std::to_string(record.shots));
  }
}

void validate(const ExperimentBatch& batch) {
  if (batch.records.size() != batch.circuits.size()) {
    throw std::invalid_argument("batch has " +
                                std::to_string(batch.records.size()) +
                                " records for " +
                                std::to_string(batch.circuits.size()) +
                                " circuits");
  }
  for (const auto& c : batch.circuits) {
    circuits::validate(c);
    if (c.width != batch.w) {
      throw std::invalid_argument("batch circuit width differs from batch w");
    }
  }
  for (const auto& r : batch.records) validate(r);
}

CountsRecord sample_counts(const densmat::OutcomeDistribution& dist,
                           std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (dist.probs.empty()) throw std::invalid_argument("empty distribution");
  double total = 0.0;
  std::vector<double> cdf(dist.probs.size());
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    if (p < -1e-12) throw std::invalid_argument("negative probability");
    total += std::max(p, 0.0);
    cdf[i] = total;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw std::invalid_argument("distribution does not sum to 1");
  }

  RngEngine rng(seed);
  std::vector<std::uint64_t> tallies(dist.probs.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= tallies.size()) idx = tallies.size() - 1;
    ++tallies[idx];
  }

  CountsRecord record;
  record.width = dist.width;
  record.shots = shots;
  record.source = CountsSource::synthetic;
  record.seed = seed;
  record.timestamp = rfc3339_now();
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    if (tallies[i] > 0) {
      record.counts[index_to_bitstring(i, dist.width)] = tallies[i];
    }
  }
  return record;
}

ExperimentBatch run_synthetic(std::vector<circuits::Circuit> circuits_in,
                              const noisemodel::NoiseParams& hidden,
                              const noisemodel::GateTimes& times,
                              std::uint64_t shots, std::uint64_t seed,
                              int depth) {
  if (circuits_in.empty()) {
    throw std::invalid_argument("run_synthetic needs at least one circuit");
  }
  for (const auto& c : circuits_in) {
    if (!c.is_native()) {
      throw std::invalid_argument(
          "run_synthetic requires native (compiled) circuits");
    }
  }
  ExperimentBatch batch;
  batch.w = circuits_in.front().width;
  batch.d = depth;
  batch.shots = shots;
  batch.circuits = std::move(circuits_in);
  batch.records.resize(batch.circuits.size());
  batch.params_snapshot = hidden;

  parallel_for(batch.circuits.size(), [&](std::size_t i) {
    const auto dist =
        noisemodel::predict_distribution(batch.circuits[i], hidden, times);
    auto record = sample_counts(dist, shots, derive_seed(seed, i));
    record.circuit_id = circuits::circuit_hex_id(batch.circuits[i]);
    batch.records[i] = std::move(record);
  });
  validate(batch);
  return batch;
}

densmat::OutcomeDistribution counts_to_distribution(
    const CountsRecord& record) {
  validate(record);
  densmat::OutcomeDistribution dist;
  dist.width = record.width;
  dist.probs.assign(std::size_t{1} << record.width, 0.0);
  const auto shots = static_cast<double>(record.shots);
  for (const auto& [bits, count] : record.counts) {
    dist.probs[bitstring_to_index(bits)] = static_cast<double>(count) / shots;
  }
  return dist;
}

double counts_expval(const CountsRecord& record) {
  return densmat::expval_zz(counts_to_distribution(record));
}

nlohmann::json batch_to_json(const ExperimentBatch& batch) {
  validate(batch);
  nlohmann::json j;
  j["w"] = batch.w;
  j["d"] = batch.d;
  j["shots"] = batch.shots;
  nlohmann::json jcircuits = nlohmann::json::array();
  for (const auto& c : batch.circuits) {
    jcircuits.push_back(circuits::circuit_to_json(c));
  }
  j["circuits"] = std::move(jcircuits);
  nlohmann::json jrecords = nlohmann::json::array();
  for (const auto& r : batch.records) {
    nlohmann::json jr;
    jr["circuit_id"] = r.circuit_id;
    jr["counts"] = r.counts;
    if (r.seed) jr["seed"] = *r.seed;
    jr["source"] = source_name(r.source);
    jr["timestamp"] = r.timestamp;
    jrecords.push_back(std::move(jr));
  }
  j["records"] = std::move(jrecords);
  if (batch.params_snapshot) {
    j["params_snapshot"] = noisemodel::params_to_json(*batch.params_snapshot);
  }
  return j;
}

ExperimentBatch batch_from_json(const nlohmann::json& j) {
  ExperimentBatch batch;
  batch.w = j.at("w").get<int>();
  batch.d = j.at("d").get<int>();
  batch.shots = j.at("shots").get<std::uint64_t>();
  for (const auto& jc : j.at("circuits")) {
    batch.circuits.push_back(circuits::circuit_from_json(jc));
  }
  for (const auto& jr : j.at("records")) {
    CountsRecord r;
    r.circuit_id = jr.at("circuit_id").get<std::string>();
    r.width = batch.w;
    r.counts = jr.at("counts").get<std::map<std::string, std::uint64_t>>();
    std::uint64_t total = 0;
    for (const auto& [bits, count] : r.counts) total += count;
    r.shots = batch.shots;
    if (total != batch.shots) {
      throw std::invalid_argument("record " + r.circuit_id +
                                  ": counts sum to " + std::to_string(total) +
                                  " but shots = " +
                                  std::to_string(batch.shots));
    }
    if (jr.contains("seed")) r.seed = jr.at("seed").get<std::uint64_t>();
    r.source = jr.contains("source")
                   ? source_from_name(jr.at("source").get<std::string>())
                   : CountsSource::imported;
    r.timestamp = jr.value("timestamp", "");
    batch.records.push_back(std::move(r));
  }
  if (j.contains("params_snapshot")) {
    batch.params_snapshot =
        noisemodel::params_from_json(j.at("params_snapshot"));
  } else {
    for (auto& r : batch.records) r.source = CountsSource::imported;
  }
  validate(batch);
  return batch;
}

ExperimentBatch import_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open batch file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("batch file " + path +
                                " is not valid JSON: " + e.what());
  }
  try {
    return batch_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("batch file " + path + " schema violation: " +
                                e.what());
  }
}

void export_batch(const ExperimentBatch& batch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write batch file " + path);
  out << batch_to_json(batch).dump(2) << "\n";
}

noisemodel::NoiseParams plausible_device_params(int n) {
  auto p = noisemodel::NoiseParams::zeros(n);
  p.thermal_enabled = true;
  std::fill(p.p_sp.begin(), p.p_sp.end(), 0.005);
  std::fill(p.lambda_x.begin(), p.lambda_x.end(), 0.0005);
  std::fill(p.lambda_sx.begin(), p.lambda_sx.end(), 0.0005);
  std::fill(p.lambda_rz.begin(), p.lambda_rz.end(), 0.0005);
  std::fill(p.lambda_cx.begin(), p.lambda_cx.end(), 0.01);
  std::fill(p.phi_x.begin(), p.phi_x.end(), 0.02);
  std::fill(p.phi_sx.begin(), p.phi_sx.end(), 0.02);
  std::fill(p.t1_us.begin(), p.t1_us.end(), 120.0);
  std::fill(p.t2_us.begin(), p.t2_us.end(), 90.0);
  std::fill(p.p01.begin(), p.p01.end(), 0.02);
  std::fill(p.p10.begin(), p.p10.end(), 0.025);
  return p;
}

std::string rfc3339_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm_utc.tm_year + 1900, tm_utc.tm_mon + 1, tm_utc.tm_mday,
                tm_utc.tm_hour, tm_utc.tm_min, tm_utc.tm_sec);
  return std::string(buf);
}

}  // namespace noisebench::device
