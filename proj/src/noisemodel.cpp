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

#include "noisebench/noisemodel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace noisebench::noisemodel {

namespace {

void check_length(const std::vector<double>& v, std::size_t n,
                  const char* name) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string("params field ") + name +
                                " has length " + std::to_string(v.size()) +
                                ", expected " + std::to_string(n));
  }
}

void check_probabilities(const std::vector<double>& v, const char* name) {
  for (double p : v) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string("params field ") + name +
                                  " contains a value outside [0, 1]");
    }
  }
}

void append(std::vector<double>& out, const std::vector<double>& block) {
  out.insert(out.end(), block.begin(), block.end());
}

std::vector<double> take(std::span<const double>& vec, std::size_t count) {
  std::vector<double> block(vec.begin(), vec.begin() + count);
  vec = vec.subspan(count);
  return block;
}

}  // namespace

NoiseParams NoiseParams::zeros(int n) {
  if (n < 1) throw std::invalid_argument("device qubit count must be >= 1");
  NoiseParams p;
  p.n = n;
  // The all-zero model is the ideal one: thermal relaxation is switched off
  // so predictions are noise free under any gate times. Presets that carry
  // real T1/T2 re-enable it.
  p.thermal_enabled = false;
  const auto nn = static_cast<std::size_t>(n);
  p.p_sp.assign(nn, 0.0);
  p.lambda_x.assign(nn, 0.0);
  p.lambda_sx.assign(nn, 0.0);
  p.lambda_rz.assign(nn, 0.0);
  p.lambda_cx.assign(nn - 1, 0.0);
  p.phi_x.assign(nn, 0.0);
  p.phi_sx.assign(nn, 0.0);
  p.t1_us.assign(nn, 1.0);
  p.t2_us.assign(nn, 1.0);
  p.p01.assign(nn, 0.0);
  p.p10.assign(nn, 0.0);
  return p;
}

bool NoiseParams::scalars_equal(const NoiseParams& other) const {
  return n == other.n && pack(*this) == pack(other);
}

void validate(const NoiseParams& params) {
  if (params.n < 1) {
    throw std::invalid_argument("device qubit count must be >= 1");
  }
  const auto n = static_cast<std::size_t>(params.n);
  check_length(params.p_sp, n, "p_sp");
  check_length(params.lambda_x, n, "lambda.x");
  check_length(params.lambda_sx, n, "lambda.sx");
  check_length(params.lambda_rz, n, "lambda.rz");
  check_length(params.lambda_cx, n - 1, "lambda.cx");
  check_length(params.phi_x, n, "phi.x");
  check_length(params.phi_sx, n, "phi.sx");
  check_length(params.t1_us, n, "t1_us");
  check_length(params.t2_us, n, "t2_us");
  check_length(params.p01, n, "p01");
  check_length(params.p10, n, "p10");
  check_probabilities(params.p_sp, "p_sp");
  check_probabilities(params.lambda_x, "lambda.x");
  check_probabilities(params.lambda_sx, "lambda.sx");
  check_probabilities(params.lambda_rz, "lambda.rz");
  check_probabilities(params.lambda_cx, "lambda.cx");
  check_probabilities(params.p01, "p01");
  check_probabilities(params.p10, "p10");
  for (std::size_t q = 0; q < n; ++q) {
    if (!(params.t1_us[q] > 0.0) || !(params.t2_us[q] > 0.0)) {
      throw std::invalid_argument("T1 and T2 must be positive");
    }
    if (params.t2_us[q] > params.t1_us[q]) {
      throw std::invalid_argument("T2 must not exceed T1");
    }
  }
}

std::size_t param_count(int n) {
  if (n < 1) throw std::invalid_argument("device qubit count must be >= 1");
  return 11 * static_cast<std::size_t>(n) - 1;
}

std::vector<double> pack(const NoiseParams& params) {
  std::vector<double> vec;
  vec.reserve(param_count(params.n));
  append(vec, params.p_sp);
  append(vec, params.lambda_x);
  append(vec, params.lambda_sx);
  append(vec, params.lambda_rz);
  append(vec, params.lambda_cx);
  append(vec, params.phi_x);
  append(vec, params.phi_sx);
  append(vec, params.t1_us);
  append(vec, params.t2_us);
  append(vec, params.p01);
  append(vec, params.p10);
  return vec;
}

NoiseParams unpack(std::span<const double> vec, int n) {
  if (vec.size() != param_count(n)) {
    throw std::invalid_argument("unpack: vector length " +
                                std::to_string(vec.size()) + " != 11N-1 = " +
                                std::to_string(param_count(n)));
  }
  const auto nn = static_cast<std::size_t>(n);
  NoiseParams p;
  p.n = n;
  p.p_sp = take(vec, nn);
  p.lambda_x = take(vec, nn);
  p.lambda_sx = take(vec, nn);
  p.lambda_rz = take(vec, nn);
  p.lambda_cx = take(vec, nn - 1);
  p.phi_x = take(vec, nn);
  p.phi_sx = take(vec, nn);
  p.t1_us = take(vec, nn);
  p.t2_us = take(vec, nn);
  p.p01 = take(vec, nn);
  p.p10 = take(vec, nn);
  for (std::size_t q = 0; q < nn; ++q) {
    p.t2_us[q] = std::min(p.t2_us[q], p.t1_us[q]);
  }
  return p;
}

ChannelProgram schedule(const circuits::Circuit& circuit,
                        const NoiseParams& params, const GateTimes& times) {
  circuits::validate(circuit);
  validate(params);
  if (!circuit.is_native()) {
    throw std::invalid_argument("schedule requires a native circuit (no RY)");
  }
  if (circuit.width > params.n) {
    throw std::invalid_argument("circuit width exceeds device qubit count");
  }

  const int w = circuit.width;
  ChannelProgram program;
  program.width = w;

  for (int q = 0; q < w; ++q) {
    program.steps.push_back(KrausStep{
        channels::state_prep_channel(params.p_sp[static_cast<std::size_t>(q)]),
        {q}});
  }

  for (const auto& gate : circuit.gates) {
    program.steps.push_back(UnitaryStep{circuits::gate_matrix(gate), gate.qubits});

    const int q0 = gate.qubits[0];
    const auto uq0 = static_cast<std::size_t>(q0);
    double lambda = 0.0;
    double duration_ns = 0.0;
    switch (gate.kind) {
      case circuits::GateKind::X:
        lambda = params.lambda_x[uq0];
        duration_ns = times.t_x_ns;
        break;
      case circuits::GateKind::SX:
        lambda = params.lambda_sx[uq0];
        duration_ns = times.t_sx_ns;
        break;
      case circuits::GateKind::RZ:
        lambda = params.lambda_rz[uq0];
        duration_ns = times.t_rz_ns;
        break;
      case circuits::GateKind::CX:
        lambda = params.lambda_cx[static_cast<std::size_t>(
            std::min(gate.qubits[0], gate.qubits[1]))];
        duration_ns = times.t_cx_ns;
        break;
      case circuits::GateKind::RY:
        throw std::invalid_argument("schedule requires a native circuit");
    }

    // Crosstalk first (X/SX only), on the adjacent qubits that exist within
    // the circuit.
    if (gate.kind == circuits::GateKind::X ||
        gate.kind == circuits::GateKind::SX) {
      const double phi = gate.kind == circuits::GateKind::X
                             ? params.phi_x[uq0]
                             : params.phi_sx[uq0];
      for (int neighbour : {q0 - 1, q0 + 1}) {
        if (neighbour >= 0 && neighbour < w) {
          program.steps.push_back(
              UnitaryStep{channels::crosstalk_unitary(phi), {neighbour}});
        }
      }
    }

    program.steps.push_back(KrausStep{
        channels::depolarizing_channel(lambda,
                                       static_cast<int>(gate.qubits.size())),
        gate.qubits});

    const double duration_us =
        params.thermal_enabled ? duration_ns / 1000.0 : 0.0;
    for (int q : gate.qubits) {
      const auto uq = static_cast<std::size_t>(q);
      program.steps.push_back(
          KrausStep{channels::thermal_channel(params.t1_us[uq],
                                              params.t2_us[uq], duration_us),
                    {q}});
    }
  }

  channels::ReadoutConfusion confusion;
  confusion.p01.assign(params.p01.begin(), params.p01.begin() + w);
  confusion.p10.assign(params.p10.begin(), params.p10.begin() + w);
  program.steps.push_back(ReadoutStep{std::move(confusion)});
  return program;
}

namespace {

densmat::OutcomeDistribution run_program(const ChannelProgram& program) {
  auto rho = densmat::init_state(program.width);
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    const auto& step = program.steps[i];
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      densmat::apply_unitary(rho, u->matrix, u->targets);
    } else if (const auto* k = std::get_if<KrausStep>(&step)) {
      densmat::apply_kraus(rho, k->kraus, k->targets);
    } else {
      const auto& readout = std::get<ReadoutStep>(step);
      if (i + 1 != program.steps.size()) {
        throw std::runtime_error("readout step must be last");
      }
      return channels::apply_readout(densmat::distribution(rho),
                                     readout.confusion);
    }
  }
  return densmat::distribution(rho);
}

}  // namespace

densmat::OutcomeDistribution predict_distribution(
    const circuits::Circuit& circuit, const NoiseParams& params,
    const GateTimes& times) {
  return run_program(schedule(circuit, params, times));
}

double predict_expval(const circuits::Circuit& circuit,
                      const NoiseParams& params, const GateTimes& times) {
  return densmat::expval_zz(predict_distribution(circuit, params, times));
}

NoiseParams readout_only_params(std::span<const double> p01,
                                std::span<const double> p10) {
  if (p01.size() != p10.size() || p01.empty()) {
    throw std::invalid_argument(
        "readout_only_params: p01/p10 must be equal-length, nonempty");
  }
  NoiseParams p = NoiseParams::zeros(static_cast<int>(p01.size()));
  p.p01.assign(p01.begin(), p01.end());
  p.p10.assign(p10.begin(), p10.end());
  p.thermal_enabled = false;
  validate(p);
  return p;
}

nlohmann::json params_to_json(const NoiseParams& params) {
  nlohmann::json j;
  j["n"] = params.n;
  j["p_sp"] = params.p_sp;
  j["lambda"] = {{"x", params.lambda_x},
                 {"sx", params.lambda_sx},
                 {"rz", params.lambda_rz},
                 {"cx", params.lambda_cx}};
  j["phi"] = {{"x", params.phi_x}, {"sx", params.phi_sx}};
  j["t1_us"] = params.t1_us;
  j["t2_us"] = params.t2_us;
  j["p01"] = params.p01;
  j["p10"] = params.p10;
  if (!params.thermal_enabled) j["thermal_enabled"] = false;
  return j;
}

NoiseParams params_from_json(const nlohmann::json& j) {
  NoiseParams p;
  p.n = j.at("n").get<int>();
  p.p_sp = j.at("p_sp").get<std::vector<double>>();
  const auto& lambda = j.at("lambda");
  p.lambda_x = lambda.at("x").get<std::vector<double>>();
  p.lambda_sx = lambda.at("sx").get<std::vector<double>>();
  p.lambda_rz = lambda.at("rz").get<std::vector<double>>();
  p.lambda_cx = lambda.at("cx").get<std::vector<double>>();
  const auto& phi = j.at("phi");
  p.phi_x = phi.at("x").get<std::vector<double>>();
  p.phi_sx = phi.at("sx").get<std::vector<double>>();
  p.t1_us = j.at("t1_us").get<std::vector<double>>();
  p.t2_us = j.at("t2_us").get<std::vector<double>>();
  p.p01 = j.at("p01").get<std::vector<double>>();
  p.p10 = j.at("p10").get<std::vector<double>>();
  if (j.contains("thermal_enabled")) {
    p.thermal_enabled = j.at("thermal_enabled").get<bool>();
  }
  validate(p);
  return p;
}

nlohmann::json gate_times_to_json(const GateTimes& times) {
  return nlohmann::json{{"x", times.t_x_ns},
                        {"sx", times.t_sx_ns},
                        {"rz", times.t_rz_ns},
                        {"cx", times.t_cx_ns}};
}

GateTimes gate_times_from_json(const nlohmann::json& j) {
  GateTimes t;
  t.t_x_ns = j.at("x").get<double>();
  t.t_sx_ns = j.at("sx").get<double>();
  t.t_rz_ns = j.at("rz").get<double>();
  t.t_cx_ns = j.at("cx").get<double>();
  if (t.t_x_ns < 0 || t.t_sx_ns < 0 || t.t_rz_ns < 0 || t.t_cx_ns < 0) {
    throw std::invalid_argument("gate times must be >= 0");
  }
  return t;
}

}  // namespace noisebench::noisemodel
