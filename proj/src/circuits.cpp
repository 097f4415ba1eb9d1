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

#include "noisebench/circuits.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "noisebench/rng.hpp"

namespace noisebench::circuits {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
using cd = std::complex<double>;

int arity(GateKind kind) { return kind == GateKind::CX ? 2 : 1; }

bool has_angle(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::RY;
}

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RZ: return "rz";
    case GateKind::RY: return "ry";
    case GateKind::CX: return "cx";
  }
  return "?";
}

GateKind kind_from_name(const std::string& name) {
  if (name == "x") return GateKind::X;
  if (name == "sx") return GateKind::SX;
  if (name == "rz") return GateKind::RZ;
  if (name == "ry") return GateKind::RY;
  if (name == "cx") return GateKind::CX;
  throw std::invalid_argument("unknown gate kind '" + name + "'");
}

}  // namespace

Gate make_x(int q) { return Gate{GateKind::X, {q}, 0.0}; }
Gate make_sx(int q) { return Gate{GateKind::SX, {q}, 0.0}; }
Gate make_rz(int q, double theta) { return Gate{GateKind::RZ, {q}, theta}; }
Gate make_ry(int q, double theta) { return Gate{GateKind::RY, {q}, theta}; }
Gate make_cx(int control, int target) {
  return Gate{GateKind::CX, {control, target}, 0.0};
}

bool Circuit::is_native() const {
  for (const auto& g : gates) {
    if (g.kind == GateKind::RY) return false;
  }
  return true;
}

void validate(const Circuit& circuit) {
  if (circuit.width < 1) {
    throw std::invalid_argument("circuit width must be >= 1");
  }
  if (!circuit.layer_tags.empty() &&
      circuit.layer_tags.size() != circuit.gates.size()) {
    throw std::invalid_argument("layer_tags length must equal gate count");
  }
  for (const auto& g : circuit.gates) {
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
      throw std::invalid_argument("gate has wrong qubit count");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= circuit.width) {
        throw std::invalid_argument("gate qubit index out of range");
      }
    }
    if (g.kind == GateKind::CX) {
      if (g.qubits[0] == g.qubits[1]) {
        throw std::invalid_argument("CX qubits must be distinct");
      }
      if (std::abs(g.qubits[0] - g.qubits[1]) != 1) {
        throw std::invalid_argument(
            "CX qubits must be adjacent in the linear layout");
      }
    }
  }
}

int rotational_layers(int depth) { return (depth + 1) / 2; }

std::size_t efficient_su2_gate_count(int width, int depth) {
  auto rot = static_cast<std::size_t>(rotational_layers(depth));
  auto ent = static_cast<std::size_t>(depth / 2);
  return rot * 2 * static_cast<std::size_t>(width) +
         ent * static_cast<std::size_t>(width - 1);
}

Circuit efficient_su2(int width, int depth, std::span<const double> angles) {
  if (width < 1 || depth < 1) {
    throw std::invalid_argument("efficient_su2 requires width, depth >= 1");
  }
  const std::size_t expected =
      static_cast<std::size_t>(rotational_layers(depth)) * 2 *
      static_cast<std::size_t>(width);
  if (angles.size() != expected) {
    throw std::invalid_argument(
        "efficient_su2 expects " + std::to_string(expected) + " angles, got " +
        std::to_string(angles.size()));
  }

  Circuit circuit;
  circuit.width = width;
  std::size_t next_angle = 0;
  for (int layer = 0; layer < depth; ++layer) {
    if (layer % 2 == 0) {
      for (int q = 0; q < width; ++q) {
        circuit.gates.push_back(make_ry(q, angles[next_angle++]));
        circuit.layer_tags.push_back(layer);
        circuit.gates.push_back(make_rz(q, angles[next_angle++]));
        circuit.layer_tags.push_back(layer);
      }
    } else {
      for (int q = 0; q + 1 < width; ++q) {
        circuit.gates.push_back(make_cx(q, q + 1));
        circuit.layer_tags.push_back(layer);
      }
    }
  }
  return circuit;
}

std::vector<Circuit> random_circuit_batch(int width, int depth, int count,
                                          std::uint64_t seed) {
  if (count < 1) {
    throw std::invalid_argument("random_circuit_batch requires count >= 1");
  }
  const std::size_t n_angles =
      static_cast<std::size_t>(rotational_layers(depth)) * 2 *
      static_cast<std::size_t>(width);
  std::vector<Circuit> batch;
  batch.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(i));
    RngEngine rng(sub);
    std::vector<double> angles(n_angles);
    for (auto& a : angles) a = rng.uniform() * kTwoPi;
    Circuit c = efficient_su2(width, depth, angles);
    c.angle_seed = sub;
    batch.push_back(std::move(c));
  }
  return batch;
}

Eigen::MatrixXcd gate_matrix(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::SX: {
      // Principal square root of X: SX * SX == X exactly.
      Eigen::Matrix2cd m;
      m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
      return m;
    }
    case GateKind::RZ: {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
      m(0, 0) = std::exp(cd(0.0, -gate.theta / 2.0));
      m(1, 1) = std::exp(cd(0.0, gate.theta / 2.0));
      return m;
    }
    case GateKind::RY: {
      const double c = std::cos(gate.theta / 2.0);
      const double s = std::sin(gate.theta / 2.0);
      Eigen::Matrix2cd m;
      m << c, -s, s, c;
      return m;
    }
    case GateKind::CX: {
      // Control is the first listed qubit = the more significant bit.
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

std::uint64_t circuit_hash(const Circuit& circuit) {
  // FNV-1a over a canonical byte encoding of (width, gates).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(circuit.width));
  for (const auto& g : circuit.gates) {
    mix(static_cast<std::uint64_t>(g.kind));
    for (int q : g.qubits) mix(static_cast<std::uint64_t>(q));
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(g.theta));
    std::memcpy(&bits, &g.theta, sizeof(bits));
    mix(bits);
  }
  return h;
}

std::string circuit_hex_id(const Circuit& circuit) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(circuit_hash(circuit)));
  return std::string(buf);
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates) {
    nlohmann::json jg;
    jg["kind"] = kind_name(g.kind);
    jg["qubits"] = g.qubits;
    if (has_angle(g.kind)) jg["theta"] = g.theta;
    gates.push_back(std::move(jg));
  }
  nlohmann::json j;
  j["width"] = circuit.width;
  j["gates"] = std::move(gates);
  if (circuit.angle_seed) j["angle_seed"] = *circuit.angle_seed;
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit circuit;
  circuit.width = j.at("width").get<int>();
  for (const auto& jg : j.at("gates")) {
    Gate g;
    g.kind = kind_from_name(jg.at("kind").get<std::string>());
    g.qubits = jg.at("qubits").get<std::vector<int>>();
    if (has_angle(g.kind)) {
      g.theta = jg.at("theta").get<double>();
    } else if (jg.contains("theta")) {
      throw std::invalid_argument("gate kind does not take a theta field");
    }
    circuit.gates.push_back(std::move(g));
  }
  if (j.contains("angle_seed")) {
    circuit.angle_seed = j.at("angle_seed").get<std::uint64_t>();
  }
  validate(circuit);
  return circuit;
}

}  // namespace noisebench::circuits
