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

#include "noisebench/transpiler.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "noisebench/densmat.hpp"

namespace noisebench::transpiler {

namespace {

using circuits::Circuit;
using circuits::Gate;
using circuits::GateKind;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Normalizes an angle into (-pi, pi].
double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t > kPi) t -= kTwoPi;
  if (t <= -kPi) t += kTwoPi;
  return t;
}

bool droppable(double theta, double epsilon) {
  return std::abs(normalize_angle(theta)) <= epsilon;
}

struct Emitter {
  Circuit out;

  void push(Gate gate, int layer) {
    out.gates.push_back(std::move(gate));
    out.layer_tags.push_back(layer);
  }
};

// H = SX * Rz(pi/2) * SX in matrix order; used to flip a reversed CX.
void emit_hadamard(Emitter& em, int q, int layer) {
  em.push(circuits::make_sx(q), layer);
  em.push(circuits::make_rz(q, kPi / 2.0), layer);
  em.push(circuits::make_sx(q), layer);
}

// Ry(theta) = e^{i pi/2} * Rz(pi) * SX * Rz(theta + pi) * SX, verified by the
// equivalence oracle in the regression tests.
void emit_ry(Emitter& em, int q, double theta, int layer) {
  em.push(circuits::make_sx(q), layer);
  em.push(circuits::make_rz(q, normalize_angle(theta + kPi)), layer);
  em.push(circuits::make_sx(q), layer);
  em.push(circuits::make_rz(q, kPi), layer);
}

// One peephole pass. Returns true when something changed; callers loop to a
// fixpoint. Cancelled gates become nullopt and are compacted at the end.
bool peephole_pass(std::vector<Gate>& gates, std::vector<int>& layers,
                   double epsilon) {
  bool changed = false;
  std::vector<std::optional<Gate>> out;
  std::vector<int> out_layers;
  out.reserve(gates.size());
  // last[q]: index into `out` of the newest gate touching q; -1 none,
  // -2 blocked by a cancellation this pass.
  std::vector<int> last(16, -1);
  auto last_of = [&](int q) -> int& {
    if (q >= static_cast<int>(last.size())) last.resize(q + 1, -1);
    return last[static_cast<std::size_t>(q)];
  };

  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    Gate g = gates[gi];
    const int layer = layers.empty() ? 0 : layers[gi];
    if (g.kind == GateKind::RZ) {
      g.theta = normalize_angle(g.theta);
      if (std::abs(g.theta) <= epsilon) {
        changed = true;
        continue;
      }
      int& l = last_of(g.qubits[0]);
      if (l >= 0 && out[static_cast<std::size_t>(l)] &&
          out[static_cast<std::size_t>(l)]->kind == GateKind::RZ) {
        auto& prev = *out[static_cast<std::size_t>(l)];
        prev.theta = normalize_angle(prev.theta + g.theta);
        changed = true;
        if (std::abs(prev.theta) <= epsilon) {
          out[static_cast<std::size_t>(l)] = std::nullopt;
          l = -2;
        }
        continue;
      }
    } else if (g.kind == GateKind::CX) {
      int& lc = last_of(g.qubits[0]);
      int& lt = last_of(g.qubits[1]);
      if (lc >= 0 && lc == lt && out[static_cast<std::size_t>(lc)] &&
          *out[static_cast<std::size_t>(lc)] == g) {
        out[static_cast<std::size_t>(lc)] = std::nullopt;
        lc = -2;
        lt = -2;
        changed = true;
        continue;
      }
    }
    out.push_back(std::move(g));
    out_layers.push_back(layer);
    for (int q : out.back()->qubits) {
      last_of(q) = static_cast<int>(out.size()) - 1;
    }
  }

  gates.clear();
  layers.clear();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i]) {
      gates.push_back(std::move(*out[i]));
      layers.push_back(out_layers[i]);
    }
  }
  return changed;
}

}  // namespace

circuits::Circuit transpile(const circuits::Circuit& circuit,
                            const TranspileOptions& options) {
  circuits::validate(circuit);
  if (options.angle_epsilon < 0.0) {
    throw std::invalid_argument("angle_epsilon must be >= 0");
  }
  const bool peephole = options.optimize == OptimizeLevel::peephole;

  Emitter em;
  em.out.width = circuit.width;
  em.out.angle_seed = circuit.angle_seed;

  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const Gate& g = circuit.gates[gi];
    const int layer =
        circuit.layer_tags.empty() ? 0 : circuit.layer_tags[gi];
    switch (g.kind) {
      case GateKind::X:
      case GateKind::SX:
        em.push(g, layer);
        break;
      case GateKind::RZ:
        if (peephole && droppable(g.theta, options.angle_epsilon)) break;
        em.push(g, layer);
        break;
      case GateKind::RY:
        if (peephole && droppable(g.theta, options.angle_epsilon)) break;
        emit_ry(em, g.qubits[0], g.theta, layer);
        break;
      case GateKind::CX:
        if (g.qubits[0] < g.qubits[1]) {
          em.push(g, layer);
        } else {
          // CX with the control on the higher index: conjugate by Hadamards
          // so the emitted CX has control = lower index.
          const int lo = g.qubits[1];
          const int hi = g.qubits[0];
          emit_hadamard(em, lo, layer);
          emit_hadamard(em, hi, layer);
          em.push(circuits::make_cx(lo, hi), layer);
          emit_hadamard(em, lo, layer);
          emit_hadamard(em, hi, layer);
        }
        break;
    }
  }

  if (peephole) {
    const std::size_t max_passes = em.out.gates.size() + 2;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
      if (!peephole_pass(em.out.gates, em.out.layer_tags,
                         options.angle_epsilon)) {
        break;
      }
    }
  }
  return std::move(em.out);
}

Eigen::MatrixXcd circuit_unitary(const circuits::Circuit& circuit) {
  circuits::validate(circuit);
  if (circuit.width > 6) {
    throw std::invalid_argument("circuit_unitary is test-scale only (w <= 6)");
  }
  const Eigen::Index dim = Eigen::Index{1} << circuit.width;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : circuit.gates) {
    densmat::detail::apply_matrix_left(u, circuits::gate_matrix(g), g.qubits,
                                       circuit.width);
  }
  return u;
}

EquivalenceResult equivalent_up_to_phase(const circuits::Circuit& a,
                                         const circuits::Circuit& b) {
  if (a.width != b.width) {
    throw std::invalid_argument("equivalent_up_to_phase: width mismatch");
  }
  const Eigen::MatrixXcd ua = circuit_unitary(a);
  const Eigen::MatrixXcd ub = circuit_unitary(b);

  // Align the global phase on the largest-magnitude entry of ub.
  Eigen::Index r = 0, c = 0;
  ub.cwiseAbs().maxCoeff(&r, &c);
  std::complex<double> ratio = ua(r, c) / ub(r, c);
  const double mag = std::abs(ratio);
  std::complex<double> phase =
      mag > 0.0 ? ratio / mag : std::complex<double>(1.0, 0.0);

  EquivalenceResult result;
  result.max_deviation = (ua - phase * ub).cwiseAbs().maxCoeff();
  result.equivalent = result.max_deviation <= 1e-9;
  return result;
}

}  // namespace noisebench::transpiler
