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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noisebench::oracles {

namespace {

using cd = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Applies a single-qubit matrix to a statevector in place.
void sv_apply_1q(std::vector<cd>& psi, const Eigen::Matrix2cd& u, int q,
                 int width) {
  const std::size_t stride = std::size_t{1} << (width - 1 - q);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & stride) continue;
    const cd a0 = psi[i];
    const cd a1 = psi[i | stride];
    psi[i] = u(0, 0) * a0 + u(0, 1) * a1;
    psi[i | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

// CX with control c and target t (adjacent not required here).
void sv_apply_cx(std::vector<cd>& psi, int c, int t, int width) {
  const std::size_t cbit = std::size_t{1} << (width - 1 - c);
  const std::size_t tbit = std::size_t{1} << (width - 1 - t);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(psi[i], psi[i | tbit]);
    }
  }
}

double sv_prob_bit(const std::vector<cd>& psi, int q, int width, int bit) {
  const std::size_t mask = std::size_t{1} << (width - 1 - q);
  double p = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (((i & mask) != 0) == (bit != 0)) p += std::norm(psi[i]);
  }
  return p;
}

// Projects qubit q to `bit` and renormalizes; returns false if the branch
// has (numerically) zero weight.
bool sv_project(std::vector<cd>& psi, int q, int width, int bit) {
  const std::size_t mask = std::size_t{1} << (width - 1 - q);
  double weight = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (((i & mask) != 0) == (bit != 0)) {
      weight += std::norm(psi[i]);
    } else {
      psi[i] = 0.0;
    }
  }
  if (weight <= 0.0) return false;
  const double inv = 1.0 / std::sqrt(weight);
  for (auto& a : psi) a *= inv;
  return true;
}

Eigen::Matrix2cd pauli_matrix(int which) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (which) {
    case 0: m(0, 0) = 1; m(1, 1) = 1; break;
    case 1: m(0, 1) = 1; m(1, 0) = 1; break;
    case 2: m(0, 1) = cd(0, -1); m(1, 0) = cd(0, 1); break;
    case 3: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

Eigen::Matrix2cd rx_matrix(double phi) {
  Eigen::Matrix2cd m;
  const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
  m << cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0);
  return m;
}

Eigen::Matrix2cd sx_matrix() {
  Eigen::Matrix2cd m;
  m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
  return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(cd(0, -theta / 2.0));
  m(1, 1) = std::exp(cd(0, theta / 2.0));
  return m;
}

// Samples an index from a small discrete weight vector (weights sum to ~1).
std::size_t sample_discrete(std::span<const double> weights, RngEngine& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

// One sampled Pauli branch of the depolarizing channel.
void sample_depolarizing(std::vector<cd>& psi, double lambda,
                         std::span<const int> qubits, int width,
                         RngEngine& rng) {
  if (qubits.size() == 1) {
    const double rest = lambda / 4.0;
    const double weights[4] = {1.0 - 3.0 * rest, rest, rest, rest};
    const auto pick = sample_discrete(weights, rng);
    if (pick > 0) {
      sv_apply_1q(psi, pauli_matrix(static_cast<int>(pick)), qubits[0], width);
    }
  } else {
    const double rest = lambda / 16.0;
    std::vector<double> weights(16, rest);
    weights[0] = 1.0 - 15.0 * rest;
    const auto pick = sample_discrete(weights, rng);
    if (pick > 0) {
      const int pa = static_cast<int>(pick / 4);
      const int pb = static_cast<int>(pick % 4);
      if (pa > 0) sv_apply_1q(psi, pauli_matrix(pa), qubits[0], width);
      if (pb > 0) sv_apply_1q(psi, pauli_matrix(pb), qubits[1], width);
    }
  }
}

// One sampled branch of thermal relaxation on qubit q.
void sample_thermal(std::vector<cd>& psi, double t1, double t2,
                    double duration, int q, int width, RngEngine& rng) {
  const double p_reset = 1.0 - std::exp(-duration / t1);
  const double p_z =
      (1.0 - p_reset) * (1.0 - std::exp(-duration / t2 + duration / t1)) / 2.0;
  const double weights[3] = {1.0 - p_z - p_reset, p_z, p_reset};
  const auto pick = sample_discrete(weights, rng);
  if (pick == 1) {
    sv_apply_1q(psi, pauli_matrix(3), q, width);
  } else if (pick == 2) {
    // Reset branch pair {|0><0|, |0><1|}: measure the qubit, then relabel
    // the surviving component to |0>.
    const double p1 = sv_prob_bit(psi, q, width, 1);
    const int bit = rng.uniform() < p1 ? 1 : 0;
    sv_project(psi, q, width, bit);
    if (bit == 1) sv_apply_1q(psi, pauli_matrix(1), q, width);
  }
}

}  // namespace

std::complex<double> gaussian(RngEngine& rng) {
  const double u1 = 1.0 - rng.uniform();  // avoid log(0)
  const double u2 = rng.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  RngEngine rng(seed);
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = gaussian(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

Eigen::MatrixXcd random_density(int dim, std::uint64_t seed) {
  RngEngine rng(seed);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = gaussian(rng);
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

std::vector<Eigen::MatrixXcd> random_cptp_kraus(int dim, int branches,
                                                std::uint64_t seed) {
  // First dim columns of a random unitary on branches*dim form an isometry
  // V; its dim x dim slices are a trace-preserving Kraus set.
  const Eigen::MatrixXcd big = random_unitary(dim * branches, seed);
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(static_cast<std::size_t>(branches));
  for (int b = 0; b < branches; ++b) {
    kraus.push_back(big.block(b * dim, 0, dim, dim));
  }
  return kraus;
}

Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd& op,
                                std::span<const int> targets, int width) {
  const int k = static_cast<int>(targets.size());
  const std::size_t dim = std::size_t{1} << width;
  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << (width - 1 - t);
  auto local_index = [&](std::size_t idx) {
    std::size_t g = 0;
    for (int j = 0; j < k; ++j) {
      const std::size_t bit =
          (idx >> (width - 1 - targets[j])) & std::size_t{1};
      g |= bit << (k - 1 - j);
    }
    return g;
  };
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~target_mask) != (j & ~target_mask)) continue;
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          op(static_cast<Eigen::Index>(local_index(i)),
             static_cast<Eigen::Index>(local_index(j)));
    }
  }
  return full;
}

Eigen::MatrixXcd choi_matrix(std::span<const Eigen::MatrixXcd> kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index d = kraus.front().rows();
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) v(r * d + c) = k(r, c);
    }
    choi += v * v.adjoint();
  }
  return choi;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  return solver.eigenvalues().minCoeff();
}

std::vector<double> trajectory_frequencies(
    const circuits::Circuit& circuit, const noisemodel::NoiseParams& params,
    const noisemodel::GateTimes& times, std::size_t trajectories,
    std::uint64_t seed) {
  if (!circuit.is_native()) {
    throw std::invalid_argument("trajectory oracle needs a native circuit");
  }
  const int w = circuit.width;
  const std::size_t dim = std::size_t{1} << w;
  std::vector<double> tallies(dim, 0.0);

  for (std::size_t t = 0; t < trajectories; ++t) {
    RngEngine rng(derive_seed(seed, t));
    std::vector<cd> psi(dim, 0.0);
    psi[0] = 1.0;

    for (int q = 0; q < w; ++q) {
      if (rng.uniform() < params.p_sp[static_cast<std::size_t>(q)]) {
        sv_apply_1q(psi, pauli_matrix(1), q, w);
      }
    }

    for (const auto& gate : circuit.gates) {
      const int q0 = gate.qubits[0];
      const auto uq0 = static_cast<std::size_t>(q0);
      double lambda = 0.0;
      double duration_us = 0.0;
      switch (gate.kind) {
        case circuits::GateKind::X:
          sv_apply_1q(psi, pauli_matrix(1), q0, w);
          lambda = params.lambda_x[uq0];
          duration_us = times.t_x_ns / 1000.0;
          break;
        case circuits::GateKind::SX:
          sv_apply_1q(psi, sx_matrix(), q0, w);
          lambda = params.lambda_sx[uq0];
          duration_us = times.t_sx_ns / 1000.0;
          break;
        case circuits::GateKind::RZ:
          sv_apply_1q(psi, rz_matrix(gate.theta), q0, w);
          lambda = params.lambda_rz[uq0];
          duration_us = times.t_rz_ns / 1000.0;
          break;
        case circuits::GateKind::CX:
          sv_apply_cx(psi, gate.qubits[0], gate.qubits[1], w);
          lambda = params.lambda_cx[static_cast<std::size_t>(
              std::min(gate.qubits[0], gate.qubits[1]))];
          duration_us = times.t_cx_ns / 1000.0;
          break;
        case circuits::GateKind::RY:
          throw std::invalid_argument("native circuits only");
      }

      if (gate.kind == circuits::GateKind::X ||
          gate.kind == circuits::GateKind::SX) {
        const double phi = gate.kind == circuits::GateKind::X
                               ? params.phi_x[uq0]
                               : params.phi_sx[uq0];
        for (int nb : {q0 - 1, q0 + 1}) {
          if (nb >= 0 && nb < w) sv_apply_1q(psi, rx_matrix(phi), nb, w);
        }
      }
      sample_depolarizing(psi, lambda, gate.qubits, w, rng);
      if (!params.thermal_enabled) duration_us = 0.0;
      for (int q : gate.qubits) {
        const auto uq = static_cast<std::size_t>(q);
        sample_thermal(psi, params.t1_us[uq], params.t2_us[uq], duration_us, q,
                       w, rng);
      }
    }

    // Measure, then flip bits classically per the readout confusion.
    double u = rng.uniform();
    std::size_t outcome = dim - 1;
    for (std::size_t i = 0; i < dim; ++i) {
      u -= std::norm(psi[i]);
      if (u < 0.0) {
        outcome = i;
        break;
      }
    }
    std::size_t reported = 0;
    for (int q = 0; q < w; ++q) {
      const std::size_t mask = std::size_t{1} << (w - 1 - q);
      int bit = (outcome & mask) ? 1 : 0;
      const double flip = bit == 0 ? params.p01[static_cast<std::size_t>(q)]
                                   : params.p10[static_cast<std::size_t>(q)];
      if (rng.uniform() < flip) bit ^= 1;
      if (bit) reported |= mask;
    }
    tallies[reported] += 1.0;
  }

  for (auto& v : tallies) v /= static_cast<double>(trajectories);
  return tallies;
}

noisemodel::NoiseParams random_params(int n, double max_rate,
                                      std::uint64_t seed) {
  RngEngine rng(seed);
  auto p = noisemodel::NoiseParams::zeros(n);
  p.thermal_enabled = true;
  auto draw = [&](double scale) { return rng.uniform() * scale; };
  for (auto& v : p.p_sp) v = draw(max_rate);
  for (auto& v : p.lambda_x) v = draw(max_rate);
  for (auto& v : p.lambda_sx) v = draw(max_rate);
  for (auto& v : p.lambda_rz) v = draw(max_rate);
  for (auto& v : p.lambda_cx) v = draw(max_rate);
  for (auto& v : p.phi_x) v = draw(0.2);
  for (auto& v : p.phi_sx) v = draw(0.2);
  for (int q = 0; q < n; ++q) {
    const double t1 = 50.0 + draw(150.0);
    p.t1_us[static_cast<std::size_t>(q)] = t1;
    p.t2_us[static_cast<std::size_t>(q)] = t1 * (0.3 + 0.7 * rng.uniform());
  }
  for (auto& v : p.p01) v = draw(max_rate);
  for (auto& v : p.p10) v = draw(max_rate);
  return p;
}

}  // namespace noisebench::oracles
