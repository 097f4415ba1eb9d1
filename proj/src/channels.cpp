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

#include "noisebench/channels.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace noisebench::channels {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd pauli(int which) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (which) {
    case 0:  // I
      m(0, 0) = 1;
      m(1, 1) = 1;
      break;
    case 1:  // X
      m(0, 1) = 1;
      m(1, 0) = 1;
      break;
    case 2:  // Y
      m(0, 1) = cd(0, -1);
      m(1, 0) = cd(0, 1);
      break;
    case 3:  // Z
      m(0, 0) = 1;
      m(1, 1) = -1;
      break;
  }
  return m;
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) +
                                " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

void validate(const ReadoutConfusion& confusion) {
  if (confusion.p01.size() != confusion.p10.size()) {
    throw std::invalid_argument("readout confusion p01/p10 length mismatch");
  }
  if (confusion.p01.empty()) {
    throw std::invalid_argument("readout confusion must cover >= 1 qubit");
  }
  for (double p : confusion.p01) check_probability(p, "p01");
  for (double p : confusion.p10) check_probability(p, "p10");
}

std::vector<Eigen::MatrixXcd> state_prep_channel(double p_sp) {
  check_probability(p_sp, "p_sp");
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.push_back(std::sqrt(1.0 - p_sp) * pauli(0));
  kraus.push_back(std::sqrt(p_sp) * pauli(1));
  return kraus;
}

std::vector<Eigen::MatrixXcd> depolarizing_channel(double lambda,
                                                   int num_qubits) {
  check_probability(lambda, "lambda");
  if (num_qubits != 1 && num_qubits != 2) {
    throw std::invalid_argument("depolarizing_channel supports 1 or 2 qubits");
  }
  std::vector<Eigen::MatrixXcd> kraus;
  if (num_qubits == 1) {
    kraus.push_back(std::sqrt(1.0 - 3.0 * lambda / 4.0) * pauli(0));
    for (int p = 1; p < 4; ++p) {
      kraus.push_back(std::sqrt(lambda / 4.0) * pauli(p));
    }
  } else {
    // 16-term two-qubit Pauli form; equals (1-lambda) rho + lambda/4 I as a
    // map.
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double weight = (a == 0 && b == 0)
                                  ? 1.0 - 15.0 * lambda / 16.0
                                  : lambda / 16.0;
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Zero(4, 4);
        const Eigen::Matrix2cd pa = pauli(a);
        const Eigen::Matrix2cd pb = pauli(b);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            term.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
          }
        }
        kraus.push_back(std::sqrt(weight) * term);
      }
    }
  }
  return kraus;
}

std::vector<Eigen::MatrixXcd> thermal_channel(double t1, double t2,
                                              double t_gate) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) {
    throw std::invalid_argument("thermal_channel requires T1, T2 > 0");
  }
  if (t2 > t1) {
    throw std::invalid_argument(
        "thermal_channel requires T2 <= T1 (no Choi branch)");
  }
  if (!(t_gate >= 0.0)) {
    throw std::invalid_argument("thermal_channel requires t_gate >= 0");
  }
  const double p_reset = 1.0 - std::exp(-t_gate / t1);
  const double p_z =
      (1.0 - p_reset) * (1.0 - std::exp(-t_gate / t2 + t_gate / t1)) / 2.0;
  const double p_i = 1.0 - p_z - p_reset;

  std::vector<Eigen::MatrixXcd> kraus;
  kraus.push_back(std::sqrt(p_i) * pauli(0));
  kraus.push_back(std::sqrt(p_z) * pauli(3));
  Eigen::MatrixXcd reset0 = Eigen::MatrixXcd::Zero(2, 2);
  reset0(0, 0) = std::sqrt(p_reset);  // |0><0|
  Eigen::MatrixXcd reset1 = Eigen::MatrixXcd::Zero(2, 2);
  reset1(0, 1) = std::sqrt(p_reset);  // |0><1|
  kraus.push_back(std::move(reset0));
  kraus.push_back(std::move(reset1));
  return kraus;
}

Eigen::Matrix2cd crosstalk_unitary(double phi) {
  const double c = std::cos(phi / 2.0);
  const double s = std::sin(phi / 2.0);
  Eigen::Matrix2cd m;
  m << cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0);
  return m;
}

densmat::OutcomeDistribution apply_readout(
    const densmat::OutcomeDistribution& dist,
    const ReadoutConfusion& confusion) {
  validate(confusion);
  if (confusion.width() != dist.width) {
    throw std::invalid_argument("readout confusion width mismatch");
  }
  densmat::OutcomeDistribution out = dist;
  const int w = dist.width;
  for (int q = 0; q < w; ++q) {
    const double p01 = confusion.p01[static_cast<std::size_t>(q)];
    const double p10 = confusion.p10[static_cast<std::size_t>(q)];
    const std::size_t stride = std::size_t{1} << (w - 1 - q);
    for (std::size_t idx = 0; idx < out.probs.size(); ++idx) {
      if (idx & stride) continue;  // visit each (0,1) pair once
      const double v0 = out.probs[idx];
      const double v1 = out.probs[idx | stride];
      out.probs[idx] = (1.0 - p01) * v0 + p10 * v1;
      out.probs[idx | stride] = p01 * v0 + (1.0 - p10) * v1;
    }
  }
  return out;
}

}  // namespace noisebench::channels
