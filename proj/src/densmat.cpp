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

#include "noisebench/densmat.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace noisebench::densmat {

namespace {

using cd = std::complex<double>;

void check_targets(std::span<const int> targets, int width) {
  if (targets.empty()) throw std::invalid_argument("empty target list");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= width) {
      throw std::invalid_argument("target qubit out of range");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit");
      }
    }
  }
}

// Offset of each gate-local basis state within the full index space.
// targets[0] maps to the most significant gate-local bit.
std::vector<Eigen::Index> target_offsets(std::span<const int> targets,
                                         int width) {
  const int k = static_cast<int>(targets.size());
  std::vector<Eigen::Index> offs(std::size_t{1} << k, 0);
  for (std::size_t g = 0; g < offs.size(); ++g) {
    Eigen::Index off = 0;
    for (int j = 0; j < k; ++j) {
      if ((g >> (k - 1 - j)) & 1U) {
        off |= Eigen::Index{1} << (width - 1 - targets[j]);
      }
    }
    offs[g] = off;
  }
  return offs;
}

// All indices whose target bits are zero, i.e. the anchor of each gate-local
// block.
std::vector<Eigen::Index> base_indices(std::span<const int> targets,
                                       int width) {
  std::vector<int> free_positions;
  for (int q = 0; q < width; ++q) {
    bool is_target = false;
    for (int t : targets) is_target |= (t == q);
    if (!is_target) free_positions.push_back(width - 1 - q);
  }
  const std::size_t n = std::size_t{1} << free_positions.size();
  std::vector<Eigen::Index> bases(n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    Eigen::Index idx = 0;
    for (std::size_t j = 0; j < free_positions.size(); ++j) {
      if ((b >> j) & 1U) idx |= Eigen::Index{1} << free_positions[j];
    }
    bases[b] = idx;
  }
  return bases;
}

void check_op_shape(const Eigen::MatrixXcd& op, std::size_t n_targets) {
  const Eigen::Index dim = Eigen::Index{1} << n_targets;
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument("operator dimension does not match targets");
  }
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd g = u.adjoint() * u;
  g -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

namespace detail {

void apply_matrix_left(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& op,
                       std::span<const int> targets, int width) {
  check_targets(targets, width);
  check_op_shape(op, targets.size());
  const auto offs = target_offsets(targets, width);
  const auto bases = base_indices(targets, width);
  const std::size_t sub = offs.size();
  const Eigen::Index n = m.rows();
  std::vector<cd> in(sub), out(sub);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index base : bases) {
      for (std::size_t g = 0; g < sub; ++g) in[g] = m(base + offs[g], c);
      for (std::size_t g = 0; g < sub; ++g) {
        cd acc = 0.0;
        for (std::size_t h = 0; h < sub; ++h) acc += op(g, h) * in[h];
        out[g] = acc;
      }
      for (std::size_t g = 0; g < sub; ++g) m(base + offs[g], c) = out[g];
    }
  }
}

void apply_matrix_right_dagger(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& op,
                               std::span<const int> targets, int width) {
  check_targets(targets, width);
  check_op_shape(op, targets.size());
  const auto offs = target_offsets(targets, width);
  const auto bases = base_indices(targets, width);
  const std::size_t sub = offs.size();
  const Eigen::Index n = m.rows();
  std::vector<cd> in(sub), out(sub);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index base : bases) {
      for (std::size_t g = 0; g < sub; ++g) in[g] = m(r, base + offs[g]);
      // (m * Op~^dagger)(r, h) = sum_g m(r, g) * conj(op(h, g))
      for (std::size_t h = 0; h < sub; ++h) {
        cd acc = 0.0;
        for (std::size_t g = 0; g < sub; ++g) acc += in[g] * std::conj(op(h, g));
        out[h] = acc;
      }
      for (std::size_t h = 0; h < sub; ++h) m(r, base + offs[h]) = out[h];
    }
  }
}

}  // namespace detail

DensityMatrix init_state(int width) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("init_state width must be in [1, " +
                                std::to_string(kMaxWidth) + "]");
  }
  const Eigen::Index dim = Eigen::Index{1} << width;
  DensityMatrix rho;
  rho.width = width;
  rho.data = Eigen::MatrixXcd::Zero(dim, dim);
  rho.data(0, 0) = 1.0;
  return rho;
}

void apply_unitary(DensityMatrix& rho, const Eigen::MatrixXcd& u,
                   std::span<const int> targets) {
  check_targets(targets, rho.width);
  check_op_shape(u, targets.size());
  const double residual = unitarity_residual(u);
  if (residual > 1e-8) {
    throw std::invalid_argument("apply_unitary: operator is not unitary (|U^dag U - I|_max = " +
                                std::to_string(residual) + ")");
  }
  detail::apply_matrix_left(rho.data, u, targets, rho.width);
  detail::apply_matrix_right_dagger(rho.data, u, targets, rho.width);
}

void apply_kraus(DensityMatrix& rho, std::span<const Eigen::MatrixXcd> kraus,
                 std::span<const int> targets) {
  check_targets(targets, rho.width);
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index dim = Eigen::Index{1} << targets.size();
  Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : kraus) {
    check_op_shape(k, targets.size());
    completeness += k.adjoint() * k;
  }
  completeness -= Eigen::MatrixXcd::Identity(dim, dim);
  const double residual = completeness.cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    throw std::invalid_argument(
        "apply_kraus: channel is not trace preserving (|sum K^dag K - I|_max = " +
        std::to_string(residual) + ")");
  }

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.data.rows(), rho.data.cols());
  Eigen::MatrixXcd term;
  for (const auto& k : kraus) {
    term = rho.data;
    detail::apply_matrix_left(term, k, targets, rho.width);
    detail::apply_matrix_right_dagger(term, k, targets, rho.width);
    acc += term;
  }
  rho.data = std::move(acc);
}

OutcomeDistribution distribution(const DensityMatrix& rho) {
  const Eigen::Index n = rho.data.rows();
  OutcomeDistribution dist;
  dist.width = rho.width;
  dist.probs.resize(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (Eigen::Index b = 0; b < n; ++b) {
    double p = rho.data(b, b).real();
    if (p < 0.0) p = 0.0;
    dist.probs[static_cast<std::size_t>(b)] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    throw std::runtime_error(
        "distribution: diagonal sums to " + std::to_string(sum) +
        ", expected 1 (internal consistency failure)");
  }
  for (auto& p : dist.probs) p /= sum;
  return dist;
}

double expval_zz(const OutcomeDistribution& dist) {
  double v = 0.0;
  for (std::size_t b = 0; b < dist.probs.size(); ++b) {
    const bool odd = std::popcount(b) & 1U;
    v += odd ? -dist.probs[b] : dist.probs[b];
  }
  return v;
}

}  // namespace noisebench::densmat
