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

#include <cmath>
#include <complex>
#include <string>

#include "noisebench/channels.hpp"
#include "noisebench/circuits.hpp"
#include "noisebench/densmat.hpp"
#include "oracles.hpp"

namespace nd = noisebench::densmat;
namespace nc = noisebench::circuits;
namespace oracles = noisebench::oracles;

namespace {

nd::DensityMatrix density_from(const Eigen::MatrixXcd& data, int width) {
  nd::DensityMatrix rho;
  rho.width = width;
  rho.data = data;
  return rho;
}

}  // namespace

TEST_SUITE("densmat") {

TEST_CASE("init_state is |0...0><0...0|") {
  auto rho1 = nd::init_state(1);
  CHECK(rho1.data(0, 0) == std::complex<double>(1, 0));
  CHECK(rho1.data(1, 1) == std::complex<double>(0, 0));

  auto rho2 = nd::init_state(2);
  CHECK(rho2.data.rows() == 4);
  CHECK(rho2.data(0, 0) == std::complex<double>(1, 0));
  CHECK(std::abs(rho2.data.trace() - 1.0) <= 1e-15);

  CHECK(std::abs(nd::init_state(5).data.trace() - 1.0) <= 1e-15);

  CHECK_THROWS_AS(nd::init_state(0), std::invalid_argument);
  CHECK_THROWS_AS(nd::init_state(13), std::invalid_argument);
}

TEST_CASE("apply_unitary basics") {
  auto rho = nd::init_state(1);
  const int t0[] = {0};
  nd::apply_unitary(rho, nc::gate_matrix(nc::make_x(0)), t0);
  CHECK(std::abs(rho.data(1, 1).real() - 1.0) <= 1e-15);

  // CNOT on |00>: control is |0>, state unchanged.
  auto rho2 = nd::init_state(2);
  const int t01[] = {0, 1};
  nd::apply_unitary(rho2, nc::gate_matrix(nc::make_cx(0, 1)), t01);
  CHECK(std::abs(rho2.data(0, 0).real() - 1.0) <= 1e-15);
}

TEST_CASE("apply_unitary rejects non-unitary input") {
  auto rho = nd::init_state(1);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 1.5;
  const int t0[] = {0};
  CHECK_THROWS_AS(nd::apply_unitary(rho, bad, t0), std::invalid_argument);
  Eigen::MatrixXcd wrong_dim = Eigen::MatrixXcd::Identity(4, 4);
  CHECK_THROWS_AS(nd::apply_unitary(rho, wrong_dim, t0),
                  std::invalid_argument);
}

TEST_CASE("embedded unitaries match the explicit dense oracle") {
  // Random 3-qubit state, random 1- and 2-qubit unitaries on every target
  // choice, compared against full-matrix conjugation.
  const auto rho0 = oracles::random_density(8, 901);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto u1 = oracles::random_unitary(2, 1000 + s);
    for (int q = 0; q < 3; ++q) {
      auto rho = density_from(rho0, 3);
      const int targets[] = {q};
      nd::apply_unitary(rho, u1, targets);
      const auto full = oracles::embed_operator(u1, targets, 3);
      const Eigen::MatrixXcd expected = full * rho0 * full.adjoint();
      CHECK((rho.data - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const auto u2 = oracles::random_unitary(4, 2000 + s);
    const int pairs[][2] = {{0, 1}, {1, 0}, {1, 2}, {2, 0}};
    for (const auto& pair : pairs) {
      auto rho = density_from(rho0, 3);
      const int targets[] = {pair[0], pair[1]};
      nd::apply_unitary(rho, u2, targets);
      const auto full = oracles::embed_operator(u2, targets, 3);
      const Eigen::MatrixXcd expected = full * rho0 * full.adjoint();
      CHECK((rho.data - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("unitary conjugation preserves trace and Hermiticity") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto rho = density_from(oracles::random_density(8, 300 + s), 3);
    const auto u = oracles::random_unitary(4, 400 + s);
    const int targets[] = {2, 0};
    nd::apply_unitary(rho, u, targets);
    CHECK(std::abs(rho.data.trace().real() - 1.0) <= 1e-10);
    CHECK((rho.data - rho.data.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("apply U then U^dag restores the state") {
  auto rho0 = oracles::random_density(8, 55);
  auto rho = density_from(rho0, 3);
  const auto u = oracles::random_unitary(2, 56);
  const int targets[] = {1};
  nd::apply_unitary(rho, u, targets);
  nd::apply_unitary(rho, u.adjoint(), targets);
  CHECK((rho.data - rho0).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("apply_kraus identity and completeness check") {
  auto rho0 = oracles::random_density(4, 77);
  auto rho = density_from(rho0, 2);
  std::vector<Eigen::MatrixXcd> identity = {Eigen::MatrixXcd::Identity(2, 2)};
  const int targets[] = {1};
  nd::apply_kraus(rho, identity, targets);
  CHECK((rho.data - rho0).cwiseAbs().maxCoeff() <= 1e-14);

  std::vector<Eigen::MatrixXcd> incomplete = {
      0.5 * Eigen::MatrixXcd::Identity(2, 2)};
  try {
    nd::apply_kraus(rho, incomplete, targets);
    FAIL("expected completeness violation");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("not trace preserving") !=
          std::string::npos);
  }
}

TEST_CASE("fully depolarizing channel sends |0><0| to I/2") {
  auto rho = nd::init_state(1);
  const auto kraus = noisebench::channels::depolarizing_channel(1.0, 1);
  const int targets[] = {0};
  nd::apply_kraus(rho, kraus, targets);
  CHECK(std::abs(rho.data(0, 0).real() - 0.5) <= 1e-12);
  CHECK(std::abs(rho.data(1, 1).real() - 0.5) <= 1e-12);
  CHECK(std::abs(rho.data(0, 1)) <= 1e-12);
}

TEST_CASE("random CPTP channels keep the state physical") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto rho = density_from(oracles::random_density(8, 600 + s), 3);
    const auto kraus = oracles::random_cptp_kraus(2, 3, 700 + s);
    const int targets[] = {static_cast<int>(s % 3)};
    nd::apply_kraus(rho, kraus, targets);
    CHECK(std::abs(rho.data.trace().real() - 1.0) <= 1e-10);
    CHECK(oracles::min_eigenvalue(rho.data) >= -1e-8);

    // Matches the explicit embedded sum as well.
    Eigen::MatrixXcd expected =
        Eigen::MatrixXcd::Zero(rho.data.rows(), rho.data.cols());
    const auto rho0 = oracles::random_density(8, 600 + s);
    for (const auto& k : kraus) {
      const auto full = oracles::embed_operator(k, targets, 3);
      expected += full * rho0 * full.adjoint();
    }
    CHECK((rho.data - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("distribution of basic states") {
  auto rho = nd::init_state(2);
  auto dist = nd::distribution(rho);
  CHECK(dist.probs == std::vector<double>{1, 0, 0, 0});

  auto mixed = density_from(Eigen::MatrixXcd::Identity(4, 4) * 0.25, 2);
  auto uniform = nd::distribution(mixed);
  for (double p : uniform.probs) CHECK(p == doctest::Approx(0.25));
}

TEST_CASE("Ry(pi/2) on |0> gives the uniform single-qubit distribution") {
  auto rho = nd::init_state(1);
  const int targets[] = {0};
  nd::apply_unitary(rho, nc::gate_matrix(nc::make_ry(0, M_PI / 2)), targets);
  auto dist = nd::distribution(rho);
  CHECK(std::abs(dist.probs[0] - 0.5) <= 1e-12);
  CHECK(std::abs(dist.probs[1] - 0.5) <= 1e-12);
}

TEST_CASE("distribution rejects badly normalized states") {
  auto rho = density_from(Eigen::MatrixXcd::Identity(2, 2), 1);  // trace 2
  CHECK_THROWS_AS(nd::distribution(rho), std::runtime_error);
}

TEST_CASE("expval_zz parity rule") {
  nd::OutcomeDistribution d;
  d.width = 2;
  d.probs = {1, 0, 0, 0};
  CHECK(nd::expval_zz(d) == doctest::Approx(1.0));
  d.probs = {0.25, 0.25, 0.25, 0.25};
  CHECK(nd::expval_zz(d) == doctest::Approx(0.0));
  nd::OutcomeDistribution one;
  one.width = 1;
  one.probs = {0, 1};
  CHECK(nd::expval_zz(one) == doctest::Approx(-1.0));
}

TEST_CASE("expval_zz equals the direct trace oracle") {
  // tr(Z^{(x)w} rho) with the operator built explicitly by Kronecker
  // products.
  for (std::uint64_t s = 0; s < 5; ++s) {
    const int w = 3;
    auto rho = density_from(oracles::random_density(1 << w, 800 + s), w);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < w; ++q) {
      Eigen::MatrixXcd next(z.rows() * 2, z.cols() * 2);
      next.setZero();
      next.block(0, 0, z.rows(), z.cols()) = z;
      next.block(z.rows(), z.cols(), z.rows(), z.cols()) = -z;
      z = std::move(next);
    }
    const double direct = (z * rho.data).trace().real();
    CHECK(nd::expval_zz(nd::distribution(rho)) == doctest::Approx(direct).epsilon(1e-10));
  }
}

}  // TEST_SUITE
