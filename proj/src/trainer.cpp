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

#include "noisebench/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "noisebench/parallel.hpp"
#include "noisebench/rng.hpp"

namespace noisebench::trainer {

namespace {

void check_simplex_args(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distribution length mismatch");
  }
  if (p.empty()) throw std::invalid_argument("empty distributions");
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("negative probability entry");
  }
  for (double v : q) {
    if (v < 0.0) throw std::invalid_argument("negative probability entry");
  }
}

}  // namespace

void validate(const SpsaConfig& config) {
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(config.a > 0.0) || !(config.c > 0.0)) {
    throw std::invalid_argument("a and c must be positive");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0) ||
      !(config.gamma > 0.0 && config.gamma <= 1.0)) {
    throw std::invalid_argument("alpha and gamma must lie in (0, 1]");
  }
}

double hellinger(std::span<const double> p, std::span<const double> q) {
  check_simplex_args(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += diff * diff;
  }
  return std::min(1.0, std::sqrt(sum / 2.0));
}

double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double epsilon) {
  check_simplex_args(p, q);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  // Clamp Q below at epsilon, renormalize, then take the usual sum.
  std::vector<double> qc(q.begin(), q.end());
  double total = 0.0;
  for (auto& v : qc) {
    v = std::max(v, epsilon);
    total += v;
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] * total / qc[i]);
  }
  return std::max(0.0, kl);
}

double batch_loss(const noisemodel::NoiseParams& params,
                  const device::ExperimentBatch& batch,
                  const noisemodel::GateTimes& times, LossMetric metric) {
  device::validate(batch);
  if (batch.circuits.empty()) {
    throw std::invalid_argument("batch_loss needs a nonempty batch");
  }
  std::vector<double> terms(batch.circuits.size(), 0.0);
  parallel_for(batch.circuits.size(), [&](std::size_t i) {
    const auto predicted =
        noisemodel::predict_distribution(batch.circuits[i], params, times);
    const auto measured = device::counts_to_distribution(batch.records[i]);
    terms[i] = metric == LossMetric::hellinger
                   ? hellinger(predicted.probs, measured.probs)
                   : kl_divergence(predicted.probs, measured.probs);
  });
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum / static_cast<double>(terms.size());
}

TrainReport spsa_minimize(const LossFn& loss, std::vector<double> theta0,
                          const SpsaConfig& config, const ProjectFn& project) {
  validate(config);
  if (theta0.empty()) throw std::invalid_argument("theta0 must be nonempty");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t dim = theta0.size();
  const double big_a = config.resolved_stability_offset();

  auto evaluate = [&](std::span<const double> theta, int epoch) {
    const double value = loss(theta);
    if (!std::isfinite(value)) {
      throw std::runtime_error("SPSA: non-finite loss at epoch " +
                               std::to_string(epoch));
    }
    return value;
  };

  project(theta0);
  TrainReport report;
  report.config = config;
  report.initial_theta = theta0;
  report.loss_history.reserve(static_cast<std::size_t>(config.epochs) + 1);
  report.loss_history.push_back(evaluate(theta0, -1));

  RngEngine rng(config.seed);
  std::vector<double> theta = theta0;
  std::vector<double> plus(dim), minus(dim);
  std::vector<int> delta(dim);
  for (int k = 0; k < config.epochs; ++k) {
    const double ak = config.a / std::pow(big_a + k + 1.0, config.alpha);
    const double ck = config.c / std::pow(k + 1.0, config.gamma);
    for (std::size_t i = 0; i < dim; ++i) delta[i] = rng.rademacher();
    for (std::size_t i = 0; i < dim; ++i) {
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    project(plus);
    project(minus);
    const double loss_plus = evaluate(plus, k);
    const double loss_minus = evaluate(minus, k);
    const double scale = (loss_plus - loss_minus) / (2.0 * ck);
    for (std::size_t i = 0; i < dim; ++i) {
      theta[i] -= ak * scale / static_cast<double>(delta[i]);
    }
    project(theta);
    report.loss_history.push_back(0.5 * (loss_plus + loss_minus));
  }

  report.final_theta = std::move(theta);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

noisemodel::NoiseParams default_initial_params(int n) {
  auto theta = noisemodel::pack(device::plausible_device_params(n));
  for (auto& v : theta) v *= 0.5;
  return noisemodel::unpack(theta, n);
}

void project_params(std::vector<double>& theta, int n) {
  if (theta.size() != noisemodel::param_count(n)) {
    throw std::invalid_argument("project_params: wrong vector length");
  }
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t probs_end = 5 * nn - 1;  // p_sp and the lambda blocks
  for (std::size_t i = 0; i < probs_end; ++i) {
    theta[i] = std::clamp(theta[i], 0.0, 1.0);
  }
  // phi blocks (2N) are unconstrained.
  const std::size_t t1_begin = probs_end + 2 * nn;
  for (std::size_t q = 0; q < nn; ++q) {
    double& t1 = theta[t1_begin + q];
    double& t2 = theta[t1_begin + nn + q];
    t1 = std::clamp(t1, 1.0, 1e6);          // [1 us, 1 s]
    t2 = std::clamp(t2, 1e-3, t1);          // positive, at most T1
  }
  const std::size_t readout_begin = t1_begin + 2 * nn;
  for (std::size_t i = readout_begin; i < theta.size(); ++i) {
    theta[i] = std::clamp(theta[i], 0.0, 1.0);
  }
}

TrainReport train(const device::ExperimentBatch& batch,
                  const noisemodel::NoiseParams& theta0,
                  const noisemodel::GateTimes& times, const SpsaConfig& config,
                  LossMetric metric) {
  device::validate(batch);
  const int n = theta0.n;
  if (batch.w > n) {
    throw std::invalid_argument("batch width exceeds model qubit count");
  }
  const LossFn loss = [&](std::span<const double> theta) {
    return batch_loss(noisemodel::unpack(theta, n), batch, times, metric);
  };
  const ProjectFn project = [n](std::vector<double>& theta) {
    project_params(theta, n);
  };
  return spsa_minimize(loss, noisemodel::pack(theta0), config, project);
}

nlohmann::json report_to_json(const TrainReport& report, int n) {
  nlohmann::json j;
  j["config"] = {{"epochs", report.config.epochs},
                 {"a", report.config.a},
                 {"c", report.config.c},
                 {"alpha", report.config.alpha},
                 {"gamma", report.config.gamma},
                 {"stability_offset", report.config.resolved_stability_offset()}};
  j["loss_history"] = report.loss_history;
  j["initial_params"] =
      noisemodel::params_to_json(noisemodel::unpack(report.initial_theta, n));
  j["final_params"] =
      noisemodel::params_to_json(noisemodel::unpack(report.final_theta, n));
  j["seed"] = report.config.seed;
  return j;
}

}  // namespace noisebench::trainer
