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

#ifndef NOISEBENCH_TRAINER_HPP_
#define NOISEBENCH_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "noisebench/device.hpp"
#include "noisebench/noisemodel.hpp"

namespace noisebench::trainer {

enum class LossMetric { hellinger, kl };

struct SpsaConfig {
  int epochs = 500;
  double a = 0.02;   // step scale; tuned per run
  double c = 0.005;  // perturbation scale
  double alpha = 0.602;
  double gamma = 0.101;
  // Stability offset A; negative means "use 0.1 * epochs".
  double stability_offset = -1.0;
  std::uint64_t seed = 0;

  double resolved_stability_offset() const {
    return stability_offset >= 0.0 ? stability_offset : 0.1 * epochs;
  }
};

void validate(const SpsaConfig& config);

struct TrainReport {
  SpsaConfig config;
  // loss_history[0] is the loss at the (projected) start point; entry k+1 is
  // the mean of epoch k's two perturbed evaluations, so recording costs no
  // extra loss calls.
  std::vector<double> loss_history;
  std::vector<double> initial_theta;
  std::vector<double> final_theta;
  double wall_seconds = 0.0;
};

/// Hellinger distance (1/sqrt 2) * sqrt(sum (sqrt p - sqrt q)^2), in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);

/// KL divergence sum p ln(p/q) with 0 ln 0 = 0. Q is clamped below at
/// epsilon and renormalized first, so the result is always finite.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double epsilon = 1e-9);

/// Mean metric distance between the model's predicted distributions and the
/// batch's measured relative frequencies. Per-circuit terms are evaluated in
/// parallel and reduced index-ordered.
double batch_loss(const noisemodel::NoiseParams& params,
                  const device::ExperimentBatch& batch,
                  const noisemodel::GateTimes& times,
                  LossMetric metric = LossMetric::hellinger);

using LossFn = std::function<double(std::span<const double>)>;
using ProjectFn = std::function<void(std::vector<double>&)>;

// SPSA with gain sequences a_k = a/(A+k+1)^alpha, c_k = c/(k+1)^gamma and
// Rademacher perturbations. Iterates and both perturbed points are projected
// before any evaluation, so the loss never sees an infeasible vector.
// Exactly 2 evaluations per epoch plus 1 initial. Non-finite loss aborts
// with the offending epoch in the message.
TrainReport spsa_minimize(const LossFn& loss, std::vector<double> theta0,
                          const SpsaConfig& config, const ProjectFn& project);

/// Default start point: the plausible-device preset scaled by 0.5, so
/// every error mechanism starts with nonzero gradient signal.
noisemodel::NoiseParams default_initial_params(int n);

/// Feasibility projection used by train(): probabilities clamped to [0, 1],
/// T1 to [1 us, 1 s], T2 to (0, T1]. Idempotent.
void project_params(std::vector<double>& theta, int n);

/// Fits theta0 to the batch by SPSA on batch_loss.
TrainReport train(const device::ExperimentBatch& batch,
                  const noisemodel::NoiseParams& theta0,
                  const noisemodel::GateTimes& times, const SpsaConfig& config,
                  LossMetric metric = LossMetric::hellinger);

// Report schema: {"config": {...}, "loss_history": [...],
// "initial_params": params, "final_params": params, "seed": int}
nlohmann::json report_to_json(const TrainReport& report, int n);

}  // namespace noisebench::trainer

#endif  // NOISEBENCH_TRAINER_HPP_
