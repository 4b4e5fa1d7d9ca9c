// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/training.hpp"

#include <cmath>
#include <numbers>

#include "qucnn/error.hpp"
#include "qucnn/rng.hpp"

namespace qucnn {

void TrainingConfig::validate() const {
  if (n_reps < 1) fail(ErrorCode::kConfig, "n_reps must be >= 1");
  if (!(learning_rate > 0.0)) {
    fail(ErrorCode::kConfig, "learning_rate must be > 0");
  }
  if (max_iters < 0) fail(ErrorCode::kConfig, "max_iters must be >= 0");
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
    fail(ErrorCode::kConfig, "target_fidelity must be in (0, 1]");
  }
  if (mode.shots < 0) fail(ErrorCode::kConfig, "shots must be >= 0");
}

double state_fidelity_loss(const FilterParams& params, const FilterState& target,
                           const SamplingMode& mode) {
  return 1.0 - swap_test(ansatz_state(params), target.realized(), mode).p0();
}

FilterParams random_filter_params(int num_qubits, int n_reps,
                                  std::uint64_t seed) {
  FilterParams p(num_qubits, n_reps);
  SplitMix64 rng(seed);
  for (auto& t : p.thetas) t = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return p;
}

TrainingTrajectory train_filter(const FilterState& target,
                                const TrainingConfig& config,
                                std::optional<FilterParams> initial) {
  config.validate();
  TrainingTrajectory traj;
  traj.final_params =
      initial ? std::move(*initial)
              : random_filter_params(target.num_qubits(), config.n_reps,
                                     config.seed);
  FilterParams& params = traj.final_params;
  if (params.num_qubits != target.num_qubits()) {
    fail(ErrorCode::kDimensionMismatch,
         "initial parameters do not match the target width");
  }

  const StateVector& goal = target.realized();
  const auto stream = [&](int iter, std::uint64_t sub) {
    return config.mode.is_exact()
               ? config.mode
               : config.mode.substream(derive_seed(iter, sub));
  };

  std::vector<double> grad(params.size());
  for (int iter = 0;; ++iter) {
    TrainingStep step;
    step.iter = iter;
    step.fidelity = fidelity(ansatz_state(params), goal);
    step.loss = state_fidelity_loss(params, target, stream(iter, 0));
    if (config.record_params) step.params = params.thetas;
    const double estimate = 1.0 - 2.0 * step.loss;
    traj.steps.push_back(std::move(step));

    if (estimate >= config.target_fidelity) {
      traj.converged = true;
      break;
    }
    if (iter >= config.max_iters) break;

    // d(1 - p0)/dtheta = -d p0/dtheta.
    for (std::size_t i = 0; i < params.size(); ++i) {
      grad[i] = -param_shift_grad(params, i, goal, stream(iter, i + 1),
                                  config.shift);
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      params.thetas[i] -= config.learning_rate * grad[i];
    }
  }
  return traj;
}

}  // namespace qucnn
