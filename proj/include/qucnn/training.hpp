// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qucnn/conv_layer.hpp"
#include "qucnn/gradient.hpp"

namespace qucnn {

struct TrainingConfig {
  int n_reps = 3;
  double learning_rate = 0.5;
  int max_iters = 500;
  std::uint64_t seed = 0;
  double target_fidelity = 0.99;
  SamplingMode mode = SamplingMode::exact();
  double shift = kDefaultShift;
  bool record_params = false;

  /// Throws kConfig when a field is out of range.
  void validate() const;
};

struct TrainingStep {
  int iter = 0;
  double fidelity = 0.0;  ///< Exact |<target|filter>|^2.
  double loss = 0.0;      ///< 1 - p0 of the SWAP test, per the config mode.
  std::optional<std::vector<double>> params;
};

struct TrainingTrajectory {
  std::vector<TrainingStep> steps;
  FilterParams final_params;
  bool converged = false;

  const TrainingStep& last() const { return steps.back(); }
};

/// 1 - p0 of the SWAP test between the ansatz state and the target.
double state_fidelity_loss(const FilterParams& params, const FilterState& target,
                           const SamplingMode& mode);

/// Angles drawn uniformly from [-pi, pi) with a SplitMix64 stream.
FilterParams random_filter_params(int num_qubits, int n_reps,
                                  std::uint64_t seed);

/// Gradient descent on every angle using parameter-shift gradients of the
/// loss. Stops once the fidelity estimate 1 - 2 loss reaches
/// config.target_fidelity, or after config.max_iters updates. Starts from
/// `initial` when given, otherwise from random_filter_params(config.seed).
TrainingTrajectory train_filter(const FilterState& target,
                                const TrainingConfig& config,
                                std::optional<FilterParams> initial = {});

}  // namespace qucnn
