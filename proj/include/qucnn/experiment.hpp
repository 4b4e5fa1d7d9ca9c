// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Experiment orchestration behind the CLI.
//
// Configuration is a JSON object; every key is optional except dataset_path
// for the forward experiment:
//
//   experiment       "forward" | "backprop-validate" | "train-filter" |
//                    "gradcheck"
//   dataset_path     MNIST IDX3 image file
//   image_count      16
//   filter_source    "random" or a filter vector file (one value per line)
//   shots            10000, or "exact"
//   stride           1
//   window           [4, 4]
//   seed             2023
//   output_dir       "qucnn-out"
//   threads          1
//   dl_do            0.3
//   n_reps           2            (filter depth for backprop/gradcheck)
//   shot_schedule    [100, 1000, 10000, "exact"]
//   learning_rate    0.5
//   max_iters        500
//   target_fidelity  0.99
//   runs             10
//   target_source    "random" or a filter vector file
//   target_reps      3
//   shift            pi/2
//   fd_epsilon       1e-5

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qucnn/classical.hpp"
#include "qucnn/encoding.hpp"

namespace qucnn {

enum class ExperimentKind { kForward, kBackpropValidate, kTrainFilter, kGradcheck };

std::string_view to_string(ExperimentKind kind);
/// Throws kConfig for unknown names.
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kForward;
  std::filesystem::path dataset_path;
  int image_count = 16;
  std::string filter_source = "random";
  std::int64_t shots = 10000;  ///< 0 = exact.
  int stride = 1;
  int window_h = 4;
  int window_w = 4;
  std::uint64_t seed = 2023;
  std::filesystem::path output_dir = "qucnn-out";
  int threads = 1;
  double dl_do = 0.3;
  int n_reps = 2;
  std::vector<std::int64_t> shot_schedule{100, 1000, 10000, 0};
  double learning_rate = 0.5;
  int max_iters = 500;
  double target_fidelity = 0.99;
  int runs = 10;
  std::string target_source = "random";
  int target_reps = 3;
  double shift = 1.5707963267948966;
  double fd_epsilon = 1e-5;

  WindowGeometry geometry() const { return {window_h, window_w, stride}; }
  /// Throws kConfig when a field is out of range.
  void validate() const;
};

/// Parses JSON text. Unknown keys and ill-typed values throw kConfig.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Serializes every field; parse_config(config_to_json(c)) == c.
std::string config_to_json(const ExperimentConfig& config);
/// Sets one key from command-line text. The value is read as JSON when it
/// parses (numbers, arrays), otherwise as a string.
ExperimentConfig with_override(const ExperimentConfig& config,
                               std::string_view key, std::string_view value);

struct ExperimentOutcome {
  std::vector<std::filesystem::path> files;  ///< Relative to output_dir.
  std::vector<std::string> warnings;
  std::string summary;  ///< Same text as summary.txt.
};

/// Per-image statistics of the forward experiment.
struct ForwardImageStats {
  int image = 0;
  int degenerate_windows = 0;
  ComparisonStats exact_vs_normalized;  ///< On similarity 2 p0 - 1.
  ComparisonStats classical_vs_quantum;
  ComparisonStats shots_vs_exact;       ///< On p0; zeros in exact mode.
  double within_band_fraction = 1.0;    ///< |shots - exact| <= 4 sigma.
};

struct ForwardResult {
  ExperimentOutcome outcome;
  std::vector<ForwardImageStats> images;
};

/// 4-sigma binomial band half-width for a shot estimate of p.
double shot_band(double p, std::int64_t shots);

ForwardResult run_forward_experiment(const ExperimentConfig& config);
ExperimentOutcome run_backprop_validation(const ExperimentConfig& config);
ExperimentOutcome run_state_learning(const ExperimentConfig& config);
ExperimentOutcome run_gradcheck(const ExperimentConfig& config);

/// Dispatches on config.experiment and creates output_dir.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace qucnn
