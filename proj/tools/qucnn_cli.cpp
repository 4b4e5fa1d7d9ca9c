// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// qucnn: runs the QuCNN experiments through the C API.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal
// invariant violation.

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qucnn/qucnn.h"

namespace {

int exit_code(qucnn_status s) {
  switch (s) {
    case QUCNN_OK:
      return 0;
    case QUCNN_ERROR_CONFIG:
    case QUCNN_ERROR_INVALID_ARGUMENT:
    case QUCNN_ERROR_OUT_OF_RANGE:
      return 1;
    case QUCNN_ERROR_DATA:
    case QUCNN_ERROR_IO:
    case QUCNN_ERROR_DIMENSION_MISMATCH:
    case QUCNN_ERROR_NOT_UNITARY:
      return 2;
    default:
      return 3;
  }
}

int report(qucnn_status s) {
  std::fprintf(stderr, "qucnn: %s: %s\n", qucnn_status_string(s),
               qucnn_last_error());
  return exit_code(s);
}

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  bool exact = false;
  std::string out;
  std::vector<std::string> sets;  // key=value
  // Frequently used keys get their own flags.
  std::map<std::string, std::string> named;
  bool print_config = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--shots", o.shots, "Shots per circuit evaluation")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", o.exact, "Use exact probabilities instead of shots");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--set", o.sets, "Override any config key (key=value)");
  cmd->add_flag("--print-config", o.print_config,
                "Print the resolved configuration before running");
}

void add_named(CLI::App* cmd, Overrides& o, const std::string& flag,
               const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&o, key](const std::string& v) { o.named[key] = v; }, help);
}

int run(const std::string& experiment, const Overrides& o) {
  qucnn_config* cfg = nullptr;
  qucnn_status s = o.config_path.empty()
                       ? qucnn_config_create(experiment.c_str(), &cfg)
                       : qucnn_config_load(o.config_path.c_str(), &cfg);
  if (s != QUCNN_OK) return report(s);

  std::vector<std::pair<std::string, std::string>> edits{{"experiment", experiment}};
  for (const auto& [k, v] : o.named) edits.emplace_back(k, v);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "qucnn: --set expects key=value, got '%s'\n", kv.c_str());
      qucnn_config_destroy(cfg);
      return 1;
    }
    edits.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) edits.emplace_back("seed", std::to_string(*o.seed));
  if (o.shots) edits.emplace_back("shots", std::to_string(*o.shots));
  if (o.exact) edits.emplace_back("shots", "\"exact\"");
  if (!o.out.empty()) edits.emplace_back("output_dir", o.out);

  for (const auto& [k, v] : edits) {
    s = qucnn_config_set(cfg, k.c_str(), v.c_str());
    if (s != QUCNN_OK) {
      qucnn_config_destroy(cfg);
      return report(s);
    }
  }
  if (o.print_config) std::printf("%s\n", qucnn_config_json(cfg));

  qucnn_outcome* outcome = nullptr;
  s = qucnn_experiment_run(cfg, &outcome);
  qucnn_config_destroy(cfg);
  if (s != QUCNN_OK) return report(s);

  for (size_t i = 0; i < qucnn_outcome_warning_count(outcome); ++i) {
    std::fprintf(stderr, "qucnn: warning: %s\n", qucnn_outcome_warning(outcome, i));
  }
  std::printf("%s", qucnn_outcome_summary(outcome));
  std::printf("files_written: %zu\n", qucnn_outcome_file_count(outcome));
  qucnn_outcome_destroy(outcome);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QuCNN quantum convolution simulator"};
  app.set_version_flag("--version", std::string(qucnn_version()));
  app.require_subcommand(1);

  Overrides o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"forward", "Quantum vs classical feature maps over MNIST images"},
      {"backprop-validate", "Entangled-ancilla vs host-side chain-rule gradients"},
      {"train-filter", "Train ansatz filters of depth 1-3 toward a target state"},
      {"gradcheck", "Parameter-shift vs finite-difference gradients"},
  };
  std::string chosen;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, o);
    add_named(cmd, o, "--threads", "threads", "Worker threads");
    if (std::string(sub.name) == "forward") {
      add_named(cmd, o, "--dataset", "dataset_path", "MNIST IDX3 image file");
      add_named(cmd, o, "--images", "image_count", "Number of images");
      add_named(cmd, o, "--filter", "filter_source",
                "Filter vector file, or 'random'");
      add_named(cmd, o, "--stride", "stride", "Window stride");
    } else if (std::string(sub.name) == "backprop-validate") {
      add_named(cmd, o, "--dl-do", "dl_do", "Upstream gradient dL/dO");
      add_named(cmd, o, "--reps", "n_reps", "Ansatz repetitions");
    } else if (std::string(sub.name) == "train-filter") {
      add_named(cmd, o, "--lr", "learning_rate", "Learning rate");
      add_named(cmd, o, "--iters", "max_iters", "Maximum iterations");
      add_named(cmd, o, "--runs", "runs", "Number of seeded runs");
      add_named(cmd, o, "--target", "target_source",
                "Target vector file, or 'random'");
    } else {
      add_named(cmd, o, "--runs", "runs", "Number of seeded runs");
    }
    cmd->callback([&chosen, name = std::string(sub.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return run(chosen, o);
}
