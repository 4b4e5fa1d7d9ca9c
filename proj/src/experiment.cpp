// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qucnn/conv_layer.hpp"
#include "qucnn/error.hpp"
#include "qucnn/gradient.hpp"
#include "qucnn/io.hpp"
#include "qucnn/rng.hpp"
#include "qucnn/training.hpp"

namespace qucnn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config <-> JSON

json shots_to_json(std::int64_t shots) {
  return shots == 0 ? json("exact") : json(shots);
}

std::int64_t shots_from_json(const json& j, const char* key) {
  if (j.is_string()) {
    if (j.get<std::string>() == "exact") return 0;
  } else if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v >= 0) return v;  // 0 = exact
  }
  fail(ErrorCode::kConfig,
       std::string(key) + " must be a non-negative integer or \"exact\"");
}

template <typename T>
T field(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kConfig, std::string("config key '") + key +
                                 "' has the wrong type");
  }
}

json to_json(const ExperimentConfig& c) {
  json shots = json::array();
  for (auto s : c.shot_schedule) shots.push_back(shots_to_json(s));
  return {
      {"experiment", std::string(to_string(c.experiment))},
      {"dataset_path", c.dataset_path.string()},
      {"image_count", c.image_count},
      {"filter_source", c.filter_source},
      {"shots", shots_to_json(c.shots)},
      {"stride", c.stride},
      {"window", {c.window_h, c.window_w}},
      {"seed", c.seed},
      {"output_dir", c.output_dir.string()},
      {"threads", c.threads},
      {"dl_do", c.dl_do},
      {"n_reps", c.n_reps},
      {"shot_schedule", shots},
      {"learning_rate", c.learning_rate},
      {"max_iters", c.max_iters},
      {"target_fidelity", c.target_fidelity},
      {"runs", c.runs},
      {"target_source", c.target_source},
      {"target_reps", c.target_reps},
      {"shift", c.shift},
      {"fd_epsilon", c.fd_epsilon},
  };
}

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kConfig, "config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "experiment") {
      c.experiment = experiment_kind_from_string(field<std::string>(v, k));
    } else if (key == "dataset_path") {
      c.dataset_path = field<std::string>(v, k);
    } else if (key == "image_count") {
      c.image_count = field<int>(v, k);
    } else if (key == "filter_source") {
      c.filter_source = field<std::string>(v, k);
    } else if (key == "shots") {
      c.shots = shots_from_json(v, k);
    } else if (key == "stride") {
      c.stride = field<int>(v, k);
    } else if (key == "window") {
      const auto w = field<std::vector<int>>(v, k);
      if (w.size() != 2) fail(ErrorCode::kConfig, "window must be [hh, ww]");
      c.window_h = w[0];
      c.window_w = w[1];
    } else if (key == "seed") {
      c.seed = field<std::uint64_t>(v, k);
    } else if (key == "output_dir") {
      c.output_dir = field<std::string>(v, k);
    } else if (key == "threads") {
      c.threads = field<int>(v, k);
    } else if (key == "dl_do") {
      c.dl_do = field<double>(v, k);
    } else if (key == "n_reps") {
      c.n_reps = field<int>(v, k);
    } else if (key == "shot_schedule") {
      if (!v.is_array()) fail(ErrorCode::kConfig, "shot_schedule must be a list");
      c.shot_schedule.clear();
      for (const auto& s : v) c.shot_schedule.push_back(shots_from_json(s, k));
    } else if (key == "learning_rate") {
      c.learning_rate = field<double>(v, k);
    } else if (key == "max_iters") {
      c.max_iters = field<int>(v, k);
    } else if (key == "target_fidelity") {
      c.target_fidelity = field<double>(v, k);
    } else if (key == "runs") {
      c.runs = field<int>(v, k);
    } else if (key == "target_source") {
      c.target_source = field<std::string>(v, k);
    } else if (key == "target_reps") {
      c.target_reps = field<int>(v, k);
    } else if (key == "shift") {
      c.shift = field<double>(v, k);
    } else if (key == "fd_epsilon") {
      c.fd_epsilon = field<double>(v, k);
    } else {
      fail(ErrorCode::kConfig, "unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Helpers

std::string image_prefix(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "image_%02d", i);
  return buf;
}

class OutputDir {
 public:
  OutputDir(const fs::path& root, ExperimentOutcome& outcome)
      : root_(root), outcome_(outcome) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create " + root_.string());
  }

  void grid(const std::string& name, const Grid& g) {
    write_grid_csv(root_ / name, g);
    outcome_.files.emplace_back(name);
  }
  void table(const std::string& name, const CsvTable& t) {
    write_csv(root_ / name, t);
    outcome_.files.emplace_back(name);
  }
  void text(const std::string& name, const std::string& body) {
    std::ofstream out(root_ / name, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) fail(ErrorCode::kIo, "cannot write " + (root_ / name).string());
    outcome_.files.emplace_back(name);
  }

 private:
  fs::path root_;
  ExperimentOutcome& outcome_;
};

int window_qubits(const ExperimentConfig& c) {
  return std::countr_zero(static_cast<unsigned>(c.window_h * c.window_w));
}

/// Real unit vector from an RY + CNOT ansatz (RZ angles zero keep the
/// amplitudes real).
std::vector<double> random_real_filter(int num_qubits, int n_reps,
                                       std::uint64_t seed) {
  FilterParams p = random_filter_params(num_qubits, n_reps, seed);
  for (int r = 0; r < n_reps; ++r) {
    for (int q = 0; q < num_qubits; ++q) {
      p.thetas[p.index(r, RotationLayer::kRZ, q)] = 0.0;
    }
  }
  const StateVector s = ansatz_state(p);
  std::vector<double> v(s.dim());
  double n2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = s[i].real();
    n2 += v[i] * v[i];
  }
  for (auto& x : v) x /= std::sqrt(n2);
  return v;
}

std::vector<double> resolve_vector(const std::string& source,
                                   std::size_t expected, int num_qubits,
                                   std::uint64_t seed,
                                   std::vector<std::string>& warnings) {
  if (source == "random") return random_real_filter(num_qubits, 2, seed);
  FilterVector f = load_filter_vector(source);
  if (f.values.size() != expected) {
    fail(ErrorCode::kData, "filter file " + source + " has " +
                               std::to_string(f.values.size()) +
                               " values, expected " +
                               std::to_string(expected));
  }
  if (f.renormalized) {
    warnings.push_back("filter vector in " + source +
                       " was not unit-norm; renormalized");
  }
  return f.values;
}

Grid p0_grid(const FeatureMap& m) {
  Grid g{m.rows, m.cols, {}};
  for (const auto& c : m.cells) g.values.push_back(c.p0);
  return g;
}

Grid similarity_grid(const FeatureMap& m) {
  Grid g{m.rows, m.cols, {}};
  for (const auto& c : m.cells) g.values.push_back(2.0 * c.p0 - 1.0);
  return g;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string shots_label(std::int64_t shots) {
  return shots == 0 ? "exact" : std::to_string(shots);
}

}  // namespace

// ---------------------------------------------------------------------------
// Config API

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kForward:
      return "forward";
    case ExperimentKind::kBackpropValidate:
      return "backprop-validate";
    case ExperimentKind::kTrainFilter:
      return "train-filter";
    case ExperimentKind::kGradcheck:
      return "gradcheck";
  }
  return "forward";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::kForward, ExperimentKind::kBackpropValidate,
                 ExperimentKind::kTrainFilter, ExperimentKind::kGradcheck}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::kConfig, "unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::kConfig, what);
  };
  require(image_count >= 0, "image_count must be >= 0");
  require(shots >= 0, "shots must be >= 0");
  require(stride >= 1, "stride must be >= 1");
  require(window_h >= 1 && window_w >= 1, "window must be at least 1x1");
  const auto area = static_cast<unsigned>(window_h * window_w);
  require(area >= 2 && std::has_single_bit(area),
          "window area must be a power of two >= 2");
  require(threads >= 1, "threads must be >= 1");
  require(std::isfinite(dl_do), "dl_do must be finite");
  require(n_reps >= 1, "n_reps must be >= 1");
  require(!shot_schedule.empty(), "shot_schedule must not be empty");
  require(learning_rate > 0.0, "learning_rate must be > 0");
  require(max_iters >= 0, "max_iters must be >= 0");
  require(target_fidelity > 0.0 && target_fidelity <= 1.0,
          "target_fidelity must be in (0, 1]");
  require(runs >= 1, "runs must be >= 1");
  require(target_reps >= 1, "target_reps must be >= 1");
  require(std::abs(std::sin(shift)) > 1e-12, "shift must not be a multiple of pi");
  require(fd_epsilon > 0.0, "fd_epsilon must be > 0");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfig, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  return to_json(config).dump(2);
}

ExperimentConfig with_override(const ExperimentConfig& config,
                               std::string_view key, std::string_view value) {
  json j = to_json(config);
  json v = json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (v.is_discarded()) v = std::string(value);
  j[std::string(key)] = v;
  return from_json(j);
}

double shot_band(double p, std::int64_t shots) {
  return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

// ---------------------------------------------------------------------------
// Forward pass

ForwardResult run_forward_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.dataset_path.empty()) {
    fail(ErrorCode::kConfig, "forward experiment needs dataset_path");
  }
  ForwardResult result;
  ExperimentOutcome& outcome = result.outcome;

  const MnistSet set = load_mnist(config.dataset_path,
                                  static_cast<std::size_t>(config.image_count));
  const WindowGeometry geom = config.geometry();
  const int k = window_qubits(config);
  const std::vector<double> weights =
      resolve_vector(config.filter_source, std::size_t{1} << k, k,
                     derive_seed(config.seed, 0xF117), outcome.warnings);
  const ClassicalFilter classical{geom.hh, geom.ww, weights};
  const FilterState filter = filter_from_vector(weights);

  OutputDir out(config.output_dir, outcome);
  {
    CsvTable t{{"index", "weight"}, {}};
    for (std::size_t i = 0; i < weights.size(); ++i) {
      t.rows.push_back({std::to_string(i), format_real(weights[i])});
    }
    out.table("filter.csv", t);
  }

  const bool sampled = config.shots > 0;
  CsvTable summary{{"image", "degenerate_windows", "exact_vs_normalized_max_abs",
                    "exact_vs_normalized_mean_abs", "classical_vs_quantum_pearson"},
                   {}};
  if (sampled) {
    for (const char* h : {"shots_vs_exact_max_abs", "shots_vs_exact_pearson",
                          "shots_within_4sigma"}) {
      summary.header.emplace_back(h);
    }
  }

  for (std::size_t i = 0; i < set.count(); ++i) {
    const ImageGrid& image = set.images[i];
    const std::string prefix = image_prefix(static_cast<int>(i));
    ForwardImageStats stats;
    stats.image = static_cast<int>(i);

    const Grid raw = classical_conv(image, classical, geom.stride);
    const Grid normalized = normalized_similarity_map(image, classical, geom.stride);
    const FeatureMap exact = conv_forward(
        image, filter, {geom, SamplingMode::exact(), config.threads});
    const Grid exact_p0 = p0_grid(exact);
    const Grid exact_sim = similarity_grid(exact);

    Grid mask{exact.rows, exact.cols, {}};
    for (const auto& c : exact.cells) {
      mask.values.push_back(c.degenerate ? 1.0 : 0.0);
      stats.degenerate_windows += c.degenerate;
    }
    stats.exact_vs_normalized = compare_maps(exact_sim, normalized);
    stats.classical_vs_quantum = compare_maps(raw, exact_sim);

    out.grid(prefix + "_classical.csv", raw);
    out.grid(prefix + "_normalized.csv", normalized);
    out.grid(prefix + "_quantum_exact.csv", exact_p0);

    std::vector<std::string> row{
        std::to_string(i), std::to_string(stats.degenerate_windows),
        format_real(stats.exact_vs_normalized.max_abs_error),
        format_real(stats.exact_vs_normalized.mean_abs_error),
        format_real(stats.classical_vs_quantum.pearson_r)};

    if (sampled) {
      const SamplingMode mode =
          SamplingMode::sampled(config.shots, derive_seed(config.seed, i));
      const FeatureMap shots = conv_forward(image, filter, {geom, mode, config.threads});
      const Grid shots_p0 = p0_grid(shots);
      stats.shots_vs_exact = compare_maps(shots_p0, exact_p0);
      std::size_t inside = 0;
      for (std::size_t w = 0; w < exact_p0.values.size(); ++w) {
        const double p = exact_p0.values[w];
        if (std::abs(shots_p0.values[w] - p) <= shot_band(p, config.shots)) {
          ++inside;
        }
      }
      stats.within_band_fraction =
          static_cast<double>(inside) / static_cast<double>(exact_p0.values.size());
      out.grid(prefix + "_quantum_shots.csv", shots_p0);
      row.push_back(format_real(stats.shots_vs_exact.max_abs_error));
      row.push_back(format_real(stats.shots_vs_exact.pearson_r));
      row.push_back(format_real(stats.within_band_fraction));
    }
    out.grid(prefix + "_degenerate.csv", mask);
    summary.rows.push_back(std::move(row));
    result.images.push_back(stats);
  }
  out.table("summary.csv", summary);

  double worst = 0.0;
  double worst_band = 1.0;
  for (const auto& s : result.images) {
    worst = std::max(worst, s.exact_vs_normalized.max_abs_error);
    worst_band = std::min(worst_band, s.within_band_fraction);
  }
  std::ostringstream text;
  text << "experiment: forward\n"
       << "images: " << set.count() << '\n'
       << "window: " << geom.hh << 'x' << geom.ww << '\n'
       << "stride: " << geom.stride << '\n'
       << "shots: " << shots_label(config.shots) << '\n'
       << "seed: " << config.seed << '\n'
       << "exact_vs_normalized_max_abs_error: " << format_real(worst) << '\n';
  if (sampled) {
    text << "min_fraction_within_4sigma: " << format_real(worst_band) << '\n';
  }
  outcome.summary = text.str();
  out.text("summary.txt", outcome.summary);
  return result;
}

// ---------------------------------------------------------------------------
// Backpropagation validation

ExperimentOutcome run_backprop_validation(const ExperimentConfig& config) {
  config.validate();
  ExperimentOutcome outcome;
  OutputDir out(config.output_dir, outcome);

  const int k = window_qubits(config);
  const FilterParams params =
      random_filter_params(k, config.n_reps, derive_seed(config.seed, 1));
  // Uniform superposition over all basis states.
  StateVector data(k);
  for (int q = 0; q < k; ++q) data.apply_h(q);

  const UpstreamGradient up = range_map_upstream({config.dl_do});
  if (up.scale != 1.0) {
    outcome.warnings.push_back("dl_do = " + format_real(config.dl_do) +
                               " mapped into [-0.5, 0.5] with scale " +
                               format_real(up.scale));
  }
  const AncillaAngle angle = theta_beta(up.values.front());

  CsvTable rows{{"shots", "index", "rep", "layer", "qubit", "post_processed",
                 "entangled", "finite_diff", "abs_error"},
                {}};
  CsvTable summary{{"shots", "median_abs_error", "max_abs_error"}, {}};
  for (std::size_t s = 0; s < config.shot_schedule.size(); ++s) {
    const std::int64_t shots = config.shot_schedule[s];
    const SamplingMode mode =
        shots == 0 ? SamplingMode::exact()
                   : SamplingMode::sampled(shots, derive_seed(config.seed, 100 + s));
    const GradientReport report =
        gradient_report(params, data, config.dl_do, mode, config.fd_epsilon);
    std::vector<double> errors;
    for (const auto& r : report.records) {
      const auto per_layer = static_cast<std::size_t>(params.num_qubits);
      const std::size_t rep = r.index / (2 * per_layer);
      const bool rz = (r.index / per_layer) % 2 == 1;
      rows.rows.push_back({shots_label(shots), std::to_string(r.index),
                           std::to_string(rep), rz ? "RZ" : "RY",
                           std::to_string(r.index % per_layer),
                           format_real(report.scale * r.param_shift),
                           format_real(report.scale * r.entangled),
                           format_real(report.scale * r.finite_diff),
                           format_real(report.scale * r.abs_error)});
      errors.push_back(report.scale * r.abs_error);
    }
    summary.rows.push_back(
        {shots_label(shots), format_real(median(errors)),
         format_real(*std::max_element(errors.begin(), errors.end()))});
  }
  out.table("backprop.csv", rows);
  out.table("summary.csv", summary);

  std::ostringstream text;
  text << "experiment: backprop-validate\n"
       << "qubits: " << k << '\n'
       << "n_reps: " << config.n_reps << '\n'
       << "data_state: uniform_superposition\n"
       << "dl_do_raw: " << format_real(config.dl_do) << '\n'
       << "dl_do_mapped: " << format_real(up.values.front()) << '\n'
       << "scale: " << format_real(up.scale) << '\n'
       << "theta_beta: " << format_real(angle.theta_beta) << '\n'
       << "beta_sq: " << format_real(angle.beta_sq) << '\n'
       << "seed: " << config.seed << '\n';
  outcome.summary = text.str();
  out.text("summary.txt", outcome.summary);
  return outcome;
}

// ---------------------------------------------------------------------------
// State learning

ExperimentOutcome run_state_learning(const ExperimentConfig& config) {
  config.validate();
  ExperimentOutcome outcome;
  OutputDir out(config.output_dir, outcome);
  const int k = window_qubits(config);

  CsvTable summary{{"n_reps", "run", "iterations", "final_fidelity", "final_loss",
                    "converged"},
                   {}};
  std::vector<std::vector<int>> converged_by_n(4);
  for (int run = 0; run < config.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(config.seed, run);
    const FilterState target =
        config.target_source == "random"
            ? build_filter_state(random_filter_params(k, config.target_reps,
                                                      derive_seed(run_seed, 1)))
            : filter_from_vector(resolve_vector(config.target_source,
                                                std::size_t{1} << k, k, run_seed,
                                                outcome.warnings));
    for (int n = 1; n <= 3; ++n) {
      TrainingConfig tc;
      tc.n_reps = n;
      tc.learning_rate = config.learning_rate;
      tc.max_iters = config.max_iters;
      tc.seed = derive_seed(run_seed, 2);
      tc.target_fidelity = config.target_fidelity;
      tc.mode = config.shots == 0
                    ? SamplingMode::exact()
                    : SamplingMode::sampled(config.shots, derive_seed(run_seed, 3));
      tc.shift = config.shift;
      const TrainingTrajectory traj = train_filter(target, tc);

      CsvTable t{{"iter", "fidelity", "loss"}, {}};
      for (const auto& s : traj.steps) {
        t.rows.push_back(
            {std::to_string(s.iter), format_real(s.fidelity), format_real(s.loss)});
      }
      char name[64];
      std::snprintf(name, sizeof name, "trajectory_n%d_run%02d.csv", n, run);
      out.table(name, t);
      summary.rows.push_back({std::to_string(n), std::to_string(run),
                              std::to_string(traj.last().iter),
                              format_real(traj.last().fidelity),
                              format_real(traj.last().loss),
                              traj.converged ? "1" : "0"});
      converged_by_n[n].push_back(traj.converged);
    }
  }
  out.table("summary.csv", summary);

  std::ostringstream text;
  text << "experiment: train-filter\n"
       << "qubits: " << k << '\n'
       << "runs: " << config.runs << '\n'
       << "learning_rate: " << format_real(config.learning_rate) << '\n'
       << "max_iters: " << config.max_iters << '\n'
       << "target_fidelity: " << format_real(config.target_fidelity) << '\n'
       << "shots: " << shots_label(config.shots) << '\n'
       << "seed: " << config.seed << '\n';
  for (int n = 1; n <= 3; ++n) {
    const auto& c = converged_by_n[n];
    text << "converged_n" << n << ": " << std::count(c.begin(), c.end(), 1)
         << '/' << c.size() << '\n';
  }
  outcome.summary = text.str();
  out.text("summary.txt", outcome.summary);
  return outcome;
}

// ---------------------------------------------------------------------------
// Gradient check

ExperimentOutcome run_gradcheck(const ExperimentConfig& config) {
  config.validate();
  ExperimentOutcome outcome;
  OutputDir out(config.output_dir, outcome);
  const int k = window_qubits(config);

  CsvTable rows{{"n_reps", "run", "index", "param_shift", "finite_diff", "abs_error"},
                {}};
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int run = 0; run < config.runs; ++run) {
      const std::uint64_t s = derive_seed(derive_seed(config.seed, n), run);
      const FilterParams params = random_filter_params(k, n, derive_seed(s, 1));
      const StateVector data = StateVector::from_real(
          random_real_filter(k, 2, derive_seed(s, 2)));
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double ps = param_shift_grad(params, i, data, SamplingMode::exact(),
                                           config.shift);
        const double fd = finite_diff_grad(params, i, data, config.fd_epsilon);
        worst = std::max(worst, std::abs(ps - fd));
        rows.rows.push_back({std::to_string(n), std::to_string(run),
                             std::to_string(i), format_real(ps), format_real(fd),
                             format_real(std::abs(ps - fd))});
      }
    }
  }
  out.table("gradcheck.csv", rows);
  std::ostringstream text;
  text << "experiment: gradcheck\n"
       << "qubits: " << k << '\n'
       << "runs: " << config.runs << '\n'
       << "fd_epsilon: " << format_real(config.fd_epsilon) << '\n'
       << "max_abs_error: " << format_real(worst) << '\n';
  outcome.summary = text.str();
  out.text("summary.txt", outcome.summary);
  return outcome;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::kForward:
      return run_forward_experiment(config).outcome;
    case ExperimentKind::kBackpropValidate:
      return run_backprop_validation(config);
    case ExperimentKind::kTrainFilter:
      return run_state_learning(config);
    case ExperimentKind::kGradcheck:
      return run_gradcheck(config);
  }
  fail(ErrorCode::kInvariant, "unhandled experiment kind");
}

}  // namespace qucnn
