// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/qucnn.h"

#include <bit>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "qucnn/conv_layer.hpp"
#include "qucnn/encoding.hpp"
#include "qucnn/error.hpp"
#include "qucnn/experiment.hpp"
#include "qucnn/gradient.hpp"
#include "qucnn/io.hpp"
#include "qucnn/statevector.hpp"

struct qucnn_state {
  qucnn::StateVector value;
};

struct qucnn_filter {
  qucnn::FilterState value;
};

struct qucnn_image {
  qucnn::ImageGrid value;
};

struct qucnn_image_set {
  std::vector<qucnn_image> images;
};

struct qucnn_feature_map {
  qucnn::FeatureMap value;
};

struct qucnn_config {
  qucnn::ExperimentConfig value;
  std::string json;
};

struct qucnn_outcome {
  qucnn::ExperimentOutcome value;
  std::vector<std::string> files;
};

namespace {

thread_local std::string g_last_error;

qucnn_status to_status(qucnn::ErrorCode code) {
  using qucnn::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return QUCNN_ERROR_INVALID_ARGUMENT;
    case ErrorCode::kOutOfRange:
      return QUCNN_ERROR_OUT_OF_RANGE;
    case ErrorCode::kDimensionMismatch:
      return QUCNN_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::kNotUnitary:
      return QUCNN_ERROR_NOT_UNITARY;
    case ErrorCode::kConfig:
      return QUCNN_ERROR_CONFIG;
    case ErrorCode::kData:
      return QUCNN_ERROR_DATA;
    case ErrorCode::kIo:
      return QUCNN_ERROR_IO;
    case ErrorCode::kInvariant:
      return QUCNN_ERROR_INVARIANT;
  }
  return QUCNN_ERROR_INTERNAL;
}

qucnn_status set_error(qucnn_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
qucnn_status guarded(Fn&& fn) {
  try {
    fn();
    return QUCNN_OK;
  } catch (const qucnn::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(QUCNN_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(QUCNN_ERROR_INTERNAL, e.what());
  } catch (...) {
    return set_error(QUCNN_ERROR_INTERNAL, "unknown error");
  }
}

#define QUCNN_REQUIRE(cond)                                               \
  do {                                                                    \
    if (!(cond)) {                                                        \
      return set_error(QUCNN_ERROR_INVALID_ARGUMENT,                      \
                       "null or invalid argument: " #cond);               \
    }                                                                     \
  } while (0)

qucnn::SamplingMode mode_of(int64_t shots, uint64_t seed) {
  if (shots < 0) {
    qucnn::fail(qucnn::ErrorCode::kInvalidArgument, "shots must be >= 0");
  }
  return shots == 0 ? qucnn::SamplingMode::exact()
                    : qucnn::SamplingMode::sampled(shots, seed);
}

void copy_measurement(const qucnn::MeasurementResult& r,
                      qucnn_measurement* out) {
  out->shots = r.shots;
  out->zero_count = r.zero_count;
  out->exact_p0 = r.exact_p0;
}

std::vector<qucnn::Complex> complex_from(const double* values, size_t pairs) {
  std::vector<qucnn::Complex> c(pairs);
  for (size_t i = 0; i < pairs; ++i) c[i] = {values[2 * i], values[2 * i + 1]};
  return c;
}

const qucnn::FilterParams& ansatz_of(const qucnn_filter* f) {
  const auto* p = std::get_if<qucnn::FilterParams>(&f->value.source());
  if (p == nullptr) {
    qucnn::fail(qucnn::ErrorCode::kInvalidArgument,
                "gradients need an ansatz filter");
  }
  return *p;
}

template <typename T>
T* adopt(T value) {
  return new T(std::move(value));
}

}  // namespace

extern "C" {

const char* qucnn_version(void) { return "1.0.0"; }

const char* qucnn_status_string(qucnn_status status) {
  switch (status) {
    case QUCNN_OK:
      return "ok";
    case QUCNN_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case QUCNN_ERROR_OUT_OF_RANGE:
      return "out of range";
    case QUCNN_ERROR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case QUCNN_ERROR_NOT_UNITARY:
      return "not unitary";
    case QUCNN_ERROR_CONFIG:
      return "configuration error";
    case QUCNN_ERROR_DATA:
      return "data error";
    case QUCNN_ERROR_IO:
      return "I/O error";
    case QUCNN_ERROR_INVARIANT:
      return "invariant violation";
    case QUCNN_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* qucnn_last_error(void) { return g_last_error.c_str(); }

// ---- statevector ---------------------------------------------------------

qucnn_status qucnn_state_create(int num_qubits, qucnn_state** out) {
  QUCNN_REQUIRE(out);
  return guarded([&] { *out = adopt(qucnn_state{qucnn::StateVector(num_qubits)}); });
}

qucnn_status qucnn_state_create_from(const double* values, size_t count,
                                     qucnn_state** out) {
  QUCNN_REQUIRE(values && out && count % 2 == 0);
  return guarded([&] {
    *out = adopt(qucnn_state{
        qucnn::StateVector::from_amplitudes(complex_from(values, count / 2))});
  });
}

qucnn_status qucnn_state_clone(const qucnn_state* state, qucnn_state** out) {
  QUCNN_REQUIRE(state && out);
  return guarded([&] { *out = adopt(qucnn_state{state->value}); });
}

void qucnn_state_destroy(qucnn_state* state) { delete state; }

int qucnn_state_num_qubits(const qucnn_state* state) {
  return state ? state->value.num_qubits() : 0;
}

qucnn_status qucnn_state_amplitudes(const qucnn_state* state, double* values,
                                    size_t count) {
  QUCNN_REQUIRE(state && values);
  const auto amps = state->value.amplitudes();
  if (count < 2 * amps.size()) {
    return set_error(QUCNN_ERROR_DIMENSION_MISMATCH,
                     "buffer too small for the amplitudes");
  }
  for (size_t i = 0; i < amps.size(); ++i) {
    values[2 * i] = amps[i].real();
    values[2 * i + 1] = amps[i].imag();
  }
  return QUCNN_OK;
}

qucnn_status qucnn_state_apply_ry(qucnn_state* state, int qubit, double theta) {
  QUCNN_REQUIRE(state);
  return guarded([&] { state->value.apply_ry(qubit, theta); });
}

qucnn_status qucnn_state_apply_rz(qucnn_state* state, int qubit, double theta) {
  QUCNN_REQUIRE(state);
  return guarded([&] { state->value.apply_rz(qubit, theta); });
}

qucnn_status qucnn_state_apply_h(qucnn_state* state, int qubit) {
  QUCNN_REQUIRE(state);
  return guarded([&] { state->value.apply_h(qubit); });
}

qucnn_status qucnn_state_apply_cnot(qucnn_state* state, int control,
                                    int target) {
  QUCNN_REQUIRE(state);
  return guarded([&] { state->value.apply_cnot(control, target); });
}

qucnn_status qucnn_state_apply_cswap(qucnn_state* state, int control, int a,
                                     int b) {
  QUCNN_REQUIRE(state);
  return guarded([&] { state->value.apply_cswap(control, a, b); });
}

qucnn_status qucnn_state_apply_unitary(qucnn_state* state, const int* targets,
                                       size_t num_targets,
                                       const double* matrix) {
  QUCNN_REQUIRE(state && targets && matrix && num_targets > 0 &&
                num_targets <= 12);
  return guarded([&] {
    const size_t dim = size_t{1} << num_targets;
    qucnn::UnitaryMatrix u(dim, complex_from(matrix, dim * dim));
    state->value.apply_unitary(std::span<const int>(targets, num_targets), u);
  });
}

qucnn_status qucnn_state_prob_zero(const qucnn_state* state, int qubit,
                                   double* out) {
  QUCNN_REQUIRE(state && out);
  return guarded([&] { *out = state->value.prob_zero(qubit); });
}

qucnn_status qucnn_state_sample(const qucnn_state* state, int qubit,
                                int64_t shots, uint64_t seed,
                                qucnn_measurement* out) {
  QUCNN_REQUIRE(state && out);
  return guarded([&] {
    copy_measurement(qucnn::sample_measure(state->value, qubit, shots, seed),
                     out);
  });
}

qucnn_status qucnn_fidelity(const qucnn_state* a, const qucnn_state* b,
                            double* out) {
  QUCNN_REQUIRE(a && b && out);
  return guarded([&] { *out = qucnn::fidelity(a->value, b->value); });
}

// ---- filters and SWAP test ---------------------------------------------

qucnn_status qucnn_filter_create_ansatz(int num_qubits, int n_reps,
                                        const double* thetas, size_t count,
                                        qucnn_filter** out) {
  QUCNN_REQUIRE(out && (thetas || count == 0));
  return guarded([&] {
    qucnn::FilterParams p(num_qubits, n_reps,
                          std::vector<double>(thetas, thetas + count));
    *out = adopt(qucnn_filter{qucnn::build_filter_state(p)});
  });
}

qucnn_status qucnn_filter_create_ideal(const double* unit_vector, size_t length,
                                       qucnn_filter** out) {
  QUCNN_REQUIRE(unit_vector && out);
  return guarded([&] {
    *out = adopt(qucnn_filter{qucnn::filter_from_vector(
        std::vector<double>(unit_vector, unit_vector + length))});
  });
}

void qucnn_filter_destroy(qucnn_filter* filter) { delete filter; }

qucnn_status qucnn_filter_state(const qucnn_filter* filter, qucnn_state** out) {
  QUCNN_REQUIRE(filter && out);
  return guarded([&] { *out = adopt(qucnn_state{filter->value.realized()}); });
}

qucnn_status qucnn_swap_test(const qucnn_state* a, const qucnn_state* b,
                             int64_t shots, uint64_t seed,
                             qucnn_measurement* out) {
  QUCNN_REQUIRE(a && b && out);
  return guarded([&] {
    copy_measurement(qucnn::swap_test(a->value, b->value, mode_of(shots, seed)),
                     out);
  });
}

qucnn_status qucnn_encode_vector(const double* values, size_t count,
                                 qucnn_state** out, int* degenerate) {
  QUCNN_REQUIRE(values && out);
  return guarded([&] {
    qucnn::Patch p;
    p.values.assign(values, values + count);
    qucnn::EncodedPatch e = qucnn::encode_patch(std::move(p));
    if (degenerate) *degenerate = e.source.degenerate ? 1 : 0;
    *out = adopt(qucnn_state{std::move(e.state)});
  });
}

// ---- images and convolution --------------------------------------------

qucnn_status qucnn_image_create(int height, int width, const double* pixels,
                                qucnn_image** out) {
  QUCNN_REQUIRE(pixels && out && height > 0 && width > 0);
  return guarded([&] {
    const size_t n = static_cast<size_t>(height) * static_cast<size_t>(width);
    *out = adopt(qucnn_image{
        qucnn::ImageGrid(height, width, std::vector<double>(pixels, pixels + n))});
  });
}

void qucnn_image_destroy(qucnn_image* image) { delete image; }

qucnn_status qucnn_mnist_load(const char* path, size_t count,
                              qucnn_image_set** out) {
  QUCNN_REQUIRE(path && out);
  return guarded([&] {
    qucnn::MnistSet set = qucnn::load_mnist(path, count);
    auto result = std::make_unique<qucnn_image_set>();
    for (auto& img : set.images) result->images.push_back({std::move(img)});
    *out = result.release();
  });
}

void qucnn_image_set_destroy(qucnn_image_set* set) { delete set; }

size_t qucnn_image_set_size(const qucnn_image_set* set) {
  return set ? set->images.size() : 0;
}

const qucnn_image* qucnn_image_set_get(const qucnn_image_set* set,
                                       size_t index) {
  if (!set || index >= set->images.size()) return nullptr;
  return &set->images[index];
}

qucnn_status qucnn_conv_forward(const qucnn_image* image,
                                const qucnn_filter* filter, int hh, int ww,
                                int stride, int64_t shots, uint64_t seed,
                                int threads, qucnn_feature_map** out) {
  QUCNN_REQUIRE(image && filter && out);
  return guarded([&] {
    qucnn::ConvOptions opts{{hh, ww, stride}, mode_of(shots, seed), threads};
    *out = adopt(qucnn_feature_map{
        qucnn::conv_forward(image->value, filter->value, opts)});
  });
}

void qucnn_feature_map_destroy(qucnn_feature_map* map) { delete map; }

void qucnn_feature_map_shape(const qucnn_feature_map* map, int* rows,
                             int* cols) {
  if (rows) *rows = map ? map->value.rows : 0;
  if (cols) *cols = map ? map->value.cols : 0;
}

qucnn_status qucnn_feature_map_cell(const qucnn_feature_map* map, int row,
                                    int col, qucnn_feature_cell* out) {
  QUCNN_REQUIRE(map && out);
  if (row < 0 || col < 0 || row >= map->value.rows || col >= map->value.cols) {
    return set_error(QUCNN_ERROR_OUT_OF_RANGE, "feature map cell out of range");
  }
  const auto& c = map->value.at(row, col);
  out->p0 = c.p0;
  out->similarity = c.similarity;
  out->degenerate = c.degenerate ? 1 : 0;
  out->shots_used = c.shots_used;
  return QUCNN_OK;
}

// ---- gradients ----------------------------------------------------------

qucnn_status qucnn_theta_beta(double dl_do, double* theta_beta,
                              double* beta_sq) {
  QUCNN_REQUIRE(theta_beta);
  return guarded([&] {
    const auto a = qucnn::theta_beta(dl_do);
    *theta_beta = a.theta_beta;
    if (beta_sq) *beta_sq = a.beta_sq;
  });
}

qucnn_status qucnn_param_shift_grad(const qucnn_filter* filter, size_t index,
                                    const qucnn_state* data, int64_t shots,
                                    uint64_t seed, double* out) {
  QUCNN_REQUIRE(filter && data && out);
  return guarded([&] {
    *out = qucnn::param_shift_grad(ansatz_of(filter), index, data->value,
                                   mode_of(shots, seed));
  });
}

qucnn_status qucnn_entangled_grad(double dl_do, const qucnn_filter* filter,
                                  size_t index, const qucnn_state* data,
                                  int64_t shots, uint64_t seed, double* out) {
  QUCNN_REQUIRE(filter && data && out);
  return guarded([&] {
    *out = qucnn::entangled_grad(dl_do, ansatz_of(filter), index, data->value,
                                 mode_of(shots, seed));
  });
}

qucnn_status qucnn_finite_diff_grad(const qucnn_filter* filter, size_t index,
                                    const qucnn_state* data, double epsilon,
                                    double* out) {
  QUCNN_REQUIRE(filter && data && out);
  return guarded([&] {
    *out = qucnn::finite_diff_grad(ansatz_of(filter), index, data->value,
                                   epsilon);
  });
}

qucnn_status qucnn_ancilla_scaled_probability(const qucnn_state* filter,
                                              const qucnn_state* data,
                                              double dl_do, int64_t shots,
                                              uint64_t seed,
                                              qucnn_measurement* out) {
  QUCNN_REQUIRE(filter && data && out);
  return guarded([&] {
    copy_measurement(
        qucnn::ancilla_scaled_probability(filter->value, data->value,
                                          qucnn::theta_beta(dl_do),
                                          mode_of(shots, seed)),
        out);
  });
}

// ---- experiments ----------------------------------------------------------

qucnn_status qucnn_config_create(const char* experiment, qucnn_config** out) {
  QUCNN_REQUIRE(experiment && out);
  return guarded([&] {
    qucnn::ExperimentConfig c;
    c.experiment = qucnn::experiment_kind_from_string(experiment);
    *out = adopt(qucnn_config{c, qucnn::config_to_json(c)});
  });
}

qucnn_status qucnn_config_load(const char* path, qucnn_config** out) {
  QUCNN_REQUIRE(path && out);
  return guarded([&] {
    qucnn::ExperimentConfig c = qucnn::load_config(path);
    *out = adopt(qucnn_config{c, qucnn::config_to_json(c)});
  });
}

void qucnn_config_destroy(qucnn_config* config) { delete config; }

qucnn_status qucnn_config_set(qucnn_config* config, const char* key,
                              const char* value) {
  QUCNN_REQUIRE(config && key && value);
  return guarded([&] {
    config->value = qucnn::with_override(config->value, key, value);
    config->json = qucnn::config_to_json(config->value);
  });
}

const char* qucnn_config_json(const qucnn_config* config) {
  return config ? config->json.c_str() : "";
}

qucnn_status qucnn_experiment_run(const qucnn_config* config,
                                  qucnn_outcome** out) {
  QUCNN_REQUIRE(config && out);
  return guarded([&] {
    auto result = std::make_unique<qucnn_outcome>();
    result->value = qucnn::run_experiment(config->value);
    for (const auto& f : result->value.files) result->files.push_back(f.string());
    *out = result.release();
  });
}

void qucnn_outcome_destroy(qucnn_outcome* outcome) { delete outcome; }

const char* qucnn_outcome_summary(const qucnn_outcome* outcome) {
  return outcome ? outcome->value.summary.c_str() : "";
}

size_t qucnn_outcome_file_count(const qucnn_outcome* outcome) {
  return outcome ? outcome->files.size() : 0;
}

const char* qucnn_outcome_file(const qucnn_outcome* outcome, size_t index) {
  if (!outcome || index >= outcome->files.size()) return nullptr;
  return outcome->files[index].c_str();
}

size_t qucnn_outcome_warning_count(const qucnn_outcome* outcome) {
  return outcome ? outcome->value.warnings.size() : 0;
}

const char* qucnn_outcome_warning(const qucnn_outcome* outcome, size_t index) {
  if (!outcome || index >= outcome->value.warnings.size()) return nullptr;
  return outcome->value.warnings[index].c_str();
}

}  // extern "C"
