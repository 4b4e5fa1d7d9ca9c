/*
 * Copyright 2026 The QuCNN Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface to the QuCNN simulator.
 *
 * Objects are opaque handles created by qucnn_*_create functions and released
 * with the matching *_destroy function (NULL is accepted). Every fallible
 * call returns a qucnn_status; on failure qucnn_last_error() returns a
 * message for the calling thread, valid until its next failing call.
 *
 * Qubit q is bit q of a basis index. Amplitude buffers are interleaved
 * (re, im) pairs. In every call taking `shots`, 0 requests exact
 * probabilities; otherwise `seed` makes the sample reproducible.
 */

#ifndef QUCNN_QUCNN_H_
#define QUCNN_QUCNN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef QUCNN_BUILDING_LIBRARY
#    define QUCNN_API __declspec(dllexport)
#  else
#    define QUCNN_API __declspec(dllimport)
#  endif
#else
#  define QUCNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qucnn_status {
  QUCNN_OK = 0,
  QUCNN_ERROR_INVALID_ARGUMENT = 1,
  QUCNN_ERROR_OUT_OF_RANGE = 2,
  QUCNN_ERROR_DIMENSION_MISMATCH = 3,
  QUCNN_ERROR_NOT_UNITARY = 4,
  QUCNN_ERROR_CONFIG = 5,
  QUCNN_ERROR_DATA = 6,
  QUCNN_ERROR_IO = 7,
  QUCNN_ERROR_INVARIANT = 8,
  QUCNN_ERROR_INTERNAL = 9
} qucnn_status;

typedef struct qucnn_state qucnn_state;
typedef struct qucnn_filter qucnn_filter;
typedef struct qucnn_image qucnn_image;
typedef struct qucnn_image_set qucnn_image_set;
typedef struct qucnn_feature_map qucnn_feature_map;
typedef struct qucnn_config qucnn_config;
typedef struct qucnn_outcome qucnn_outcome;

typedef struct qucnn_measurement {
  int64_t shots;      /* 0 for exact results */
  int64_t zero_count;
  double exact_p0;
} qucnn_measurement;

typedef struct qucnn_feature_cell {
  double p0;
  double similarity; /* 2 p0 - 1, clamped to [0, 1] when sampled */
  int degenerate;
  int64_t shots_used;
} qucnn_feature_cell;

QUCNN_API const char* qucnn_version(void);
QUCNN_API const char* qucnn_status_string(qucnn_status status);
QUCNN_API const char* qucnn_last_error(void);

/* ---- statevector ------------------------------------------------------ */

QUCNN_API qucnn_status qucnn_state_create(int num_qubits, qucnn_state** out);
/* `values` holds 2 * 2^n doubles; must have unit norm within 1e-10. */
QUCNN_API qucnn_status qucnn_state_create_from(const double* values,
                                               size_t count, qucnn_state** out);
QUCNN_API qucnn_status qucnn_state_clone(const qucnn_state* state,
                                         qucnn_state** out);
QUCNN_API void qucnn_state_destroy(qucnn_state* state);
QUCNN_API int qucnn_state_num_qubits(const qucnn_state* state);
/* Copies 2 * 2^n doubles into `values`; `count` must be at least that. */
QUCNN_API qucnn_status qucnn_state_amplitudes(const qucnn_state* state,
                                              double* values, size_t count);

QUCNN_API qucnn_status qucnn_state_apply_ry(qucnn_state* state, int qubit,
                                            double theta);
QUCNN_API qucnn_status qucnn_state_apply_rz(qucnn_state* state, int qubit,
                                            double theta);
QUCNN_API qucnn_status qucnn_state_apply_h(qucnn_state* state, int qubit);
QUCNN_API qucnn_status qucnn_state_apply_cnot(qucnn_state* state, int control,
                                              int target);
QUCNN_API qucnn_status qucnn_state_apply_cswap(qucnn_state* state, int control,
                                               int a, int b);
/* `matrix` is row-major interleaved complex, dim = 2^num_targets. */
QUCNN_API qucnn_status qucnn_state_apply_unitary(qucnn_state* state,
                                                 const int* targets,
                                                 size_t num_targets,
                                                 const double* matrix);

QUCNN_API qucnn_status qucnn_state_prob_zero(const qucnn_state* state,
                                             int qubit, double* out);
QUCNN_API qucnn_status qucnn_state_sample(const qucnn_state* state, int qubit,
                                          int64_t shots, uint64_t seed,
                                          qucnn_measurement* out);
QUCNN_API qucnn_status qucnn_fidelity(const qucnn_state* a,
                                      const qucnn_state* b, double* out);

/* ---- filters and SWAP test ------------------------------------------- */

/* `thetas` is indexed ((rep * 2 + layer) * num_qubits + qubit), layer 0 = RY,
 * layer 1 = RZ. */
QUCNN_API qucnn_status qucnn_filter_create_ansatz(int num_qubits, int n_reps,
                                                  const double* thetas,
                                                  size_t count,
                                                  qucnn_filter** out);
/* Ideal filter prepared from a real unit vector of length 2^k. */
QUCNN_API qucnn_status qucnn_filter_create_ideal(const double* unit_vector,
                                                 size_t length,
                                                 qucnn_filter** out);
QUCNN_API void qucnn_filter_destroy(qucnn_filter* filter);
QUCNN_API qucnn_status qucnn_filter_state(const qucnn_filter* filter,
                                          qucnn_state** out);

QUCNN_API qucnn_status qucnn_swap_test(const qucnn_state* a,
                                       const qucnn_state* b, int64_t shots,
                                       uint64_t seed, qucnn_measurement* out);

/* Amplitude-encodes a real vector (zero vectors become |0...0>). */
QUCNN_API qucnn_status qucnn_encode_vector(const double* values, size_t count,
                                           qucnn_state** out, int* degenerate);

/* ---- images and convolution ------------------------------------------ */

QUCNN_API qucnn_status qucnn_image_create(int height, int width,
                                          const double* pixels,
                                          qucnn_image** out);
QUCNN_API void qucnn_image_destroy(qucnn_image* image);

QUCNN_API qucnn_status qucnn_mnist_load(const char* path, size_t count,
                                        qucnn_image_set** out);
QUCNN_API void qucnn_image_set_destroy(qucnn_image_set* set);
QUCNN_API size_t qucnn_image_set_size(const qucnn_image_set* set);
/* Borrowed pointer, valid while `set` lives. */
QUCNN_API const qucnn_image* qucnn_image_set_get(const qucnn_image_set* set,
                                                 size_t index);

QUCNN_API qucnn_status qucnn_conv_forward(const qucnn_image* image,
                                          const qucnn_filter* filter, int hh,
                                          int ww, int stride, int64_t shots,
                                          uint64_t seed, int threads,
                                          qucnn_feature_map** out);
QUCNN_API void qucnn_feature_map_destroy(qucnn_feature_map* map);
QUCNN_API void qucnn_feature_map_shape(const qucnn_feature_map* map, int* rows,
                                       int* cols);
QUCNN_API qucnn_status qucnn_feature_map_cell(const qucnn_feature_map* map,
                                              int row, int col,
                                              qucnn_feature_cell* out);

/* ---- gradients -------------------------------------------------------- */

QUCNN_API qucnn_status qucnn_theta_beta(double dl_do, double* theta_beta,
                                        double* beta_sq);
QUCNN_API qucnn_status qucnn_param_shift_grad(const qucnn_filter* filter,
                                              size_t index,
                                              const qucnn_state* data,
                                              int64_t shots, uint64_t seed,
                                              double* out);
QUCNN_API qucnn_status qucnn_entangled_grad(double dl_do,
                                            const qucnn_filter* filter,
                                            size_t index,
                                            const qucnn_state* data,
                                            int64_t shots, uint64_t seed,
                                            double* out);
QUCNN_API qucnn_status qucnn_finite_diff_grad(const qucnn_filter* filter,
                                              size_t index,
                                              const qucnn_state* data,
                                              double epsilon, double* out);
QUCNN_API qucnn_status qucnn_ancilla_scaled_probability(
    const qucnn_state* filter, const qucnn_state* data, double dl_do,
    int64_t shots, uint64_t seed, qucnn_measurement* out);

/* ---- experiments ------------------------------------------------------ */

/* Default configuration for an experiment ("forward", "backprop-validate",
 * "train-filter", "gradcheck"). */
QUCNN_API qucnn_status qucnn_config_create(const char* experiment,
                                           qucnn_config** out);
/* JSON configuration file. */
QUCNN_API qucnn_status qucnn_config_load(const char* path, qucnn_config** out);
QUCNN_API void qucnn_config_destroy(qucnn_config* config);
/* Overrides one key; `value` is read as JSON when it parses, else a string. */
QUCNN_API qucnn_status qucnn_config_set(qucnn_config* config, const char* key,
                                        const char* value);
/* Borrowed JSON text of the full configuration. */
QUCNN_API const char* qucnn_config_json(const qucnn_config* config);

QUCNN_API qucnn_status qucnn_experiment_run(const qucnn_config* config,
                                            qucnn_outcome** out);
QUCNN_API void qucnn_outcome_destroy(qucnn_outcome* outcome);
QUCNN_API const char* qucnn_outcome_summary(const qucnn_outcome* outcome);
QUCNN_API size_t qucnn_outcome_file_count(const qucnn_outcome* outcome);
QUCNN_API const char* qucnn_outcome_file(const qucnn_outcome* outcome,
                                         size_t index);
QUCNN_API size_t qucnn_outcome_warning_count(const qucnn_outcome* outcome);
QUCNN_API const char* qucnn_outcome_warning(const qucnn_outcome* outcome,
                                            size_t index);

#ifdef __cplusplus
}
#endif

#endif /* QUCNN_QUCNN_H_ */
