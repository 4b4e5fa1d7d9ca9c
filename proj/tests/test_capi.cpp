// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "qucnn/qucnn.h"

namespace {

const std::string kFixture = std::string(QUCNN_TEST_DATA_DIR) + "/mnist16-images-idx3-ubyte";

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(qucnn_version()) > 0);
  CHECK(std::string(qucnn_status_string(QUCNN_OK)) == "ok");
  CHECK(std::strlen(qucnn_status_string(QUCNN_ERROR_DATA)) > 0);
}

TEST_CASE("state lifecycle and gates") {
  qucnn_state* s = nullptr;
  REQUIRE(qucnn_state_create(2, &s) == QUCNN_OK);
  CHECK(qucnn_state_num_qubits(s) == 2);
  CHECK(qucnn_state_apply_h(s, 0) == QUCNN_OK);
  CHECK(qucnn_state_apply_cnot(s, 0, 1) == QUCNN_OK);
  std::vector<double> amp(8);
  REQUIRE(qucnn_state_amplitudes(s, amp.data(), amp.size()) == QUCNN_OK);
  const double r = 1 / std::sqrt(2.0);
  CHECK(amp[0] == doctest::Approx(r));
  CHECK(amp[6] == doctest::Approx(r));
  CHECK(qucnn_state_amplitudes(s, amp.data(), 4) == QUCNN_ERROR_DIMENSION_MISMATCH);

  double p = 0;
  CHECK(qucnn_state_prob_zero(s, 1, &p) == QUCNN_OK);
  CHECK(p == doctest::Approx(0.5));
  CHECK(qucnn_state_apply_ry(s, 5, 0.1) == QUCNN_ERROR_OUT_OF_RANGE);
  CHECK(std::strlen(qucnn_last_error()) > 0);
  CHECK(qucnn_state_apply_cnot(s, 1, 1) == QUCNN_ERROR_INVALID_ARGUMENT);

  qucnn_state* c = nullptr;
  REQUIRE(qucnn_state_clone(s, &c) == QUCNN_OK);
  double f = 0;
  CHECK(qucnn_fidelity(s, c, &f) == QUCNN_OK);
  CHECK(f == doctest::Approx(1.0));
  qucnn_state_destroy(c);
  qucnn_state_destroy(s);
  qucnn_state_destroy(nullptr);

  CHECK(qucnn_state_create(0, &s) == QUCNN_ERROR_OUT_OF_RANGE);
  CHECK(qucnn_state_create(2, nullptr) == QUCNN_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("create_from, unitary and sampling") {
  const double v[4] = {0.6, 0.0, 0.8, 0.0};
  qucnn_state* s = nullptr;
  REQUIRE(qucnn_state_create_from(v, 4, &s) == QUCNN_OK);
  const double bad[4] = {1.0, 0.0, 1.0, 0.0};
  qucnn_state* t = nullptr;
  CHECK(qucnn_state_create_from(bad, 4, &t) == QUCNN_ERROR_INVALID_ARGUMENT);

  const double x[8] = {0, 0, 1, 0, 1, 0, 0, 0};
  const int target = 0;
  CHECK(qucnn_state_apply_unitary(s, &target, 1, x) == QUCNN_OK);
  double p = 0;
  qucnn_state_prob_zero(s, 0, &p);
  CHECK(p == doctest::Approx(0.64));
  const double notu[8] = {1, 0, 1, 0, 0, 0, 1, 0};
  CHECK(qucnn_state_apply_unitary(s, &target, 1, notu) == QUCNN_ERROR_NOT_UNITARY);

  qucnn_state* q = nullptr;
  qucnn_state_create(1, &q);
  qucnn_state_apply_ry(q, 0, std::numbers::pi / 3);
  qucnn_measurement m{};
  REQUIRE(qucnn_state_sample(q, 0, 10000, 20230101, &m) == QUCNN_OK);
  CHECK(m.zero_count == 7534);
  CHECK(m.shots == 10000);
  qucnn_state_destroy(q);
  qucnn_state_destroy(s);
}

TEST_CASE("filters, SWAP test and gradients") {
  const double w[4] = {0.5, 0.5, 0.5, 0.5};
  qucnn_filter* ideal = nullptr;
  REQUIRE(qucnn_filter_create_ideal(w, 4, &ideal) == QUCNN_OK);
  qucnn_state* fs = nullptr;
  REQUIRE(qucnn_filter_state(ideal, &fs) == QUCNN_OK);

  qucnn_state* data = nullptr;
  int degenerate = -1;
  REQUIRE(qucnn_encode_vector(w, 4, &data, &degenerate) == QUCNN_OK);
  CHECK(degenerate == 0);
  qucnn_measurement m{};
  REQUIRE(qucnn_swap_test(fs, data, 0, 0, &m) == QUCNN_OK);
  CHECK(m.exact_p0 == doctest::Approx(1.0));
  qucnn_state_destroy(data);

  const double thetas[2] = {std::numbers::pi / 2, 0.0};
  qucnn_filter* ry = nullptr;
  REQUIRE(qucnn_filter_create_ansatz(1, 1, thetas, 2, &ry) == QUCNN_OK);
  CHECK(qucnn_filter_create_ansatz(1, 1, thetas, 3, &ry) == QUCNN_ERROR_INVALID_ARGUMENT);
  qucnn_state* zero = nullptr;
  qucnn_state_create(1, &zero);
  double g = 0;
  CHECK(qucnn_param_shift_grad(ry, 0, zero, 0, 0, &g) == QUCNN_OK);
  CHECK(g == doctest::Approx(-0.25));
  CHECK(qucnn_entangled_grad(0.3, ry, 0, zero, 0, 0, &g) == QUCNN_OK);
  CHECK(g == doctest::Approx(-0.075));
  CHECK(qucnn_finite_diff_grad(ry, 0, zero, 1e-6, &g) == QUCNN_OK);
  CHECK(g == doctest::Approx(-0.25).epsilon(1e-8));
  CHECK(qucnn_entangled_grad(0.9, ry, 0, zero, 0, 0, &g) == QUCNN_ERROR_OUT_OF_RANGE);
  CHECK(qucnn_param_shift_grad(ry, 0, fs, 0, 0, &g) == QUCNN_ERROR_DIMENSION_MISMATCH);

  double tb = 0, bsq = 0;
  CHECK(qucnn_theta_beta(0.0, &tb, &bsq) == QUCNN_OK);
  CHECK(tb == doctest::Approx(std::numbers::pi / 2));
  CHECK(bsq == doctest::Approx(0.5));

  CHECK(qucnn_ancilla_scaled_probability(fs, fs, 0.3, 0, 0, &m) == QUCNN_OK);
  CHECK(m.exact_p0 == doctest::Approx(0.8));

  qucnn_state_destroy(zero);
  qucnn_state_destroy(fs);
  qucnn_filter_destroy(ry);
  qucnn_filter_destroy(ideal);
}

TEST_CASE("MNIST and convolution") {
  qucnn_image_set* set = nullptr;
  REQUIRE(qucnn_mnist_load(kFixture.c_str(), 2, &set) == QUCNN_OK);
  CHECK(qucnn_image_set_size(set) == 2);
  CHECK(qucnn_image_set_get(set, 2) == nullptr);

  std::vector<double> w(16, 0.25);
  qucnn_filter* f = nullptr;
  REQUIRE(qucnn_filter_create_ideal(w.data(), w.size(), &f) == QUCNN_OK);
  qucnn_feature_map* map = nullptr;
  REQUIRE(qucnn_conv_forward(qucnn_image_set_get(set, 1), f, 4, 4, 1, 0, 0, 2, &map) ==
          QUCNN_OK);
  int rows = 0, cols = 0;
  qucnn_feature_map_shape(map, &rows, &cols);
  CHECK(rows == 25);
  CHECK(cols == 25);
  qucnn_feature_cell cell{};
  REQUIRE(qucnn_feature_map_cell(map, 0, 0, &cell) == QUCNN_OK);
  CHECK(cell.degenerate == 1);
  CHECK(cell.p0 == doctest::Approx(0.5 + 0.5 * 0.0625));
  CHECK(qucnn_feature_map_cell(map, 25, 0, &cell) == QUCNN_ERROR_OUT_OF_RANGE);
  qucnn_feature_map_destroy(map);
  qucnn_filter_destroy(f);
  qucnn_image_set_destroy(set);

  CHECK(qucnn_mnist_load("/nonexistent", 1, &set) == QUCNN_ERROR_IO);

  const double px[4] = {0, 0.5, 2.0, 0};
  qucnn_image* img = nullptr;
  CHECK(qucnn_image_create(2, 2, px, &img) == QUCNN_ERROR_DATA);
}

TEST_CASE("config and experiment run") {
  qucnn_config* cfg = nullptr;
  REQUIRE(qucnn_config_create("gradcheck", &cfg) == QUCNN_OK);
  const auto out = std::filesystem::temp_directory_path() / "qucnn-test-capi";
  std::filesystem::remove_all(out);
  CHECK(qucnn_config_set(cfg, "runs", "1") == QUCNN_OK);
  CHECK(qucnn_config_set(cfg, "output_dir", out.c_str()) == QUCNN_OK);
  CHECK(qucnn_config_set(cfg, "bogus", "1") == QUCNN_ERROR_CONFIG);
  CHECK(std::string(qucnn_config_json(cfg)).find("\"runs\": 1") != std::string::npos);

  qucnn_outcome* o = nullptr;
  REQUIRE(qucnn_experiment_run(cfg, &o) == QUCNN_OK);
  CHECK(qucnn_outcome_file_count(o) >= 1);
  CHECK(std::filesystem::exists(out / qucnn_outcome_file(o, 0)));
  CHECK(qucnn_outcome_file(o, 99) == nullptr);
  CHECK(std::string(qucnn_outcome_summary(o)).find("gradcheck") != std::string::npos);
  CHECK(qucnn_outcome_warning_count(o) == 0);
  qucnn_outcome_destroy(o);
  qucnn_config_destroy(cfg);

  CHECK(qucnn_config_create("pooling", &cfg) == QUCNN_ERROR_CONFIG);
  CHECK(qucnn_config_load("/nonexistent.json", &cfg) == QUCNN_ERROR_CONFIG);
}
