// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qucnn/encoding.hpp"
#include "qucnn/error.hpp"
#include "support/dense_oracle.hpp"
#include "support/errors.hpp"

using namespace qucnn;
using testing::code_of;

namespace {

ImageGrid ramp(int h, int w) {
  std::vector<double> px(static_cast<std::size_t>(h) * w);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<double>(i % 7) / 7.0;
  return ImageGrid(h, w, px);
}


}  // namespace

TEST_CASE("ImageGrid validates shape and range") {
  CHECK(code_of([] { ImageGrid(2, 2, {0, 0, 0}); }) == ErrorCode::kData);
  CHECK(code_of([] { ImageGrid(1, 2, {0.5, 1.5}); }) == ErrorCode::kData);
  CHECK(code_of([] { ImageGrid(1, 2, {-0.1, 0.5}); }) == ErrorCode::kData);
}

TEST_CASE("extract_patches") {
  const auto full = extract_patches(ramp(28, 28), {4, 4, 1});
  CHECK(full.size() == 625);
  CHECK(full.back().origin_row == 24);
  CHECK(full.back().origin_col == 24);
  CHECK(window_grid(28, 28, {4, 4, 1}).rows == 25);

  const ImageGrid small = ramp(4, 4);
  const auto one = extract_patches(small, {4, 4, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0].values == small.pixels);

  CHECK(extract_patches(ramp(5, 4), {4, 4, 1}).size() == 2);

  SUBCASE("row-major order and window contents") {
    const ImageGrid img = ramp(6, 5);
    const auto p = extract_patches(img, {2, 2, 2});
    REQUIRE(p.size() == 6);  // rows {0,2,4} x cols {0,2}
    CHECK(p[1].origin_row == 0);
    CHECK(p[1].origin_col == 2);
    CHECK(p[2].origin_row == 2);
    CHECK(p[3].values[3] == img.at(3, 3));
  }

  CHECK(code_of([] { extract_patches(ramp(8, 8), {3, 3, 1}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { extract_patches(ramp(3, 8), {4, 4, 1}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { extract_patches(ramp(8, 8), {4, 4, 0}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("property: patch count formula") {
  qucnn::SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int h = 4 + static_cast<int>(rng() % 30);
    const int w = 4 + static_cast<int>(rng() % 30);
    const int hh = 1 << (rng() % 3);  // 1, 2, 4
    const int ww = hh == 1 ? 2 : 1 << (rng() % 3);
    const int s = 1 + static_cast<int>(rng() % 4);
    const auto patches = extract_patches(ramp(h, w), {hh, ww, s});
    const std::size_t want =
        static_cast<std::size_t>((h - hh) / s + 1) * static_cast<std::size_t>((w - ww) / s + 1);
    CHECK(patches.size() == want);
  }
}

TEST_CASE("normalize_patch") {
  std::vector<double> v(16, 0.0);
  v[0] = 3;
  v[1] = 4;
  const auto n = normalize_patch(v);
  CHECK_FALSE(n.degenerate);
  CHECK(n.unit[0] == doctest::Approx(0.6));
  CHECK(n.unit[1] == doctest::Approx(0.8));
  for (std::size_t i = 2; i < 16; ++i) CHECK(n.unit[i] == 0.0);

  const auto flat = normalize_patch(std::vector<double>(16, 0.7));
  for (double x : flat.unit) CHECK(x == doctest::Approx(0.25).epsilon(1e-15));

  const auto zero = normalize_patch(std::vector<double>(16, 0.0));
  CHECK(zero.degenerate);
  CHECK(zero.unit[0] == 1.0);
  CHECK(std::accumulate(zero.unit.begin(), zero.unit.end(), 0.0) == 1.0);
}

TEST_CASE("preparation_unitary") {
  std::vector<double> e0(16, 0.0);
  e0[0] = 1.0;
  const UnitaryMatrix id = preparation_unitary(e0);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(id(i, 0) - (i == 0 ? 1.0 : 0.0)) < 1e-15);

  const UnitaryMatrix u = preparation_unitary({0.5, 0.5, 0.5, 0.5});
  StateVector s(2);
  const std::vector<int> q{0, 1};
  s.apply_unitary(q, u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s[i].real() == doctest::Approx(0.5).epsilon(1e-15));

  // Negative leading component takes the other Householder branch.
  const UnitaryMatrix neg = preparation_unitary({-0.6, 0.0, 0.8, 0.0});
  CHECK(neg(0, 0).real() == doctest::Approx(-0.6));
  CHECK(neg(2, 0).real() == doctest::Approx(0.8));

  CHECK(code_of([] { preparation_unitary({1.0, 1.0}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { preparation_unitary({1.0, 0.0, 0.0}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("property: preparation_unitary is unitary and prepares the target") {
  qucnn::SplitMix64 rng(1000);
  const std::vector<int> q{0, 1, 2, 3};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = oracle::random_unit_real(16, rng);
    const UnitaryMatrix u = preparation_unitary(t);  // checks the invariant
    CHECK(UnitaryMatrix::unitarity_defect(16, u.entries()) < 1e-10);
    StateVector s(4);
    s.apply_unitary(q, u);
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i) worst = std::max(worst, std::abs(s[i] - t[i]));
    CHECK(worst < 1e-10);
    CHECK(fidelity(s, StateVector::from_real(t)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("encode_patch") {
  Patch zero;
  zero.values.assign(16, 0.0);
  const EncodedPatch z = encode_patch(zero);
  CHECK(z.source.degenerate);
  CHECK(z.state[0] == Complex(1, 0));

  qucnn::SplitMix64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Patch p;
    p.values.resize(16);
    for (auto& v : p.values) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    if (std::all_of(p.values.begin(), p.values.end(), [](double v) { return v == 0; })) continue;
    const EncodedPatch e = encode_patch(p);
    CHECK_FALSE(e.source.degenerate);
    const auto n = normalize_patch(p.values);
    CHECK(fidelity(e.state, StateVector::from_real(n.unit)) == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(std::abs(e.state[i].imag()) < 1e-15);
      CHECK(e.state[i].real() > -1e-15);
    }
  }
}
