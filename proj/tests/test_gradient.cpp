// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qucnn/gradient.hpp"
#include "support/dense_oracle.hpp"
#include "support/errors.hpp"

using namespace qucnn;
using std::numbers::pi;
using testing::code_of;

namespace {

StateVector from_oracle(const std::vector<oracle::C>& v) {
  return StateVector::from_amplitudes({v.begin(), v.end()});
}

// Exact p0 of the SWAP test computed through the dense oracle.
double oracle_p0(const FilterParams& p, const std::vector<oracle::C>& data) {
  const auto f = oracle::apply(oracle::ansatz(p.num_qubits, p.n_reps, p.thetas),
                               oracle::ground(data.size()));
  return 0.5 + 0.5 * oracle::overlap_sq(f, data);
}

// Richardson-extrapolated central difference on the oracle p0.
double richardson(const FilterParams& p, std::size_t i, const std::vector<oracle::C>& d, double h) {
  auto cd = [&](double eps) {
    FilterParams a = p, b = p;
    a.thetas[i] += eps;
    b.thetas[i] -= eps;
    return (oracle_p0(a, d) - oracle_p0(b, d)) / (2 * eps);
  };
  return (4 * cd(h / 2) - cd(h)) / 3;
}

FilterParams one_qubit(double theta) { return FilterParams(1, 1, {theta, 0.0}); }

}  // namespace

TEST_CASE("parameter shift on the one-qubit closed form") {
  const StateVector zero(1);
  const auto exact = SamplingMode::exact();
  CHECK(param_shift_grad(one_qubit(pi / 2), 0, zero, exact) ==
        doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(std::abs(param_shift_grad(one_qubit(0.0), 0, zero, exact)) < 1e-15);
  CHECK(std::abs(finite_diff_grad(one_qubit(pi / 2), 0, zero, 1e-6) + 0.25) < 1e-9);
  // Closed form -1/4 sin(theta) on a sweep.
  for (double t = -3.0; t <= 3.0; t += 0.25) {
    CHECK(std::abs(param_shift_grad(one_qubit(t), 0, zero, exact) + 0.25 * std::sin(t)) < 1e-14);
  }
  CHECK(code_of([&] { param_shift_grad(one_qubit(0.1), 2, zero, exact); }) ==
        ErrorCode::kOutOfRange);
}

TEST_CASE("property: parameter shift is exact") {
  qucnn::SplitMix64 rng(31);
  for (int reps = 1; reps <= 3; ++reps) {
    for (int trial = 0; trial < 3; ++trial) {
      const FilterParams p(4, reps, oracle::random_angles(8 * reps, rng));
      const auto d = oracle::random_state(16, rng);
      const StateVector sd = from_oracle(d);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double ps = param_shift_grad(p, i, sd, SamplingMode::exact());
        CHECK(std::abs(ps - richardson(p, i, d, 1e-3)) < 1e-10);
        CHECK(std::abs(ps - finite_diff_grad(p, i, sd, 1e-5)) < 1e-6);
      }
    }
  }
}

TEST_CASE("generalized shift agrees with the default") {
  qucnn::SplitMix64 rng(32);
  const FilterParams p(4, 2, oracle::random_angles(16, rng));
  const StateVector d = from_oracle(oracle::random_state(16, rng));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = param_shift_grad(p, i, d, SamplingMode::exact());
    CHECK(std::abs(param_shift_grad(p, i, d, SamplingMode::exact(), 0.4) - a) < 1e-12);
  }
}

TEST_CASE("finite differences converge at second order") {
  qucnn::SplitMix64 rng(33);
  const FilterParams p(4, 2, oracle::random_angles(16, rng));
  const StateVector d = from_oracle(oracle::random_state(16, rng));
  int good = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ps = param_shift_grad(p, i, d, SamplingMode::exact());
    const double e1 = std::abs(finite_diff_grad(p, i, d, 0.02) - ps);
    const double e2 = std::abs(finite_diff_grad(p, i, d, 0.01) - ps);
    if (e1 < 1e-12) continue;
    const double ratio = e1 / e2;
    if (ratio > 3.5 && ratio < 4.5) ++good;
  }
  CHECK(good >= 12);
  CHECK(code_of([&] { finite_diff_grad(p, 0, d, 0.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("theta_beta") {
  const AncillaAngle a = theta_beta(0.5);
  CHECK(a.theta_beta == 0.0);
  CHECK(a.beta_sq == 0.0);
  CHECK(theta_beta(0.0).theta_beta == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(std::abs(theta_beta(0.3).theta_beta - 0.9272952180016122) < 1e-15);
  CHECK(theta_beta(-0.5).theta_beta == doctest::Approx(pi).epsilon(1e-15));
  for (double d = -0.5; d <= 0.5; d += 0.01) {
    const AncillaAngle x = theta_beta(d);
    CHECK(std::abs(std::pow(std::sin(x.theta_beta / 2), 2) - x.beta_sq) < 1e-12);
    CHECK(std::abs(0.5 - x.beta_sq - d) < 1e-12);
  }
  CHECK(code_of([] { theta_beta(0.51); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([] { theta_beta(-0.6); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("range_map_upstream") {
  const auto a = range_map_upstream({0.3, -0.2});
  CHECK(a.scale == 1.0);
  CHECK(a.values == std::vector<double>{0.3, -0.2});

  const auto b = range_map_upstream({1.0});
  CHECK(b.scale == 2.0);
  CHECK(b.values[0] == 0.5);

  const auto c = range_map_upstream({2.0, -4.0});
  CHECK(c.scale == 8.0);
  CHECK(c.values == std::vector<double>{0.25, -0.5});
  CHECK(c.raw == std::vector<double>{2.0, -4.0});

  qucnn::SplitMix64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> raw(5);
    for (auto& x : raw) x = rng.uniform(-10, 10);
    const auto m = range_map_upstream(raw);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      CHECK(std::abs(m.values[i]) <= 0.5);
      CHECK(m.values[i] * m.scale == doctest::Approx(raw[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("chain_grad_host") {
  const StateVector zero(1);
  std::vector<double> e0{1.0, 0.0};
  Patch patch;
  patch.values = e0;
  const std::vector<EncodedPatch> one{encode_patch(patch)};
  const FilterParams p = one_qubit(pi / 2);
  const auto exact = SamplingMode::exact();

  CHECK(chain_grad_host(range_map_upstream({0.3}), p, one, 0, exact) ==
        doctest::Approx(-0.075).epsilon(1e-14));
  CHECK(chain_grad_host(range_map_upstream({0.0}), p, one, 0, exact) == 0.0);

  // dL/dO = 1 maps to 0.5 with scale 2.
  const auto up = range_map_upstream({1.0});
  const double g = chain_grad_host(up, p, one, 0, exact);
  CHECK(g == doctest::Approx(0.5 * -0.25).epsilon(1e-14));
  CHECK(g * up.scale == doctest::Approx(-0.25).epsilon(1e-14));

  const std::vector<EncodedPatch> two{one[0], one[0]};
  CHECK(code_of([&] { chain_grad_host(up, p, two, 0, exact); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("ancilla-scaled probability examples") {
  qucnn::SplitMix64 rng(35);
  const auto exact = SamplingMode::exact();
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector f = from_oracle(oracle::random_state(16, rng));
    const StateVector d = from_oracle(oracle::random_state(16, rng));
    const double F = fidelity(f, d);
    CHECK(std::abs(ancilla_scaled_probability(f, d, theta_beta(0.0), exact).exact_p0 - 0.5) <
          1e-12);
    CHECK(std::abs(ancilla_scaled_probability(f, d, theta_beta(0.5), exact).exact_p0 -
                   swap_test(f, d, exact).exact_p0) < 1e-12);
    const AncillaReadout r = ancilla_scaled_readout(f, d, theta_beta(-0.2));
    CHECK(std::abs(r.swap_p0 - (0.5 - 0.2 * F)) < 1e-12);
  }
  const StateVector same(4);
  CHECK(ancilla_scaled_probability(same, same, theta_beta(0.3), exact).exact_p0 ==
        doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("property: ancilla readout is F-independent") {
  qucnn::SplitMix64 rng(36);
  for (double dl : {-0.5, -0.1, 0.0, 0.3, 0.5}) {
    const AncillaAngle a = theta_beta(dl);
    const double want = std::pow(std::cos(a.theta_beta / 2), 2);
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector f = from_oracle(oracle::random_state(16, rng));
      const StateVector d = from_oracle(oracle::random_state(16, rng));
      const StateVector reg = ancilla_scaled_register(f, d, a);
      CHECK(std::abs(reg.prob_zero(9) - want) < 1e-12);
      CHECK(std::abs(ancilla_scaled_readout(f, d, a).ancilla_p0 - want) < 1e-12);
    }
  }
}

TEST_CASE("entangled gradient examples") {
  const StateVector zero(1);
  const auto exact = SamplingMode::exact();
  CHECK(entangled_grad(0.3, one_qubit(pi / 2), 0, zero, exact) ==
        doctest::Approx(-0.075).epsilon(1e-13));
  CHECK(std::abs(entangled_grad(0.0, one_qubit(pi / 2), 0, zero, exact)) < 1e-15);
  CHECK(code_of([&] { entangled_grad(0.7, one_qubit(0.0), 0, zero, exact); }) ==
        ErrorCode::kOutOfRange);
}

TEST_CASE("property: entangled gradient equals dl_do times the parameter shift") {
  qucnn::SplitMix64 rng(37);
  for (int reps = 1; reps <= 3; ++reps) {
    const FilterParams p(4, reps, oracle::random_angles(8 * reps, rng));
    const StateVector d = from_oracle(oracle::random_state(16, rng));
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double ps = param_shift_grad(p, i, d, SamplingMode::exact());
      for (double dl : {-0.5, -0.3, 0.0, 0.3, 0.5}) {
        CHECK(std::abs(entangled_grad(dl, p, i, d, SamplingMode::exact()) - dl * ps) < 1e-10);
      }
      // Linear in the upstream value.
      const double g1 = entangled_grad(0.2, p, i, d, SamplingMode::exact());
      const double g2 = entangled_grad(0.4, p, i, d, SamplingMode::exact());
      CHECK(std::abs(g2 - 2 * g1) < 1e-12);
    }
  }
}

TEST_CASE("entangled gradient under shot noise stays in the propagated band") {
  qucnn::SplitMix64 rng(38);
  const FilterParams p(4, 2, oracle::random_angles(16, rng));
  const StateVector d = from_oracle(oracle::random_state(16, rng));
  int inside = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double want = entangled_grad(0.3, p, i, d, SamplingMode::exact());
    const double got = entangled_grad(0.3, p, i, d, SamplingMode::sampled(10000, 1000 + i));
    // Two independent binomials, each with variance at most 1/4 / shots,
    // divided by 4.
    const double sigma = std::sqrt(2 * 0.25 / 10000) / 4;
    if (std::abs(got - want) <= 4 * sigma) ++inside;
  }
  CHECK(inside == static_cast<int>(p.size()));
}

TEST_CASE("gradient_report") {
  qucnn::SplitMix64 rng(39);
  const FilterParams p(4, 2, oracle::random_angles(16, rng));
  const StateVector d = from_oracle(oracle::random_state(16, rng));
  const GradientReport r = gradient_report(p, d, 0.3, SamplingMode::exact());
  CHECK(r.dl_do == 0.3);
  CHECK(r.scale == 1.0);
  REQUIRE(r.records.size() == p.size());
  for (const auto& rec : r.records) {
    CHECK(rec.abs_error == std::abs(rec.param_shift - rec.entangled));
    CHECK(rec.abs_error < 1e-10);
    CHECK(std::abs(rec.finite_diff - rec.param_shift) < 1e-6);
    CHECK(rec.shots == 0);
  }
  const GradientReport big = gradient_report(p, d, 3.0, SamplingMode::exact());
  CHECK(big.dl_do == 0.5);
  CHECK(big.scale == 6.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(std::abs(big.records[i].entangled * big.scale -
                   3.0 * param_shift_grad(p, i, d, SamplingMode::exact())) < 1e-10);
  }
}
