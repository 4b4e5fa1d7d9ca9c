// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qucnn/error.hpp"

namespace qucnn {

namespace {

void check_index(const FilterParams& params, std::size_t index) {
  params.validate();
  if (index >= params.size()) {
    fail(ErrorCode::kOutOfRange, "parameter index " + std::to_string(index) +
                                     " out of range for " +
                                     std::to_string(params.size()) +
                                     " parameters");
  }
}

void check_shift(double shift) {
  if (!(std::abs(std::sin(shift)) > 1e-12)) {
    fail(ErrorCode::kInvalidArgument, "shift must not be a multiple of pi");
  }
}

FilterParams shifted(const FilterParams& params, std::size_t index,
                     double delta) {
  FilterParams p = params;
  p.thetas[index] += delta;
  return p;
}

double swap_p0(const FilterParams& params, const StateVector& data,
               const SamplingMode& mode) {
  return swap_test(ansatz_state(params), data, mode).p0();
}

double anc_p0(const FilterParams& params, const StateVector& data,
              const AncillaAngle& angle, const SamplingMode& mode) {
  return ancilla_scaled_probability(ansatz_state(params), data, angle, mode)
      .p0();
}

}  // namespace

UpstreamGradient range_map_upstream(const std::vector<double>& raw) {
  UpstreamGradient g;
  g.raw = raw;
  g.values = raw;
  double peak = 0.0;
  for (double v : raw) peak = std::max(peak, std::abs(v));
  if (peak > 0.5) {
    g.scale = 2.0 * peak;
    for (auto& v : g.values) v /= g.scale;
  }
  return g;
}

AncillaAngle theta_beta(double dl_do) {
  if (!(dl_do >= -0.5 && dl_do <= 0.5)) {
    fail(ErrorCode::kOutOfRange,
         "dL/dO = " + std::to_string(dl_do) +
             " outside [-0.5, 0.5]; range-map the upstream gradient first");
  }
  AncillaAngle a;
  a.dl_do = dl_do;
  a.beta_sq = 0.5 - dl_do;
  a.theta_beta = 2.0 * std::asin(std::sqrt(std::clamp(a.beta_sq, 0.0, 1.0)));
  return a;
}

double param_shift_grad(const FilterParams& params, std::size_t index,
                        const StateVector& data, const SamplingMode& mode,
                        double shift) {
  check_index(params, index);
  check_shift(shift);
  const double plus = swap_p0(shifted(params, index, shift), data,
                              mode.is_exact() ? mode : mode.substream(0));
  const double minus = swap_p0(shifted(params, index, -shift), data,
                               mode.is_exact() ? mode : mode.substream(1));
  return (plus - minus) / (2.0 * std::sin(shift));
}

double chain_grad_host(const UpstreamGradient& upstream,
                       const FilterParams& params,
                       const std::vector<EncodedPatch>& patches,
                       std::size_t index, const SamplingMode& mode,
                       double shift) {
  if (upstream.values.size() != patches.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "upstream gradient has " + std::to_string(upstream.values.size()) +
             " entries for " + std::to_string(patches.size()) + " windows");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < patches.size(); ++j) {
    const SamplingMode local = mode.is_exact() ? mode : mode.substream(j);
    total += upstream.values[j] *
             param_shift_grad(params, index, patches[j].state, local, shift);
  }
  return total;
}

StateVector ancilla_scaled_register(const StateVector& filter,
                                    const StateVector& data,
                                    const AncillaAngle& angle) {
  StateVector reg = swap_test_register(filter, data, 1);
  const int scaling = reg.num_qubits() - 1;
  reg.apply_ry(scaling, angle.theta_beta);
  reg.apply_cnot(scaling, 0);
  return reg;
}

AncillaReadout ancilla_scaled_readout(const StateVector& filter,
                                      const StateVector& data,
                                      const AncillaAngle& angle) {
  const StateVector reg = ancilla_scaled_register(filter, data, angle);
  return {reg.prob_zero(0), reg.prob_zero(reg.num_qubits() - 1)};
}

MeasurementResult ancilla_scaled_probability(const StateVector& filter,
                                             const StateVector& data,
                                             const AncillaAngle& angle,
                                             const SamplingMode& mode) {
  return measure(ancilla_scaled_register(filter, data, angle), 0, mode);
}

MeasurementResult ancilla_scaled_probability(const FilterState& filter,
                                             const EncodedPatch& data,
                                             const AncillaAngle& angle,
                                             const SamplingMode& mode) {
  return ancilla_scaled_probability(filter.realized(), data.state, angle,
                                    mode);
}

double entangled_grad(double dl_do, const FilterParams& params,
                      std::size_t index, const StateVector& data,
                      const SamplingMode& mode, double shift) {
  const AncillaAngle angle = theta_beta(dl_do);
  check_index(params, index);
  check_shift(shift);
  const double plus = anc_p0(shifted(params, index, shift), data, angle,
                             mode.is_exact() ? mode : mode.substream(0));
  const double minus = anc_p0(shifted(params, index, -shift), data, angle,
                              mode.is_exact() ? mode : mode.substream(1));
  return (plus - minus) / (4.0 * std::sin(shift));
}

double finite_diff_grad(const FilterParams& params, std::size_t index,
                        const StateVector& data, double epsilon) {
  check_index(params, index);
  if (!(epsilon > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "finite-difference step must be > 0");
  }
  const auto exact = SamplingMode::exact();
  const double plus = swap_p0(shifted(params, index, epsilon), data, exact);
  const double minus = swap_p0(shifted(params, index, -epsilon), data, exact);
  return (plus - minus) / (2.0 * epsilon);
}

GradientReport gradient_report(const FilterParams& params,
                               const StateVector& data, double raw_dl_do,
                               const SamplingMode& mode, double fd_epsilon) {
  const UpstreamGradient up = range_map_upstream({raw_dl_do});
  GradientReport report;
  report.dl_do = up.values.front();
  report.scale = up.scale;

  const std::vector<EncodedPatch> window{
      EncodedPatch{data, Patch{}}};
  for (std::size_t i = 0; i < params.size(); ++i) {
    GradientRecord r;
    r.index = i;
    r.shots = mode.shots;
    const SamplingMode host = mode.is_exact() ? mode : mode.substream(2 * i);
    const SamplingMode device =
        mode.is_exact() ? mode : mode.substream(2 * i + 1);
    r.param_shift = chain_grad_host(up, params, window, i, host);
    r.entangled = entangled_grad(report.dl_do, params, i, data, device);
    r.finite_diff = report.dl_do * finite_diff_grad(params, i, data, fd_epsilon);
    r.abs_error = std::abs(r.param_shift - r.entangled);
    report.records.push_back(r);
  }
  return report;
}

}  // namespace qucnn
