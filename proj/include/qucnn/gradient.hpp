// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Filter gradients.
//
// Three routes to dL/dtheta for the SWAP-test output O = p0:
//   * parameter shift: dO/dtheta from two shifted SWAP tests, multiplied on
//     the host by the upstream dL/dO (chain_grad_host);
//   * entangled ancilla: an extra qubit rotated by theta_beta is CNOT-ed onto
//     the SWAP ancilla so the measured probability already carries the factor
//     dL/dO (entangled_grad);
//   * central finite differences on the exact probability (oracle only).
//
// The entangled routine register is the SWAP-test layout of conv_layer.hpp
// plus one qubit on top (index 2k+1) for the scaling ancilla.

#pragma once

#include <numbers>
#include <vector>

#include "qucnn/conv_layer.hpp"

namespace qucnn {

inline constexpr double kDefaultShift = std::numbers::pi / 2;

/// Upstream gradients mapped into [-1/2, 1/2], the range an ancilla rotation
/// can encode. `scale` multiplies gradients computed from `values` back to
/// the raw scale.
struct UpstreamGradient {
  std::vector<double> values;
  std::vector<double> raw;
  double scale = 1.0;
};

/// Identity when max|raw| <= 1/2, else divides everything by 2 max|raw|.
UpstreamGradient range_map_upstream(const std::vector<double>& raw);

/// Rotation angle of the scaling ancilla for one upstream value.
struct AncillaAngle {
  double theta_beta = 0.0;
  double dl_do = 0.0;
  double beta_sq = 0.0;  ///< sin^2(theta_beta / 2) = 1/2 - dl_do.
};

/// theta_beta = 2 asin(sqrt(1/2 - dl_do)). Throws kOutOfRange outside
/// [-1/2, 1/2].
AncillaAngle theta_beta(double dl_do);

/// Parameter-shift derivative of the SWAP-test p0 with respect to
/// params.thetas[index]:
///   (p0(theta + s) - p0(theta - s)) / (2 sin s),
/// which is 1/2 (p0(theta + pi/2) - p0(theta - pi/2)) at the default shift.
/// In shots mode the two evaluations use substreams 0 and 1 of `mode`.
double param_shift_grad(const FilterParams& params, std::size_t index,
                        const StateVector& data, const SamplingMode& mode,
                        double shift = kDefaultShift);

/// Host-side chain rule: sum_j upstream.values[j] * dO_j/dtheta_index.
/// Window j samples with substream j of `mode`. The result is in the mapped
/// scale; multiply by upstream.scale for the raw gradient.
double chain_grad_host(const UpstreamGradient& upstream,
                       const FilterParams& params,
                       const std::vector<EncodedPatch>& patches,
                       std::size_t index, const SamplingMode& mode,
                       double shift = kDefaultShift);

/// Exact readout probabilities of the entangled-ancilla circuit.
struct AncillaReadout {
  double swap_p0 = 0.0;     ///< 1/2 + (1/2 - beta^2) F.
  double ancilla_p0 = 0.0;  ///< cos^2(theta_beta / 2), independent of F.
};

/// Prepares the entangled-ancilla register (RY(theta_beta) on the scaling
/// ancilla, SWAP test, CNOT scaling ancilla -> SWAP ancilla).
StateVector ancilla_scaled_register(const StateVector& filter,
                                    const StateVector& data,
                                    const AncillaAngle& angle);

AncillaReadout ancilla_scaled_readout(const StateVector& filter,
                                      const StateVector& data,
                                      const AncillaAngle& angle);

/// Measures the SWAP ancilla of the entangled-ancilla circuit.
MeasurementResult ancilla_scaled_probability(const StateVector& filter,
                                             const StateVector& data,
                                             const AncillaAngle& angle,
                                             const SamplingMode& mode);
MeasurementResult ancilla_scaled_probability(const FilterState& filter,
                                             const EncodedPatch& data,
                                             const AncillaAngle& angle,
                                             const SamplingMode& mode);

/// dl_do * dO/dtheta_index computed on-device:
///   (p_anc(theta + s) - p_anc(theta - s)) / (4 sin s).
double entangled_grad(double dl_do, const FilterParams& params,
                      std::size_t index, const StateVector& data,
                      const SamplingMode& mode, double shift = kDefaultShift);

/// Central difference (p0(theta + eps) - p0(theta - eps)) / (2 eps) on exact
/// probabilities.
double finite_diff_grad(const FilterParams& params, std::size_t index,
                        const StateVector& data, double epsilon);

/// One row of a gradient comparison.
struct GradientRecord {
  std::size_t index = 0;
  double param_shift = 0.0;  ///< Host-scaled: dl_do * parameter shift.
  double entangled = 0.0;
  double finite_diff = 0.0;  ///< dl_do * exact finite difference.
  std::int64_t shots = 0;
  double abs_error = 0.0;  ///< |param_shift - entangled|.
};

struct GradientReport {
  double dl_do = 0.0;  ///< Mapped upstream value used on device.
  double scale = 1.0;  ///< Multiply gradients by this for the raw scale.
  std::vector<GradientRecord> records;
};

/// Gradients of every parameter by all three routes for a single window.
/// Parameter i uses substream 2i (host) and 2i+1 (entangled) of `mode`.
GradientReport gradient_report(const FilterParams& params,
                               const StateVector& data, double raw_dl_do,
                               const SamplingMode& mode,
                               double fd_epsilon = 1e-5);

}  // namespace qucnn
