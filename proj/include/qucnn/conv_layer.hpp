// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Quantum convolution layer: a filter state is compared against every
// amplitude-encoded window of an image with a SWAP test.
//
// SWAP-test register layout (k = filter width):
//   qubit 0          ancilla, read out
//   qubits 1..k      filter
//   qubits k+1..2k   data

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "qucnn/encoding.hpp"
#include "qucnn/statevector.hpp"

namespace qucnn {

enum class RotationLayer { kRY = 0, kRZ = 1 };

/// Angles of the filter ansatz. Per repetition: RY on every qubit, RZ on every
/// qubit, then CNOT(q, q+1) for q = 0..num_qubits-2.
struct FilterParams {
  int num_qubits = 0;
  int n_reps = 0;
  std::vector<double> thetas;  ///< Indexed by index(rep, layer, qubit).

  FilterParams() = default;
  FilterParams(int num_qubits, int n_reps);  // all zeros
  FilterParams(int num_qubits, int n_reps, std::vector<double> thetas);

  std::size_t size() const noexcept { return thetas.size(); }
  std::size_t index(int rep, RotationLayer layer, int qubit) const {
    return (static_cast<std::size_t>(rep) * 2 + static_cast<int>(layer)) *
               num_qubits +
           qubit;
  }
  /// Throws kInvalidArgument if thetas.size() != 2 * n_reps * num_qubits.
  void validate() const;
};

/// A filter either built from the ansatz or loaded through an ideal unitary,
/// together with the state it prepares from |0...0>.
class FilterState {
 public:
  using Source = std::variant<FilterParams, UnitaryMatrix>;

  const Source& source() const noexcept { return source_; }
  const StateVector& realized() const noexcept { return realized_; }
  int num_qubits() const noexcept { return realized_.num_qubits(); }
  bool is_ansatz() const noexcept {
    return std::holds_alternative<FilterParams>(source_);
  }

 private:
  friend FilterState build_filter_state(const FilterParams&);
  friend FilterState filter_from_unitary(UnitaryMatrix);
  FilterState(Source source, StateVector realized)
      : source_(std::move(source)), realized_(std::move(realized)) {}

  Source source_;
  StateVector realized_;
};

/// Runs the ansatz circuit on |0...0>.
FilterState build_filter_state(const FilterParams& params);
/// Applies `u` to |0...0>.
FilterState filter_from_unitary(UnitaryMatrix u);
/// Ideal filter for a real unit vector, through preparation_unitary.
FilterState filter_from_vector(const std::vector<double>& unit);

/// Prepares the ansatz state without keeping the FilterState wrapper.
StateVector ansatz_state(const FilterParams& params);

/// SWAP test between `filter` and `data`; exact_p0 = 1/2 + 1/2 |<f|d>|^2.
/// Throws kDimensionMismatch for unequal widths.
MeasurementResult swap_test(const StateVector& filter, const StateVector& data,
                            const SamplingMode& mode);
MeasurementResult swap_test(const FilterState& filter, const EncodedPatch& data,
                            const SamplingMode& mode);

/// Prepares the 2k+1 qubit SWAP-test register after the final Hadamard.
/// `extra_qubits` zero qubits are appended above the data register.
StateVector swap_test_register(const StateVector& filter,
                               const StateVector& data, int extra_qubits = 0);

struct FeatureCell {
  double p0 = 0.0;
  double similarity = 0.0;  ///< 2 p0 - 1; clamped to [0, 1] in shots mode.
  bool degenerate = false;
  std::int64_t shots_used = 0;
};

struct FeatureMap {
  int rows = 0;
  int cols = 0;
  std::vector<FeatureCell> cells;  ///< Row-major.

  const FeatureCell& at(int r, int c) const { return cells[r * cols + c]; }
};

struct ConvOptions {
  WindowGeometry geometry;
  SamplingMode mode;
  /// Worker threads for window evaluation; results do not depend on it.
  int threads = 1;
};

/// Seed used for window `window_index` of filter `filter_index`.
std::uint64_t window_seed(std::uint64_t master, std::size_t filter_index,
                          std::size_t window_index);

/// One feature map per filter. Window w of filter f samples with
/// window_seed(mode.seed, f, w), so output is schedule-independent.
std::vector<FeatureMap> conv_forward(const ImageGrid& image,
                                     std::span<const FilterState> filters,
                                     const ConvOptions& options);
FeatureMap conv_forward(const ImageGrid& image, const FilterState& filter,
                        const ConvOptions& options);

}  // namespace qucnn
