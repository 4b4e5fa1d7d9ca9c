// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Dense statevector simulator.
//
// Qubit ordering: qubit q is bit q of the basis index, so qubit 0 is the
// least-significant bit. Every module and file format in this project uses
// that convention.
//
// Gates mutate the state in place and return a reference to it for chaining.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qucnn {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 24;

/// Square complex matrix of power-of-two dimension, row-major. Construction
/// checks unitarity: ||U^dagger U - I||_F <= 1e-10.
class UnitaryMatrix {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  UnitaryMatrix(std::size_t dim, std::vector<Complex> entries);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  int num_qubits() const noexcept { return num_qubits_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  /// Frobenius norm of U^dagger U - I.
  static double unitarity_defect(std::size_t dim,
                                 std::span<const Complex> entries);

 private:
  std::size_t dim_;
  int num_qubits_;
  std::vector<Complex> entries_;
};

struct MeasurementResult {
  std::int64_t shots = 0;  ///< 0 means the exact probability only.
  std::int64_t zero_count = 0;
  double exact_p0 = 0.0;

  /// Observed frequency of 0 in shots mode, exact_p0 otherwise.
  double p0() const noexcept {
    return shots > 0 ? static_cast<double>(zero_count) /
                           static_cast<double>(shots)
                     : exact_p0;
  }
};

/// Either exact probabilities or a seeded finite-shot estimate.
struct SamplingMode {
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  static SamplingMode exact() noexcept { return {}; }
  static SamplingMode sampled(std::int64_t shots, std::uint64_t seed) {
    return {shots, seed};
  }
  bool is_exact() const noexcept { return shots == 0; }
  /// Same shot budget with a seed derived for sub-stream `index`.
  SamplingMode substream(std::uint64_t index) const noexcept;
};

class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits. Throws kOutOfRange outside
  /// [1, max_qubits].
  explicit StateVector(int num_qubits, int max_qubits = kDefaultMaxQubits);

  /// Adopts `amplitudes` (length must be a power of two >= 2). The vector is
  /// renormalized only if `normalize` is set; otherwise it must already have
  /// unit norm within 1e-10.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                     bool normalize = false);
  static StateVector from_real(std::span<const double> amplitudes,
                               bool normalize = false);

  /// Product state with `low` on the least-significant qubits.
  static StateVector tensor(const StateVector& high, const StateVector& low);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept;

  StateVector& apply_ry(int qubit, double theta);
  StateVector& apply_rz(int qubit, double theta);
  StateVector& apply_h(int qubit);
  StateVector& apply_x(int qubit);
  StateVector& apply_cnot(int control, int target);
  StateVector& apply_cswap(int control, int a, int b);
  /// Applies `u` to the sub-register `qubits`; qubits[j] carries bit j of the
  /// matrix row/column index.
  StateVector& apply_unitary(std::span<const int> qubits,
                             const UnitaryMatrix& u);
  /// Arbitrary 2x2 matrix {m00, m01, m10, m11}. Caller guarantees unitarity.
  StateVector& apply_single(int qubit, const std::array<Complex, 4>& m);

  /// Exact probability that measuring `qubit` in the Z basis gives 0.
  double prob_zero(int qubit) const;

 private:
  StateVector() = default;
  void check_qubit(int qubit) const;

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Draws Binomial(shots, prob_zero(qubit)) by counting `shots` seeded
/// Bernoulli trials. Throws kInvalidArgument when shots < 1.
MeasurementResult sample_measure(const StateVector& state, int qubit,
                                 std::int64_t shots, std::uint64_t seed);

/// Counts draws u < p0 over a SplitMix64 stream. Exposed for callers that
/// already hold the exact probability.
std::int64_t sample_zero_count(double p0, std::int64_t shots,
                               std::uint64_t seed);

/// Exact or sampled measurement of `qubit`, per `mode`.
MeasurementResult measure(const StateVector& state, int qubit,
                          const SamplingMode& mode);

}  // namespace qucnn
