// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/statevector.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "qucnn/error.hpp"
#include "qucnn/rng.hpp"

namespace qucnn {

namespace {

constexpr double kNormTolerance = 1e-10;

int log2_exact(std::size_t n) {
  if (n < 2 || !std::has_single_bit(n)) {
    fail(ErrorCode::kDimensionMismatch,
         "dimension " + std::to_string(n) + " is not a power of two >= 2");
  }
  return std::countr_zero(n);
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    fail(ErrorCode::kDimensionMismatch,
         "unitary dimension must be a power of two");
  }
  num_qubits_ = std::countr_zero(dim);
  if (entries_.size() != dim * dim) {
    fail(ErrorCode::kDimensionMismatch, "unitary needs dim*dim entries");
  }
  const double defect = unitarity_defect(dim_, entries_);
  if (!(defect <= kUnitarityTolerance)) {
    fail(ErrorCode::kNotUnitary,
         "matrix is not unitary (||U^dagger U - I||_F = " +
             std::to_string(defect) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return UnitaryMatrix(dim, std::move(e));
}

double UnitaryMatrix::unitarity_defect(std::size_t dim,
                                       std::span<const Complex> entries) {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += std::conj(entries[k * dim + i]) * entries[k * dim + j];
      }
      if (i == j) acc -= 1.0;
      sum += std::norm(acc);
    }
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// SamplingMode

SamplingMode SamplingMode::substream(std::uint64_t index) const noexcept {
  return {shots, derive_seed(seed, index)};
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits, int max_qubits) {
  if (num_qubits < 1 || num_qubits > max_qubits) {
    fail(ErrorCode::kOutOfRange,
         "qubit count " + std::to_string(num_qubits) + " outside [1, " +
             std::to_string(max_qubits) + "]");
  }
  num_qubits_ = num_qubits;
  amps_.assign(std::size_t{1} << num_qubits, Complex{});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes,
                                         bool normalize) {
  StateVector s;
  s.num_qubits_ = log2_exact(amplitudes.size());
  if (s.num_qubits_ > kDefaultMaxQubits) {
    fail(ErrorCode::kOutOfRange, "state exceeds the qubit cap");
  }
  s.amps_ = std::move(amplitudes);
  const double n2 = s.norm_squared();
  if (normalize) {
    if (!(n2 > 0.0)) fail(ErrorCode::kInvalidArgument, "zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : s.amps_) a *= inv;
  } else if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    fail(ErrorCode::kInvalidArgument,
         "amplitudes are not normalized (norm^2 = " + std::to_string(n2) +
             ")");
  }
  return s;
}

StateVector StateVector::from_real(std::span<const double> amplitudes,
                                   bool normalize) {
  return from_amplitudes({amplitudes.begin(), amplitudes.end()}, normalize);
}

StateVector StateVector::tensor(const StateVector& high,
                                const StateVector& low) {
  const int total = high.num_qubits_ + low.num_qubits_;
  if (total > kDefaultMaxQubits) {
    fail(ErrorCode::kOutOfRange, "product state exceeds the qubit cap");
  }
  StateVector s;
  s.num_qubits_ = total;
  s.amps_.resize(high.dim() * low.dim());
  const int shift = low.num_qubits_;
  for (std::size_t h = 0; h < high.dim(); ++h) {
    for (std::size_t l = 0; l < low.dim(); ++l) {
      s.amps_[(h << shift) | l] = high.amps_[h] * low.amps_[l];
    }
  }
  return s;
}

double StateVector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    fail(ErrorCode::kOutOfRange, "qubit index " + std::to_string(qubit) +
                                     " out of range for " +
                                     std::to_string(num_qubits_) + " qubits");
  }
}

StateVector& StateVector::apply_single(int qubit,
                                       const std::array<Complex, 4>& m) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t n = amps_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = m[0] * a0 + m[1] * a1;
      amps_[i + stride] = m[2] * a0 + m[3] * a1;
    }
  }
  return *this;
}

StateVector& StateVector::apply_ry(int qubit, double theta) {
  check_qubit(qubit);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t n = amps_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = c * a0 - s * a1;
      amps_[i + stride] = s * a0 + c * a1;
    }
  }
  return *this;
}

StateVector& StateVector::apply_rz(int qubit, double theta) {
  check_qubit(qubit);
  const Complex lo = std::polar(1.0, -theta / 2);
  const Complex hi = std::polar(1.0, theta / 2);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] *= (i & bit) ? hi : lo;
  }
  return *this;
}

StateVector& StateVector::apply_h(int qubit) {
  const double r = 1.0 / std::sqrt(2.0);
  return apply_single(qubit, {r, r, r, -r});
}

StateVector& StateVector::apply_x(int qubit) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
  return *this;
}

StateVector& StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    fail(ErrorCode::kInvalidArgument, "CNOT control equals target");
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
  return *this;
}

StateVector& StateVector::apply_cswap(int control, int a, int b) {
  check_qubit(control);
  check_qubit(a);
  check_qubit(b);
  if (control == a || control == b || a == b) {
    fail(ErrorCode::kInvalidArgument, "CSWAP needs three distinct qubits");
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t abit = std::size_t{1} << a;
  const std::size_t bbit = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    // Visit each (a=1,b=0) <-> (a=0,b=1) pair once.
    if ((i & cbit) && (i & abit) && !(i & bbit)) {
      std::swap(amps_[i], amps_[(i & ~abit) | bbit]);
    }
  }
  return *this;
}

StateVector& StateVector::apply_unitary(std::span<const int> qubits,
                                        const UnitaryMatrix& u) {
  const std::size_t k = qubits.size();
  if (k == 0 || u.dim() != (std::size_t{1} << k)) {
    fail(ErrorCode::kDimensionMismatch,
         "unitary of dimension " + std::to_string(u.dim()) +
             " does not act on " + std::to_string(k) + " qubits");
  }
  std::size_t mask = 0;
  for (int q : qubits) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    if (mask & bit) {
      fail(ErrorCode::kInvalidArgument, "duplicate qubit in apply_unitary");
    }
    mask |= bit;
  }

  const std::size_t sub = u.dim();
  std::vector<std::size_t> offsets(sub, 0);
  for (std::size_t local = 0; local < sub; ++local) {
    for (std::size_t j = 0; j < k; ++j) {
      if (local & (std::size_t{1} << j)) {
        offsets[local] |= std::size_t{1} << qubits[j];
      }
    }
  }

  std::vector<Complex> in(sub);
  const auto m = u.entries();
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t r = 0; r < sub; ++r) in[r] = amps_[base | offsets[r]];
    for (std::size_t r = 0; r < sub; ++r) {
      Complex acc = 0.0;
      const Complex* row = &m[r * sub];
      for (std::size_t c = 0; c < sub; ++c) acc += row[c] * in[c];
      amps_[base | offsets[r]] = acc;
    }
  }
  return *this;
}

double StateVector::prob_zero(int qubit) const {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) p += std::norm(amps_[i]);
  }
  return std::min(1.0, std::max(0.0, p));
}

// ---------------------------------------------------------------------------
// Free functions

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    fail(ErrorCode::kDimensionMismatch,
         "fidelity between states of different widths");
  }
  Complex overlap = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
  return std::min(1.0, std::norm(overlap));
}

std::int64_t sample_zero_count(double p0, std::int64_t shots,
                               std::uint64_t seed) {
  if (shots < 1) fail(ErrorCode::kInvalidArgument, "shots must be >= 1");
  SplitMix64 rng(seed);
  std::int64_t zeros = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < p0) ++zeros;
  }
  return zeros;
}

MeasurementResult sample_measure(const StateVector& state, int qubit,
                                 std::int64_t shots, std::uint64_t seed) {
  MeasurementResult r;
  r.exact_p0 = state.prob_zero(qubit);
  r.shots = shots;
  r.zero_count = sample_zero_count(r.exact_p0, shots, seed);
  return r;
}

MeasurementResult measure(const StateVector& state, int qubit,
                          const SamplingMode& mode) {
  if (mode.is_exact()) {
    return {0, 0, state.prob_zero(qubit)};
  }
  return sample_measure(state, qubit, mode.shots, mode.seed);
}

}  // namespace qucnn
