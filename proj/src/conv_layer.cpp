// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/conv_layer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <string>
#include <thread>

#include "qucnn/error.hpp"
#include "qucnn/rng.hpp"

namespace qucnn {

FilterParams::FilterParams(int nq, int reps)
    : num_qubits(nq),
      n_reps(reps),
      thetas(static_cast<std::size_t>(2) * std::max(nq, 0) * std::max(reps, 0),
             0.0) {
  validate();
}

FilterParams::FilterParams(int nq, int reps, std::vector<double> t)
    : num_qubits(nq), n_reps(reps), thetas(std::move(t)) {
  validate();
}

void FilterParams::validate() const {
  if (num_qubits < 1 || n_reps < 1) {
    fail(ErrorCode::kInvalidArgument,
         "filter needs at least one qubit and one repetition");
  }
  const std::size_t want = static_cast<std::size_t>(2) * n_reps * num_qubits;
  if (thetas.size() != want) {
    fail(ErrorCode::kInvalidArgument,
         "filter expects " + std::to_string(want) + " angles, got " +
             std::to_string(thetas.size()));
  }
}

StateVector ansatz_state(const FilterParams& params) {
  params.validate();
  StateVector s(params.num_qubits);
  for (int r = 0; r < params.n_reps; ++r) {
    for (int q = 0; q < params.num_qubits; ++q) {
      s.apply_ry(q, params.thetas[params.index(r, RotationLayer::kRY, q)]);
    }
    for (int q = 0; q < params.num_qubits; ++q) {
      s.apply_rz(q, params.thetas[params.index(r, RotationLayer::kRZ, q)]);
    }
    for (int q = 0; q + 1 < params.num_qubits; ++q) s.apply_cnot(q, q + 1);
  }
  return s;
}

FilterState build_filter_state(const FilterParams& params) {
  StateVector s = ansatz_state(params);
  return FilterState(params, std::move(s));
}

FilterState filter_from_unitary(UnitaryMatrix u) {
  StateVector s(u.num_qubits());
  std::vector<int> qubits(u.num_qubits());
  for (int q = 0; q < u.num_qubits(); ++q) qubits[q] = q;
  s.apply_unitary(qubits, u);
  return FilterState(std::move(u), std::move(s));
}

FilterState filter_from_vector(const std::vector<double>& unit) {
  return filter_from_unitary(preparation_unitary(unit));
}

StateVector swap_test_register(const StateVector& filter,
                               const StateVector& data, int extra_qubits) {
  const int k = filter.num_qubits();
  if (data.num_qubits() != k) {
    fail(ErrorCode::kDimensionMismatch,
         "SWAP test needs equal widths (filter " + std::to_string(k) +
             ", data " + std::to_string(data.num_qubits()) + ")");
  }
  StateVector reg = StateVector::tensor(
      StateVector::tensor(data, filter), StateVector(1));
  if (extra_qubits > 0) {
    reg = StateVector::tensor(StateVector(extra_qubits), reg);
  }
  reg.apply_h(0);
  for (int i = 0; i < k; ++i) reg.apply_cswap(0, 1 + i, 1 + k + i);
  reg.apply_h(0);
  return reg;
}

MeasurementResult swap_test(const StateVector& filter, const StateVector& data,
                            const SamplingMode& mode) {
  return measure(swap_test_register(filter, data), 0, mode);
}

MeasurementResult swap_test(const FilterState& filter, const EncodedPatch& data,
                            const SamplingMode& mode) {
  return swap_test(filter.realized(), data.state, mode);
}

std::uint64_t window_seed(std::uint64_t master, std::size_t filter_index,
                          std::size_t window_index) {
  return derive_seed(derive_seed(master, filter_index), window_index);
}

std::vector<FeatureMap> conv_forward(const ImageGrid& image,
                                     std::span<const FilterState> filters,
                                     const ConvOptions& options) {
  const GridShape shape =
      window_grid(image.height, image.width, options.geometry);
  const std::vector<Patch> patches = extract_patches(image, options.geometry);
  const int width = std::countr_zero(patches.front().values.size());
  for (const auto& f : filters) {
    if (f.num_qubits() != width) {
      fail(ErrorCode::kDimensionMismatch,
           "filter width does not match the window size");
    }
  }

  std::vector<FeatureMap> maps(filters.size());
  for (auto& m : maps) {
    m.rows = shape.rows;
    m.cols = shape.cols;
    m.cells.resize(patches.size());
  }

  const auto& mode = options.mode;
  auto evaluate = [&](std::size_t w) {
    const EncodedPatch enc = encode_patch(patches[w]);
    for (std::size_t f = 0; f < filters.size(); ++f) {
      SamplingMode local = mode;
      if (!mode.is_exact()) local.seed = window_seed(mode.seed, f, w);
      const MeasurementResult r = swap_test(filters[f], enc, local);
      FeatureCell& cell = maps[f].cells[w];
      cell.p0 = r.p0();
      cell.similarity = 2.0 * cell.p0 - 1.0;
      if (!mode.is_exact()) {
        cell.similarity = std::clamp(cell.similarity, 0.0, 1.0);
      }
      cell.degenerate = enc.source.degenerate;
      cell.shots_used = r.shots;
    }
  };

  const std::size_t n = patches.size();
  const int threads =
      std::clamp(options.threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    for (std::size_t w = 0; w < n; ++w) evaluate(w);
    return maps;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t w = next++; w < n; w = next++) evaluate(w);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return maps;
}

FeatureMap conv_forward(const ImageGrid& image, const FilterState& filter,
                        const ConvOptions& options) {
  return std::move(
      conv_forward(image, std::span<const FilterState>(&filter, 1), options)
          .front());
}

}  // namespace qucnn
