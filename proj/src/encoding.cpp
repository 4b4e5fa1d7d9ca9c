// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/encoding.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "qucnn/error.hpp"

namespace qucnn {

ImageGrid::ImageGrid(int h, int w, std::vector<double> px)
    : height(h), width(w), pixels(std::move(px)) {
  if (h < 1 || w < 1) fail(ErrorCode::kData, "image must be non-empty");
  if (pixels.size() != static_cast<std::size_t>(h) * w) {
    fail(ErrorCode::kData, "pixel count does not match image shape");
  }
  for (double p : pixels) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorCode::kData, "pixel value outside [0, 1]");
    }
  }
}

GridShape window_grid(int height, int width, const WindowGeometry& g) {
  if (g.hh < 1 || g.ww < 1) {
    fail(ErrorCode::kInvalidArgument, "window must be at least 1x1");
  }
  const auto area = static_cast<unsigned>(g.hh * g.ww);
  if (!std::has_single_bit(area) || area < 2) {
    fail(ErrorCode::kInvalidArgument,
         "window size " + std::to_string(area) +
             " is not a power of two >= 2");
  }
  if (g.stride < 1) fail(ErrorCode::kInvalidArgument, "stride must be >= 1");
  if (g.hh > height || g.ww > width) {
    fail(ErrorCode::kInvalidArgument, "window larger than image");
  }
  return {(height - g.hh) / g.stride + 1, (width - g.ww) / g.stride + 1};
}

std::vector<Patch> extract_patches(const ImageGrid& image,
                                   const WindowGeometry& g) {
  const GridShape shape = window_grid(image.height, image.width, g);
  std::vector<Patch> out;
  out.reserve(static_cast<std::size_t>(shape.rows) * shape.cols);
  for (int i = 0; i < shape.rows; ++i) {
    for (int j = 0; j < shape.cols; ++j) {
      Patch p;
      p.origin_row = i * g.stride;
      p.origin_col = j * g.stride;
      p.values.reserve(static_cast<std::size_t>(g.hh) * g.ww);
      bool all_zero = true;
      for (int k = 0; k < g.hh; ++k) {
        for (int l = 0; l < g.ww; ++l) {
          const double v = image.at(p.origin_row + k, p.origin_col + l);
          all_zero = all_zero && v == 0.0;
          p.values.push_back(v);
        }
      }
      p.degenerate = all_zero;
      out.push_back(std::move(p));
    }
  }
  return out;
}

NormalizedPatch normalize_patch(const std::vector<double>& values) {
  NormalizedPatch out;
  double n2 = 0.0;
  for (double v : values) n2 += v * v;
  out.unit.assign(values.size(), 0.0);
  if (!(n2 > 0.0)) {
    out.degenerate = true;
    if (!out.unit.empty()) out.unit[0] = 1.0;
    return out;
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (std::size_t i = 0; i < values.size(); ++i) out.unit[i] = values[i] * inv;
  return out;
}

UnitaryMatrix preparation_unitary(const std::vector<double>& target) {
  const std::size_t dim = target.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    fail(ErrorCode::kDimensionMismatch,
         "target length must be a power of two >= 2");
  }
  double n2 = 0.0;
  for (double t : target) n2 += t * t;
  if (!(std::abs(std::sqrt(n2) - 1.0) <= 1e-10)) {
    fail(ErrorCode::kInvalidArgument, "target vector is not unit-norm");
  }

  // Householder H = I - 2 v v^T / (v^T v) with v = e0 + s t maps e0 to -s t.
  // Picking s = sign(t0) keeps v^T v >= 2; the overall factor -s then makes
  // the first column exactly t.
  const double s = target[0] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v(target.begin(), target.end());
  for (auto& x : v) x *= s;
  v[0] += 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;

  std::vector<Complex> e(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double h = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
      e[r * dim + c] = -s * h;
    }
  }
  return UnitaryMatrix(dim, std::move(e));
}

EncodedPatch encode_patch(Patch patch) {
  const NormalizedPatch n = normalize_patch(patch.values);
  const UnitaryMatrix u = preparation_unitary(n.unit);
  StateVector state(u.num_qubits());
  std::vector<int> qubits(u.num_qubits());
  for (int q = 0; q < u.num_qubits(); ++q) qubits[q] = q;
  state.apply_unitary(qubits, u);
  patch.degenerate = n.degenerate;
  return {std::move(state), std::move(patch)};
}

}  // namespace qucnn
