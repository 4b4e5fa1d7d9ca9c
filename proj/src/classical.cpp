// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/classical.hpp"

#include <algorithm>
#include <cmath>

#include "qucnn/error.hpp"

namespace qucnn {

namespace {

WindowGeometry geometry_of(const ClassicalFilter& f, int stride) {
  if (f.weights.size() != static_cast<std::size_t>(f.hh) * f.ww) {
    fail(ErrorCode::kInvalidArgument, "filter weights do not match hh*ww");
  }
  return {f.hh, f.ww, stride};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Grid classical_conv(const ImageGrid& image, const ClassicalFilter& filter,
                    int stride) {
  const WindowGeometry g = geometry_of(filter, stride);
  const GridShape shape = window_grid(image.height, image.width, g);
  Grid out{shape.rows, shape.cols, {}};
  out.values.reserve(static_cast<std::size_t>(shape.rows) * shape.cols);
  for (int i = 0; i < shape.rows; ++i) {
    for (int j = 0; j < shape.cols; ++j) {
      double y = 0.0;
      for (int k = 0; k < filter.hh; ++k) {
        for (int l = 0; l < filter.ww; ++l) {
          y += filter.weights[k * filter.ww + l] *
               image.at(stride * i + k, stride * j + l);
        }
      }
      out.values.push_back(y);
    }
  }
  return out;
}

Grid normalized_similarity_map(const ImageGrid& image,
                               const ClassicalFilter& filter, int stride) {
  const WindowGeometry g = geometry_of(filter, stride);
  const double norm = std::sqrt(dot(filter.weights, filter.weights));
  if (!(std::abs(norm - 1.0) <= 1e-10)) {
    fail(ErrorCode::kInvalidArgument, "filter must be unit-norm");
  }
  const GridShape shape = window_grid(image.height, image.width, g);
  Grid out{shape.rows, shape.cols, {}};
  for (const Patch& p : extract_patches(image, g)) {
    const double overlap = dot(filter.weights, normalize_patch(p.values).unit);
    out.values.push_back(overlap * overlap);
  }
  return out;
}

ComparisonStats compare_maps(const Grid& a, const Grid& b) {
  if (a.rows != b.rows || a.cols != b.cols ||
      a.values.size() != b.values.size()) {
    fail(ErrorCode::kDimensionMismatch, "maps have different shapes");
  }
  ComparisonStats s;
  const std::size_t n = a.values.size();
  if (n == 0) return s;

  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::abs(a.values[i] - b.values[i]);
    s.max_abs_error = std::max(s.max_abs_error, e);
    s.mean_abs_error += e;
    mean_a += a.values[i];
    mean_b += b.values[i];
  }
  s.mean_abs_error /= static_cast<double>(n);
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);

  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a.values[i] - mean_a;
    const double db = b.values[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    s.pearson_r = (saa == sbb && s.max_abs_error == 0.0) ? 1.0 : 0.0;
  } else {
    s.pearson_r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  }
  return s;
}

}  // namespace qucnn
