// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Classical reference convolutions, used to check the quantum layer.

#pragma once

#include <vector>

#include "qucnn/encoding.hpp"

namespace qucnn {

struct ClassicalFilter {
  int hh = 0;
  int ww = 0;
  std::vector<double> weights;  ///< Row-major, hh*ww values.
};

/// Dense row-major grid of reals.
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int r, int c) const { return values[r * cols + c]; }
};

/// y_ij = sum_kl w_kl x_{s i + k, s j + l} over the same windows, in the same
/// order, as extract_patches. Throws kInvalidArgument on bad geometry.
Grid classical_conv(const ImageGrid& image, const ClassicalFilter& filter,
                    int stride);

/// Per window (w . x_hat)^2 with x_hat the normalized window. All-zero
/// windows use x_hat = e_0, matching the quantum encoder. Requires a
/// unit-norm filter (within 1e-10), else kInvalidArgument.
Grid normalized_similarity_map(const ImageGrid& image,
                               const ClassicalFilter& filter, int stride);

struct ComparisonStats {
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  /// Pearson correlation; 1 when both grids are constant and equal, 0 when
  /// either is constant otherwise.
  double pearson_r = 0.0;
};

/// Throws kDimensionMismatch on unequal shapes.
ComparisonStats compare_maps(const Grid& a, const Grid& b);

}  // namespace qucnn
