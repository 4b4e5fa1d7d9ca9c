// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// Amplitude encoding of image windows.
//
// A window of hh*ww pixels is flattened row-major: pixel (r, c) of the window
// becomes basis index r*ww + c of a log2(hh*ww)-qubit state.

#pragma once

#include <vector>

#include "qucnn/statevector.hpp"

namespace qucnn {

/// Row-major grayscale image with pixels in [0, 1].
struct ImageGrid {
  int height = 0;
  int width = 0;
  std::vector<double> pixels;

  ImageGrid() = default;
  /// Validates shape and pixel range; throws kData on violation.
  ImageGrid(int height, int width, std::vector<double> pixels);

  double at(int row, int col) const { return pixels[row * width + col]; }
};

struct Patch {
  int origin_row = 0;
  int origin_col = 0;
  std::vector<double> values;  ///< hh*ww values, row-major.
  bool degenerate = false;     ///< All values are zero.
};

struct WindowGeometry {
  int hh = 4;
  int ww = 4;
  int stride = 1;
};

/// Output grid shape for `geometry` over a height x width image.
struct GridShape {
  int rows = 0;
  int cols = 0;
};

GridShape window_grid(int height, int width, const WindowGeometry& geometry);

/// Row-major list of windows. Throws kInvalidArgument when hh*ww is not a
/// power of two, the stride is < 1, or the window is larger than the image.
std::vector<Patch> extract_patches(const ImageGrid& image,
                                   const WindowGeometry& geometry);

struct NormalizedPatch {
  std::vector<double> unit;  ///< Unit 2-norm; e_0 when degenerate.
  bool degenerate = false;
};

/// v / ||v||_2. Zero vectors map to the basis vector e_0 with the flag set.
NormalizedPatch normalize_patch(const std::vector<double>& values);

/// A unitary whose first column is `target` (a real unit vector of length
/// 2^k). Built from a Householder reflection. Throws kInvalidArgument when
/// ||target|| differs from 1 by more than 1e-10.
UnitaryMatrix preparation_unitary(const std::vector<double>& target);

struct EncodedPatch {
  StateVector state;
  Patch source;
};

/// normalize_patch, then preparation_unitary applied to |0...0>.
EncodedPatch encode_patch(Patch patch);

}  // namespace qucnn
