// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

// File formats: MNIST IDX images, filter vector text files, CSV tables.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qucnn/classical.hpp"
#include "qucnn/encoding.hpp"

namespace qucnn {

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

struct MnistSet {
  std::vector<ImageGrid> images;
  std::size_t count() const noexcept { return images.size(); }
};

/// Reads the first `count` images of an IDX3 file (big-endian header: magic
/// 2051, count, rows, cols; then row-major unsigned bytes). Pixels are scaled
/// by 1/255. Throws kIo when the file cannot be opened and kData for a bad
/// magic number, truncation, or count beyond the header.
MnistSet load_mnist(const std::filesystem::path& path, std::size_t count);
MnistSet parse_mnist(const std::vector<unsigned char>& bytes,
                     std::size_t count);

/// Writes images as IDX3, pixels rounded to bytes.
void write_mnist(const std::filesystem::path& path,
                 const std::vector<ImageGrid>& images);

struct FilterVector {
  std::vector<double> values;  ///< Unit 2-norm.
  bool renormalized = false;   ///< Input norm was off by more than 1e-6.
};

/// One decimal real per line; blank lines ignored. Throws kData for
/// unparseable lines, a zero vector, or a length that is not a power of two.
FilterVector load_filter_vector(const std::filesystem::path& path);

/// Full-precision decimal (17 significant digits).
std::string format_real(double v);

/// Grid as rows of comma-separated values, no header.
void write_grid_csv(std::ostream& out, const Grid& grid);
void write_grid_csv(const std::filesystem::path& path, const Grid& grid);
Grid read_grid_csv(std::istream& in);
Grid read_grid_csv(const std::filesystem::path& path);

/// Header plus rows of preformatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace qucnn
