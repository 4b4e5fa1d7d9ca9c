// Copyright 2026 The QuCNN Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qucnn/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qucnn/error.hpp"

namespace qucnn {

namespace {

std::uint32_t read_be32(const std::vector<unsigned char>& b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                         static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(bytes, 4);
}

std::ifstream open_in(const std::filesystem::path& path,
                      std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::kData, "not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) {
    ++used;
  }
  if (used != s.size()) fail(ErrorCode::kData, "not a number: '" + s + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// MNIST

MnistSet parse_mnist(const std::vector<unsigned char>& bytes,
                     std::size_t count) {
  if (bytes.size() < 16) fail(ErrorCode::kData, "IDX header truncated");
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImageMagic) {
    fail(ErrorCode::kData, "not an image file (IDX magic " +
                               std::to_string(magic) + ", expected 2051)");
  }
  const std::uint32_t total = read_be32(bytes, 4);
  const std::uint32_t rows = read_be32(bytes, 8);
  const std::uint32_t cols = read_be32(bytes, 12);
  if (count > total) {
    fail(ErrorCode::kData, "requested " + std::to_string(count) +
                               " images but the file holds " +
                               std::to_string(total));
  }
  if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
    fail(ErrorCode::kData, "implausible IDX image dimensions");
  }
  const std::size_t per_image = std::size_t{rows} * cols;
  if (bytes.size() < 16 + per_image * count) {
    fail(ErrorCode::kData, "IDX file truncated");
  }
  MnistSet set;
  set.images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> px(per_image);
    const unsigned char* src = bytes.data() + 16 + i * per_image;
    for (std::size_t p = 0; p < per_image; ++p) px[p] = src[p] / 255.0;
    set.images.emplace_back(static_cast<int>(rows), static_cast<int>(cols),
                            std::move(px));
  }
  return set;
}

MnistSet load_mnist(const std::filesystem::path& path, std::size_t count) {
  auto in = open_in(path, std::ios::binary);
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
  return parse_mnist(bytes, count);
}

void write_mnist(const std::filesystem::path& path,
                 const std::vector<ImageGrid>& images) {
  auto out = open_out(path);
  const std::uint32_t rows = images.empty() ? 28 : images.front().height;
  const std::uint32_t cols = images.empty() ? 28 : images.front().width;
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(images.size()));
  write_be32(out, rows);
  write_be32(out, cols);
  for (const auto& img : images) {
    if (static_cast<std::uint32_t>(img.height) != rows ||
        static_cast<std::uint32_t>(img.width) != cols) {
      fail(ErrorCode::kInvalidArgument, "IDX images must share one shape");
    }
    for (double p : img.pixels) {
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(p * 255.0))));
    }
  }
  finish(out, path);
}

// ---------------------------------------------------------------------------
// Filter vectors

FilterVector load_filter_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  FilterVector f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    f.values.push_back(parse_real(line));
  }
  const std::size_t n = f.values.size();
  if (n < 2 || !std::has_single_bit(n)) {
    fail(ErrorCode::kData, "filter vector length " + std::to_string(n) +
                               " is not a power of two >= 2");
  }
  double n2 = 0.0;
  for (double v : f.values) n2 += v * v;
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    fail(ErrorCode::kData, "filter vector has zero or non-finite norm");
  }
  const double norm = std::sqrt(n2);
  f.renormalized = std::abs(norm - 1.0) > 1e-6;
  // Tiny deviations are still rescaled so downstream unit-norm checks hold.
  for (auto& v : f.values) v /= norm;
  return f;
}

// ---------------------------------------------------------------------------
// CSV

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_csv(std::ostream& out, const Grid& grid) {
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c) out << ',';
      out << format_real(grid.at(r, c));
    }
    out << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path, const Grid& grid) {
  auto out = open_out(path);
  write_grid_csv(out, grid);
  finish(out, path);
}

Grid read_grid_csv(std::istream& in) {
  Grid g;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (g.rows == 0) {
      g.cols = static_cast<int>(cells.size());
    } else if (static_cast<int>(cells.size()) != g.cols) {
      fail(ErrorCode::kData, "ragged CSV grid");
    }
    for (const auto& c : cells) g.values.push_back(parse_real(c));
    ++g.rows;
  }
  return g;
}

Grid read_grid_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid_csv(in);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto row_out = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  row_out(table.header);
  for (const auto& r : table.rows) row_out(r);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_out(path);
  write_csv(out, table);
  finish(out, path);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      t.header = split_line(line);
      first = false;
    } else {
      t.rows.push_back(split_line(line));
    }
  }
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

}  // namespace qucnn
