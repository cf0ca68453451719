#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/matrix.hpp"
#include "nst/core/vec.hpp"

namespace nst {

/// Matrix container formats:
///  - text: whitespace-delimited tokens, `rows cols` followed by rows*cols
///    entries in row-major order;
///  - binary: magic "NSTM", uint32 rows, uint32 cols, then rows*cols float64
///    entries in row-major order, all little-endian.
/// load_matrix() sniffs the magic bytes and accepts either.
namespace io {

inline constexpr char kMatrixMagic[4] = {'N', 'S', 'T', 'M'};

namespace detail {

inline void put_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw IoError("unexpected end of binary matrix header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void put_f64_le(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw IoError("unexpected end of binary matrix payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace detail

inline void save_matrix_binary(std::ostream& out, const DenseMatrix& m) {
  out.write(kMatrixMagic, 4);
  detail::put_u32_le(out, static_cast<std::uint32_t>(m.rows()));
  detail::put_u32_le(out, static_cast<std::uint32_t>(m.cols()));
  for (double v : m.data()) detail::put_f64_le(out, v);
  if (!out) throw IoError("failed writing binary matrix");
}

inline void save_matrix_binary(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_matrix_binary(out, m);
}

inline void save_matrix_text(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << buf << (c + 1 == m.cols() ? '\n' : ' ');
    }
  }
  if (!out) throw IoError("failed writing text matrix");
}

inline void save_matrix_text(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_matrix_text(out, m);
}

inline DenseMatrix load_matrix_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMatrixMagic, 4) != 0) {
    throw IoError("binary matrix magic bytes missing");
  }
  const std::uint32_t rows = detail::get_u32_le(in);
  const std::uint32_t cols = detail::get_u32_le(in);
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(rows) * cols; ++i) {
    entries.push_back(detail::get_f64_le(in));
  }
  return DenseMatrix::from_data(static_cast<int>(rows), static_cast<int>(cols),
                                std::move(entries));
}

inline DenseMatrix load_matrix_text(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw IoError("text matrix must start with 'rows cols'");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  double v;
  for (long long i = 0; i < rows * cols; ++i) {
    if (!(in >> v)) {
      throw IoError("text matrix ended after " + std::to_string(i) + " of " +
                    std::to_string(rows * cols) + " entries");
    }
    entries.push_back(v);
  }
  return DenseMatrix::from_data(static_cast<int>(rows), static_cast<int>(cols),
                                std::move(entries));
}

/// Loads either container format, distinguished by the magic bytes.
inline DenseMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::memcmp(magic, kMatrixMagic, 4) == 0) return load_matrix_binary(in);
  return load_matrix_text(in);
}

/// Text vector: whitespace-delimited entries, length inferred from content.
inline Vector load_vector_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Vector v;
  double x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw IoError("non-numeric content in vector file '" + path + "'");
  ensure_finite(v, "vector file");
  return v;
}

inline void save_vector_text(const std::string& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char buf[64];
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out << buf << '\n';
  }
  if (!out) throw IoError("failed writing vector file '" + path + "'");
}

}  // namespace io
}  // namespace nst
