#pragma once

// Dense rational matrices and exact Gaussian elimination.

#include <optional>

#include "ehrkit/rational.hpp"

namespace ehrkit::exact {

struct RatMatrix {
  size_t rows = 0, cols = 0;
  RatVec a;  // row-major

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

  Rat& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Rat& at(size_t i, size_t j) const { return a[i * cols + j]; }

  static RatMatrix identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RatMatrix from_int_columns(const std::vector<IntVec>& cols_in) {
    if (cols_in.empty()) return RatMatrix(0, 0);
    RatMatrix m(cols_in[0].size(), cols_in.size());
    for (size_t j = 0; j < cols_in.size(); ++j) {
      if (cols_in[j].size() != m.rows) throw std::invalid_argument("ragged columns");
      for (size_t i = 0; i < m.rows; ++i) m.at(i, j) = Rat(cols_in[j][i]);
    }
    return m;
  }

  static RatMatrix from_int_rows(const std::vector<IntVec>& rows_in) {
    if (rows_in.empty()) return RatMatrix(0, 0);
    RatMatrix m(rows_in.size(), rows_in[0].size());
    for (size_t i = 0; i < rows_in.size(); ++i) {
      if (rows_in[i].size() != m.cols) throw std::invalid_argument("ragged rows");
      for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = Rat(rows_in[i][j]);
    }
    return m;
  }
};

/// Solve A x = rhs exactly for square A. Returns nullopt when A is singular.
std::optional<RatVec> solve_linear(const RatMatrix& A, const RatVec& rhs);

/// Solve A X = RHS for square A and several right-hand sides at once.
std::optional<RatMatrix> solve_linear_multi(const RatMatrix& A, const RatMatrix& RHS);

std::optional<RatMatrix> invert(const RatMatrix& A);

/// Rank of an arbitrary rectangular matrix, by exact row reduction.
size_t rank(const RatMatrix& A);

/// Rank of a set of integer vectors.
size_t rank_int(const std::vector<IntVec>& vecs);

}  // namespace ehrkit::exact
