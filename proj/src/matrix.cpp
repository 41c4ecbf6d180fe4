#include "ehrkit/matrix.hpp"

namespace ehrkit::exact {

namespace {

// Row-reduce [A | RHS] in place.  Returns pivot columns of A.
std::vector<size_t> reduce(RatMatrix& m, size_t acols) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < acols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (size_t j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<RatMatrix> solve_linear_multi(const RatMatrix& A, const RatMatrix& RHS) {
  if (A.rows != A.cols || RHS.rows != A.rows)
    throw std::invalid_argument("solve_linear: shape mismatch");
  size_t n = A.rows, k = RHS.cols;
  RatMatrix m(n, n + k);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m.at(i, j) = A.at(i, j);
    for (size_t j = 0; j < k; ++j) m.at(i, n + j) = RHS.at(i, j);
  }
  auto pivots = reduce(m, n);
  if (pivots.size() < n) return std::nullopt;
  RatMatrix x(n, k);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) x.at(i, j) = m.at(i, n + j);
  return x;
}

std::optional<RatVec> solve_linear(const RatMatrix& A, const RatVec& rhs) {
  RatMatrix b(rhs.size(), 1);
  for (size_t i = 0; i < rhs.size(); ++i) b.at(i, 0) = rhs[i];
  auto x = solve_linear_multi(A, b);
  if (!x) return std::nullopt;
  RatVec out(A.cols);
  for (size_t i = 0; i < A.cols; ++i) out[i] = x->at(i, 0);
  return out;
}

std::optional<RatMatrix> invert(const RatMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("invert: not square");
  return solve_linear_multi(A, RatMatrix::identity(A.rows));
}

size_t rank(const RatMatrix& A) {
  RatMatrix m = A;
  return reduce(m, m.cols).size();
}

size_t rank_int(const std::vector<IntVec>& vecs) {
  if (vecs.empty()) return 0;
  return rank(RatMatrix::from_int_rows(vecs));
}

}  // namespace ehrkit::exact
