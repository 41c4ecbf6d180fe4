#include "ehrkit/lattice.hpp"

#include <algorithm>

namespace ehrkit::exact {

Int int_det(const std::vector<IntVec>& cols) {
  size_t n = cols.size();
  for (const auto& c : cols)
    if (c.size() != n) throw std::invalid_argument("int_det: not square");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination, row-major copy.
  std::vector<IntVec> m(n, IntVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = cols[j][i];
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

HnfResult hermite_normal_form(const std::vector<IntVec>& cols) {
  HnfResult res;
  res.h = cols;
  size_t m = cols.size();
  size_t n = m == 0 ? 0 : cols[0].size();
  for (const auto& c : cols)
    if (c.size() != n) throw std::invalid_argument("hnf: ragged columns");
  res.u.assign(m, IntVec(m, Int(0)));
  for (size_t j = 0; j < m; ++j) res.u[j][j] = 1;

  auto col_sub = [&](size_t dst, size_t src, const Int& q) {
    // column dst -= q * column src, mirrored on U
    for (size_t i = 0; i < n; ++i) res.h[dst][i] -= q * res.h[src][i];
    for (size_t i = 0; i < m; ++i) res.u[dst][i] -= q * res.u[src][i];
  };
  auto col_neg = [&](size_t j) {
    for (size_t i = 0; i < n; ++i) res.h[j][i] = -res.h[j][i];
    for (size_t i = 0; i < m; ++i) res.u[j][i] = -res.u[j][i];
  };

  size_t c = 0;
  for (size_t r = 0; r < n && c < m; ++r) {
    // chip away at row r among columns >= c until at most one nonzero remains
    while (true) {
      size_t best = m;
      for (size_t j = c; j < m; ++j) {
        if (res.h[j][r] == 0) continue;
        if (best == m || abs_int(res.h[j][r]) < abs_int(res.h[best][r])) best = j;
      }
      if (best == m) break;  // row has no pivot
      bool others = false;
      for (size_t j = c; j < m; ++j) {
        if (j == best || res.h[j][r] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), res.h[j][r].get_mpz_t(), res.h[best][r].get_mpz_t());
        if (q != 0) col_sub(j, best, q);
        if (res.h[j][r] != 0) others = true;
      }
      if (!others) {
        if (best != c) {
          std::swap(res.h[best], res.h[c]);
          std::swap(res.u[best], res.u[c]);
        }
        if (res.h[c][r] < 0) col_neg(c);
        // reduce entries left of the pivot into [0, pivot)
        for (size_t j = 0; j < c; ++j) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), res.h[j][r].get_mpz_t(), res.h[c][r].get_mpz_t());
          if (q != 0) col_sub(j, c, q);
        }
        ++c;
        break;
      }
    }
  }
  return res;
}

IntSolveResult solve_integer_system(const std::vector<IntVec>& rows, const IntVec& e) {
  size_t k = rows.size();
  if (e.size() != k) throw std::invalid_argument("solve_integer_system: rhs size");
  size_t n = k == 0 ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != n) throw std::invalid_argument("solve_integer_system: ragged rows");

  // columns of E
  std::vector<IntVec> cols(n, IntVec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) cols[j][i] = rows[i][j];

  auto hnf = hermite_normal_form(cols);

  IntSolveResult out;
  // pivot of column c = first nonzero entry (staircase)
  std::vector<size_t> pivot_row;
  size_t ncols_nonzero = 0;
  for (size_t cidx = 0; cidx < n; ++cidx) {
    size_t r = 0;
    while (r < k && hnf.h[cidx][r] == 0) ++r;
    if (r == k) break;  // zero columns trail
    pivot_row.push_back(r);
    ++ncols_nonzero;
  }
  for (size_t cidx = ncols_nonzero; cidx < n; ++cidx) out.kernel.push_back(hnf.u[cidx]);

  // forward solve H t = e over the integers
  IntVec t(n, Int(0));
  IntVec resid = e;
  bool ok = true;
  for (size_t cidx = 0; cidx < ncols_nonzero && ok; ++cidx) {
    size_t r = pivot_row[cidx];
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), resid[r].get_mpz_t(),
                hnf.h[cidx][r].get_mpz_t());
    if (rem != 0) {
      ok = false;
      break;
    }
    t[cidx] = q;
    for (size_t i = 0; i < k; ++i) resid[i] -= q * hnf.h[cidx][i];
  }
  if (ok)
    for (size_t i = 0; i < k; ++i)
      if (resid[i] != 0) ok = false;
  out.solvable = ok;
  if (ok) {
    out.x0.assign(n, Int(0));
    for (size_t cidx = 0; cidx < n; ++cidx)
      for (size_t i = 0; i < n; ++i) out.x0[i] += t[cidx] * hnf.u[cidx][i];
  }
  return out;
}

std::vector<IntVec> int_kernel(const std::vector<IntVec>& rows, size_t n) {
  size_t k = rows.size();
  std::vector<IntVec> cols(n, IntVec(k));
  for (size_t i = 0; i < k; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("int_kernel: ragged rows");
    for (size_t j = 0; j < n; ++j) cols[j][i] = rows[i][j];
  }
  auto hnf = hermite_normal_form(cols);
  std::vector<IntVec> out;
  for (size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (size_t i = 0; i < k; ++i)
      if (hnf.h[j][i] != 0) zero = false;
    if (zero) out.push_back(hnf.u[j]);
  }
  return out;
}

namespace {

struct Gram {
  std::vector<RatVec> mu;  // mu[i][j], j < i
  RatVec norm;             // squared norms of the GS vectors
};

Gram gram_schmidt(const std::vector<IntVec>& b) {
  size_t m = b.size();
  Gram g;
  g.mu.assign(m, RatVec(m, Rat(0)));
  g.norm.assign(m, Rat(0));
  std::vector<RatVec> star(m);
  for (size_t i = 0; i < m; ++i) {
    RatVec v(b[i].size());
    for (size_t t = 0; t < v.size(); ++t) v[t] = Rat(b[i][t]);
    for (size_t j = 0; j < i; ++j) {
      Rat num = 0;
      for (size_t t = 0; t < v.size(); ++t) num += Rat(b[i][t]) * star[j][t];
      g.mu[i][j] = g.norm[j] == 0 ? Rat(0) : num / g.norm[j];
      for (size_t t = 0; t < v.size(); ++t) v[t] -= g.mu[i][j] * star[j][t];
    }
    Rat nn = 0;
    for (const auto& x : v) nn += x * x;
    g.norm[i] = nn;
    star[i] = std::move(v);
  }
  return g;
}

Int round_rat(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

}  // namespace

void lll_reduce(std::vector<IntVec>& cols) {
  size_t m = cols.size();
  if (m <= 1) return;
  Gram g = gram_schmidt(cols);
  size_t k = 1;
  const Rat delta(3, 4);
  while (k < m) {
    for (size_t j = k; j-- > 0;) {
      Int q = round_rat(g.mu[k][j]);
      if (q != 0) {
        for (size_t t = 0; t < cols[k].size(); ++t) cols[k][t] -= q * cols[j][t];
        g = gram_schmidt(cols);
      }
    }
    Rat lhs = g.norm[k];
    Rat rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(cols[k], cols[k - 1]);
      g = gram_schmidt(cols);
      k = k > 1 ? k - 1 : 1;
    }
  }
}

ShortVector barvinok_short_vector(const std::vector<IntVec>& cols) {
  size_t d = cols.size();
  if (d == 0) throw std::invalid_argument("short vector: empty basis");
  for (const auto& c : cols)
    if (c.size() != d) throw std::invalid_argument("short vector: not square");
  Int det = int_det(cols);
  if (det == 0) throw std::invalid_argument("short vector: singular basis");
  Int index = abs_int(det);
  if (index == 1) throw std::invalid_argument("already unimodular");

  RatMatrix U = RatMatrix::from_int_columns(cols);
  auto Uinv = invert(U);
  if (!Uinv) throw std::logic_error("short vector: inversion failed");

  // adjugate = det * U^{-1}, integer columns spanning index * (U^{-1} Z^d)
  std::vector<IntVec> basis(d, IntVec(d));
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < d; ++i) {
      Rat v = Rat(det) * Uinv->at(i, j);
      if (!is_integer(v)) throw std::logic_error("short vector: adjugate not integer");
      basis[j][i] = v.get_num();
    }
  lll_reduce(basis);

  // |gamma_i| <= index^(-1/d), checked exactly as |num|^d * index <= den^d
  auto within_bound = [&](const Rat& gi) {
    Int num = abs_int(gi.get_num());
    Int den = gi.get_den();
    Int lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d));
    lhs *= index;
    mpz_pow_ui(rhs.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d));
    return lhs <= rhs;
  };

  std::vector<ShortVector> found;
  auto consider = [&](const IntVec& coeff) {
    RatVec gamma(d, Rat(0));
    bool zero = true;
    for (size_t j = 0; j < d; ++j) {
      if (coeff[j] == 0) continue;
      zero = false;
      for (size_t i = 0; i < d; ++i) gamma[i] += Rat(coeff[j] * basis[j][i]);
    }
    if (zero) return;
    bool has_pos = false;
    for (auto& gi : gamma) {
      gi /= Rat(det);
      if (!within_bound(gi)) return;
      if (gi > 0) has_pos = true;
    }
    // require a positive coordinate: the signed decomposition step needs the
    // replacement vector written with at least one positive coefficient
    if (!has_pos) return;
    IntVec w(d, Int(0));
    for (size_t i = 0; i < d; ++i) {
      Rat wi = 0;
      for (size_t j = 0; j < d; ++j) wi += Rat(cols[j][i]) * gamma[j];
      if (!is_integer(wi)) throw std::logic_error("short vector: non-integer candidate");
      w[i] = wi.get_num();
    }
    found.push_back({std::move(w), std::move(gamma)});
  };

  // Complete coefficient box: gamma = (basis/det) c, so c = Binv gamma with
  // Binv = det * basis^{-1}; |c_i| <= (sum_j |Binv_ij|) * index^(-1/d).
  RatMatrix gb(d, d);
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < d; ++i) gb.at(i, j) = Rat(basis[j][i]) / Rat(det);
  auto binv = invert(gb);
  if (!binv) throw std::logic_error("short vector: basis inversion failed");
  std::vector<long> cap(d);
  for (size_t i = 0; i < d; ++i) {
    Rat s = 0;
    for (size_t j = 0; j < d; ++j) s += abs(binv->at(i, j));
    long t = 0;  // largest t with t^d * index <= s^d
    while (true) {
      Int lhs, rhs;
      Int tt(t + 1);
      mpz_pow_ui(lhs.get_mpz_t(), tt.get_mpz_t(), static_cast<unsigned long>(d));
      lhs *= index;
      Int num = s.get_num(), den = s.get_den();
      mpz_pow_ui(rhs.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d));
      Int denp;
      mpz_pow_ui(denp.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d));
      if (lhs * denp <= rhs)
        ++t;
      else
        break;
    }
    cap[i] = t;
  }
  {
    IntVec coeff(d, Int(0));
    std::vector<long> c(d);
    for (size_t i = 0; i < d; ++i) c[i] = -cap[i];
    while (true) {
      for (size_t i = 0; i < d; ++i) coeff[i] = c[i];
      consider(coeff);
      size_t i = 0;
      while (i < d && c[i] == cap[i]) c[i] = -cap[i], ++i;
      if (i == d) break;
      ++c[i];
    }
  }
  if (found.empty()) throw std::logic_error("short vector: search exhausted");

  // deterministic tie-break: lexicographically greatest w
  const ShortVector* best = &found[0];
  for (const auto& cand : found)
    if (lex_less(best->w, cand.w)) best = &cand;
  return *best;
}

}  // namespace ehrkit::exact
