#include "ehrkit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace ehrkit::oracle {

namespace {

// Gaussian elimination on a dense square system; nullopt when singular.
std::optional<RatVec> solve_square(std::vector<RatVec> a, RatVec b) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

void each_subset(size_t m, size_t k, const std::function<void(const std::vector<size_t>&)>& body) {
  if (k > m) return;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    body(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

std::vector<RatVec> brute_vertices(const polytope::Polytope& p) {
  size_t d = p.dim;
  std::vector<RatVec> out;
  each_subset(p.lhs.size(), d, [&](const std::vector<size_t>& idx) {
    std::vector<RatVec> rows;
    RatVec rhs;
    for (size_t i : idx) {
      RatVec row(d);
      for (size_t j = 0; j < d; ++j) row[j] = Rat(p.lhs[i][j]);
      rows.push_back(std::move(row));
      rhs.push_back(Rat(p.rhs[i]));
    }
    auto x = solve_square(rows, rhs);
    if (!x) return;
    for (size_t i = 0; i < p.lhs.size(); ++i)
      if (dot_rat(p.lhs[i], *x) > Rat(p.rhs[i])) return;
    out.push_back(*x);
  });
  std::sort(out.begin(), out.end(), lex_less_rat);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Box {
  IntVec lo, hi;  // may be crossed when the polytope has no lattice points
};

Box lattice_box(const std::vector<RatVec>& verts, size_t d) {
  Box box;
  box.lo.assign(d, Int(0));
  box.hi.assign(d, Int(0));
  for (size_t j = 0; j < d; ++j) {
    Rat mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    box.lo[j] = ceil_rat(mn);
    box.hi[j] = floor_rat(mx);
  }
  return box;
}

}  // namespace

std::vector<IntVec> enumerate(const polytope::Polytope& p) {
  if (p.empty) return {};
  auto verts = brute_vertices(p);
  if (verts.empty()) return {};
  size_t d = p.dim;
  Box box = lattice_box(verts, d);
  for (size_t j = 0; j < d; ++j)
    if (box.lo[j] > box.hi[j]) return {};

  size_t m = p.lhs.size();
  // best[r][k] = least possible value of sum_{j >= k} a_rj x_j over the box
  std::vector<std::vector<Int>> best(m, std::vector<Int>(d + 1, Int(0)));
  for (size_t r = 0; r < m; ++r)
    for (size_t k = d; k-- > 0;) {
      const Int& c = p.lhs[r][k];
      best[r][k] = best[r][k + 1] + (c >= 0 ? c * box.lo[k] : c * box.hi[k]);
    }

  std::vector<IntVec> out;
  IntVec x(d, Int(0));
  std::vector<IntVec> partial(d + 1, IntVec(m, Int(0)));  // partial[k][r]
  std::function<void(size_t)> scan = [&](size_t k) {
    for (size_t r = 0; r < m; ++r)
      if (partial[k][r] + best[r][k] > p.rhs[r]) return;
    if (k == d) {
      out.push_back(x);
      return;
    }
    for (Int v = box.lo[k]; v <= box.hi[k]; ++v) {
      x[k] = v;
      for (size_t r = 0; r < m; ++r)
        partial[k + 1][r] = partial[k][r] + p.lhs[r][k] * v;
      scan(k + 1);
    }
  };
  scan(0);
  return out;
}

DenseSeries expand_dense(const rgf::ShortRGF& f, const IntVec& lo,
                         const IntVec& hi) {
  size_t d = f.dim;
  if (lo.size() != d || hi.size() != d)
    throw std::invalid_argument("window dimension mismatch");
  for (size_t j = 0; j < d; ++j)
    if (lo[j] > hi[j]) throw std::invalid_argument("window is empty");

  // Ascending direction: lexicographically dominant positive weights, so
  // <l, b> has the sign of b's first nonzero entry.
  Int maxabs = 1;
  for (const auto& t : f.terms)
    for (const auto& b : t.denoms)
      for (const auto& c : b) maxabs = std::max(maxabs, abs_int(c));
  Int m = Int(static_cast<long>(d)) * maxabs + 1;
  IntVec l(d, Int(1));
  for (size_t j = d; j-- > 1;) l[j - 1] = l[j] * m;

  Int lmax = dot(l, hi);
  DenseSeries out;
  out.lo = lo;
  out.hi = hi;

  for (const auto& term : f.terms) {
    Rat alpha = term.alpha;
    IntVec base = term.p;
    std::vector<IntVec> dens = term.denoms;
    for (auto& b : dens) {
      if (is_zero_vec(b)) throw std::invalid_argument("zero denominator vector");
      if (dot(l, b) < 0) {  // 1/(1-x^b) = -x^{-b}/(1-x^{-b})
        alpha = -alpha;
        base = sub_vec(base, b);
        b = neg_vec(b);
      }
    }
    std::function<void(size_t, IntVec)> walk = [&](size_t t, IntVec e) {
      if (dot(l, e) > lmax) return;
      if (t == dens.size()) {
        for (size_t j = 0; j < d; ++j)
          if (e[j] < lo[j] || e[j] > hi[j]) return;
        out.coefficients[e] += alpha;
        return;
      }
      for (IntVec cur = e;; cur = add_vec(cur, dens[t])) {
        if (dot(l, cur) > lmax) break;
        walk(t + 1, cur);
      }
    };
    walk(0, base);
  }
  for (auto it = out.coefficients.begin(); it != out.coefficients.end();)
    it = it->second == 0 ? out.coefficients.erase(it) : std::next(it);
  return out;
}

ehrhart::QuasiPolynomial brute_quasipolynomial(const polytope::Polytope& p) {
  size_t d = p.dim;
  auto verts = p.empty ? std::vector<RatVec>{} : brute_vertices(p);
  Int den(1);
  for (const auto& v : verts)
    for (const auto& c : v)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());

  auto count_at = [&](const Int& t) {
    polytope::Polytope q = p;
    for (auto& b : q.rhs) b *= t;
    return Int(static_cast<long>(enumerate(q).size()));
  };

  if (!den.fits_slong_p())
    throw std::invalid_argument("denominator too large for the brute-force oracle");

  ehrhart::QuasiPolynomial out;
  out.period = den;
  long dl = den.get_si();
  for (long i = 0; i < dl; ++i) {
    std::vector<RatVec> vand;
    RatVec rhs;
    for (size_t s = 0; s <= d; ++s) {
      Int t = Int(i) + Int(static_cast<long>(s)) * den;
      RatVec row(d + 1);
      Rat pw(1);
      for (size_t k = 0; k <= d; ++k) {
        row[k] = pw;
        pw *= Rat(t);
      }
      vand.push_back(std::move(row));
      rhs.push_back(Rat(count_at(t)));
    }
    auto coef = solve_square(vand, rhs);
    if (!coef) throw std::logic_error("internal: interpolation nodes collide");

    Int t = Int(i) + Int(static_cast<long>(d + 1)) * den;
    Rat val(0), pw(1);
    for (size_t k = 0; k <= d; ++k) {
      val += (*coef)[k] * pw;
      pw *= Rat(t);
    }
    if (val != Rat(count_at(t)))
      throw std::logic_error("internal: interpolation verification failed");
    out.constituents.push_back(*coef);
  }
  return out;
}

Int brute_min_period(const ehrhart::QuasiPolynomial& q) {
  size_t den = q.constituents.size();
  for (size_t n = 1; n <= den; ++n) {
    bool ok = true;
    for (size_t i = 0; i < den && ok; ++i)
      ok = q.constituents[i] == q.constituents[(i + n) % den];
    if (ok) return Int(static_cast<long>(n));
  }
  return Int(1);
}

}  // namespace ehrkit::oracle
