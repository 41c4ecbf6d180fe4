#include "ehrkit/barvinok.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ehrkit/lattice.hpp"
#include "ehrkit/matrix.hpp"

namespace ehrkit::barvinok {

namespace {

using exact::int_det;
using exact::int_kernel;
using exact::RatMatrix;
using polytope::Cone;

void for_each_subset(size_t m, size_t k, const std::function<void(const std::vector<size_t>&)>& body) {
  if (k > m) return;
  std::vector<size_t> idx(k);
  if (k == 0) {
    body(idx);
    return;
  }
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    body(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Column indices of the pivots of the row space: a coordinate subset on which
// the span of the rows projects isomorphically.
std::vector<size_t> pivot_columns(const std::vector<IntVec>& rows, size_t n) {
  RatMatrix m = RatMatrix::from_int_rows(rows);
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m.rows; ++c) {
    size_t sel = r;
    while (sel < m.rows && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    for (size_t j = 0; j < n; ++j) std::swap(m.at(r, j), m.at(sel, j));
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(r, c);
      for (size_t j = 0; j < n; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// A nonzero nonnegative integer combination of the generators vanishes iff
// some minimal support (a positive circuit) does; those have a rank-one
// kernel with all coordinates nonzero and of equal sign.
bool is_pointed(const std::vector<IntVec>& gens, size_t n) {
  size_t r = exact::rank_int(gens);
  bool pointed = true;
  for (size_t k = 2; k <= r + 1 && k <= gens.size() && pointed; ++k) {
    for_each_subset(gens.size(), k, [&](const std::vector<size_t>& idx) {
      if (!pointed) return;
      std::vector<IntVec> rows(n, IntVec(k));
      for (size_t d = 0; d < n; ++d)
        for (size_t t = 0; t < k; ++t) rows[d][t] = gens[idx[t]][d];
      auto ker = int_kernel(rows, k);
      if (ker.size() != 1) return;
      const IntVec& kap = ker[0];
      int sgn = 0;
      for (const auto& x : kap) {
        if (x == 0) return;
        int s = x > 0 ? 1 : -1;
        if (sgn == 0) sgn = s;
        if (s != sgn) return;
      }
      pointed = false;
    });
  }
  return pointed;
}

// Incremental placing triangulation of full-rank generators in R^k, inserting
// in descending lexicographic order. Returns simplices as sorted index sets.
std::vector<std::vector<size_t>> placing(const std::vector<IntVec>& gens, size_t k) {
  std::vector<size_t> order(gens.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return gens[b] < gens[a]; });

  std::vector<size_t> seed;
  std::vector<size_t> queue;
  std::vector<IntVec> picked;
  for (size_t i : order) {
    if (seed.size() < k) {
      picked.push_back(gens[i]);
      if (exact::rank_int(picked) == picked.size()) {
        seed.push_back(i);
        continue;
      }
      picked.pop_back();
    }
    queue.push_back(i);
  }
  if (seed.size() != k) throw std::logic_error("internal: generators do not span");
  std::sort(seed.begin(), seed.end());
  std::vector<std::vector<size_t>> simplices{seed};

  for (size_t ri : queue) {
    // boundary facets = (k-1)-subsets occurring in exactly one simplex
    std::map<std::vector<size_t>, std::pair<size_t, size_t>> census;  // facet -> (count, missing)
    for (const auto& simp : simplices)
      for (size_t drop = 0; drop < simp.size(); ++drop) {
        std::vector<size_t> facet;
        for (size_t t = 0; t < simp.size(); ++t)
          if (t != drop) facet.push_back(simp[t]);
        auto [it, fresh] = census.emplace(std::move(facet), std::make_pair(size_t{1}, simp[drop]));
        if (!fresh) ++it->second.first;
      }
    std::vector<std::vector<size_t>> fresh_simplices;
    for (const auto& [facet, info] : census) {
      if (info.first != 1) continue;
      std::vector<IntVec> rows;
      for (size_t f : facet) rows.push_back(gens[f]);
      auto ker = int_kernel(rows, k);
      if (ker.size() != 1) throw std::logic_error("internal: facet normal not unique");
      IntVec h = ker[0];
      Int side = dot(h, gens[info.second]);
      if (side == 0) throw std::logic_error("internal: degenerate simplex");
      if (side < 0) h = neg_vec(h);
      if (dot(h, gens[ri]) < 0) {
        std::vector<size_t> simp = facet;
        simp.push_back(ri);
        std::sort(simp.begin(), simp.end());
        fresh_simplices.push_back(std::move(simp));
      }
    }
    simplices.insert(simplices.end(), fresh_simplices.begin(), fresh_simplices.end());
  }
  return simplices;
}

void decompose_rec(const std::vector<IntVec>& gens, int sign, const IntVec& eta0,
                   const RatVec& apex, std::vector<SignedUnimodularCone>& out) {
  Int det = int_det(gens);
  if (det == 0) throw std::logic_error("internal: degenerate cone in decomposition");
  if (abs_int(det) == 1) {
    size_t d = gens.size();
    auto inv = exact::invert(RatMatrix::from_int_columns(gens));
    const RatMatrix& m = *inv;
    RatVec vnew = apex;
    for (size_t i = 0; i < d; ++i) {
      // sign of row i applied to the reference direction eta0 perturbed by
      // (e_1, ..., e_d) at decreasing infinitesimal scales
      Rat me(0);
      for (size_t j = 0; j < d; ++j) me += m.at(i, j) * Rat(eta0[j]);
      int s = 0;
      if (me != 0)
        s = me > 0 ? 1 : -1;
      else
        for (size_t j = 0; j < d; ++j)
          if (m.at(i, j) != 0) {
            s = m.at(i, j) > 0 ? 1 : -1;
            break;
          }
      if (s == 0) throw std::logic_error("internal: zero row in inverse");
      if (s < 0) {
        // facet i is open; an integral apex coordinate shifts it closed
        Rat ci(0);
        for (size_t j = 0; j < d; ++j) ci += m.at(i, j) * apex[j];
        if (is_integer(ci))
          for (size_t j = 0; j < d; ++j) vnew[j] += Rat(gens[i][j]);
      }
    }
    out.push_back(SignedUnimodularCone{sign, std::move(vnew), gens});
    return;
  }
  auto sv = exact::barvinok_short_vector(gens);
  IntVec w = primitive_vec(sv.w);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (sv.gamma[i] == 0) continue;
    std::vector<IntVec> child = gens;
    child[i] = w;
    decompose_rec(child, sv.gamma[i] > 0 ? sign : -sign, eta0, apex, out);
  }
}

// Extreme rays of { x : <row, x> <= 0 } for a row set of full rank n.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& rows, size_t n) {
  std::set<IntVec> rays;
  for_each_subset(rows.size(), n - 1, [&](const std::vector<size_t>& idx) {
    std::vector<IntVec> sub;
    for (size_t i : idx) sub.push_back(rows[i]);
    auto ker = int_kernel(sub, n);
    if (ker.size() != 1) return;
    IntVec r = primitive_vec(ker[0]);
    for (const IntVec& dir : {r, neg_vec(r)}) {
      bool ok = true;
      for (const auto& row : rows)
        if (dot(row, dir) > 0) {
          ok = false;
          break;
        }
      if (ok) rays.insert(dir);
    }
  });
  return {rays.begin(), rays.end()};
}

}  // namespace

std::vector<Cone> triangulate(const Cone& c) {
  size_t n = c.apex.size();
  std::vector<IntVec> gens;
  for (const auto& g : c.generators) {
    if (g.size() != n) throw std::invalid_argument("generator has wrong dimension");
    if (is_zero_vec(g)) throw std::invalid_argument("zero generator");
    gens.push_back(primitive_vec(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) return {c};
  if (!is_pointed(gens, n)) throw std::invalid_argument("cone is not pointed");

  size_t r = exact::rank_int(gens);
  std::vector<std::vector<size_t>> simplices;
  if (r == n) {
    simplices = placing(gens, n);
  } else {
    std::vector<size_t> piv = pivot_columns(gens, n);
    std::vector<IntVec> proj;
    for (const auto& g : gens) {
      IntVec q;
      for (size_t j : piv) q.push_back(g[j]);
      proj.push_back(std::move(q));
    }
    simplices = placing(proj, r);
  }

  std::vector<Cone> out;
  for (const auto& simp : simplices) {
    Cone sc;
    sc.apex = c.apex;
    for (size_t i : simp) sc.generators.push_back(gens[i]);
    out.push_back(std::move(sc));
  }
  std::sort(out.begin(), out.end(),
            [](const Cone& a, const Cone& b) { return a.generators < b.generators; });
  return out;
}

std::vector<SignedUnimodularCone> decompose_unimodular(const Cone& c) {
  size_t n = c.apex.size();
  if (c.generators.size() != n) throw std::invalid_argument("cone is not simplicial");
  for (const auto& g : c.generators)
    if (g.size() != n) throw std::invalid_argument("generator has wrong dimension");
  if (n == 0 || int_det(c.generators) == 0) throw std::invalid_argument("cone is not simplicial");
  IntVec eta0(n, Int(0));
  for (const auto& g : c.generators) eta0 = add_vec(eta0, g);
  std::vector<SignedUnimodularCone> out;
  decompose_rec(c.generators, 1, eta0, c.apex, out);
  return out;
}

rgf::ShortRGF cone_rgf(const SignedUnimodularCone& c) {
  size_t d = c.generators.size();
  if (c.apex.size() != d || d == 0) throw std::invalid_argument("bad unimodular cone");
  if (abs_int(int_det(c.generators)) != 1)
    throw std::logic_error("internal: cone is not unimodular");
  auto inv = exact::invert(RatMatrix::from_int_columns(c.generators));
  IntVec p(d, Int(0));
  for (size_t i = 0; i < d; ++i) {
    Rat ci(0);
    for (size_t j = 0; j < d; ++j) ci += inv->at(i, j) * c.apex[j];
    Int mi = ceil_rat(ci);
    for (size_t j = 0; j < d; ++j) p[j] += mi * c.generators[i][j];
  }
  rgf::ShortRGF f;
  f.dim = d;
  f.terms.push_back(rgf::Term{Rat(c.sign), std::move(p), c.generators});
  return f;
}

rgf::ShortRGF lattice_rgf(size_t n, const std::vector<IntVec>& ineq_lhs, const IntVec& ineq_rhs,
                          const std::vector<IntVec>& eq_lhs, const IntVec& eq_rhs) {
  if (ineq_lhs.size() != ineq_rhs.size() || eq_lhs.size() != eq_rhs.size())
    throw std::invalid_argument("row/rhs size mismatch");
  for (const auto& r : ineq_lhs)
    if (r.size() != n) throw std::invalid_argument("row has wrong dimension");
  for (const auto& r : eq_lhs)
    if (r.size() != n) throw std::invalid_argument("row has wrong dimension");

  if (!eq_lhs.empty()) {
    auto sol = exact::solve_integer_system(eq_lhs, eq_rhs);
    if (!sol.solvable) return rgf::zero_rgf(n);
    size_t n2 = sol.kernel.size();
    if (n2 == 0) {
      for (size_t i = 0; i < ineq_lhs.size(); ++i)
        if (dot(ineq_lhs[i], sol.x0) > ineq_rhs[i]) return rgf::zero_rgf(n);
      return rgf::monomial(n, Rat(1), sol.x0);
    }
    // x = x0 + K y with K the kernel basis: recurse on the y system
    std::vector<IntVec> c2;
    IntVec b2;
    for (size_t i = 0; i < ineq_lhs.size(); ++i) {
      IntVec row(n2);
      for (size_t j = 0; j < n2; ++j) row[j] = dot(ineq_lhs[i], sol.kernel[j]);
      Int rb = ineq_rhs[i] - dot(ineq_lhs[i], sol.x0);
      if (is_zero_vec(row)) {
        if (rb < 0) return rgf::zero_rgf(n);
        continue;
      }
      c2.push_back(std::move(row));
      b2.push_back(std::move(rb));
    }
    rgf::ShortRGF sub = lattice_rgf(n2, c2, b2, {}, {});
    rgf::MonomialMap mm;
    mm.target_dim = n;
    mm.images = sol.kernel;
    return rgf::shift(rgf::substitute_monomial(sub, mm), sol.x0);
  }

  std::vector<IntVec> c;
  IntVec b;
  for (size_t i = 0; i < ineq_lhs.size(); ++i) {
    if (is_zero_vec(ineq_lhs[i])) {
      if (ineq_rhs[i] < 0) return rgf::zero_rgf(n);
      continue;
    }
    c.push_back(ineq_lhs[i]);
    b.push_back(ineq_rhs[i]);
  }
  if (n == 0) return rgf::monomial(0, Rat(1), IntVec{});
  if (exact::rank_int(c) < n) throw std::logic_error("internal: polyhedron is not pointed");

  std::vector<RatVec> verts;
  for_each_subset(c.size(), n, [&](const std::vector<size_t>& idx) {
    std::vector<IntVec> rows;
    RatVec rhs;
    for (size_t i : idx) {
      rows.push_back(c[i]);
      rhs.emplace_back(b[i]);
    }
    auto x = exact::solve_linear(RatMatrix::from_int_rows(rows), rhs);
    if (!x) return;
    for (size_t i = 0; i < c.size(); ++i)
      if (dot_rat(c[i], *x) > Rat(b[i])) return;
    verts.push_back(std::move(*x));
  });
  std::sort(verts.begin(), verts.end(), lex_less_rat);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) return rgf::zero_rgf(n);

  std::vector<IntVec> rays = extreme_rays(c, n);

  std::vector<IntVec> eq2, c3;
  IntVec e2, b3;
  for (size_t i = 0; i < c.size(); ++i) {
    bool implicit = true;
    for (const auto& v : verts)
      if (dot_rat(c[i], v) != Rat(b[i])) {
        implicit = false;
        break;
      }
    if (implicit)
      for (const auto& r : rays)
        if (dot(c[i], r) != 0) {
          implicit = false;
          break;
        }
    if (implicit) {
      eq2.push_back(c[i]);
      e2.push_back(b[i]);
    } else {
      c3.push_back(c[i]);
      b3.push_back(b[i]);
    }
  }
  if (!eq2.empty()) return lattice_rgf(n, c3, b3, eq2, e2);

  rgf::ShortRGF acc = rgf::zero_rgf(n);
  for (const auto& v : verts) {
    std::vector<IntVec> tight;
    for (size_t i = 0; i < c.size(); ++i)
      if (dot_rat(c[i], v) == Rat(b[i])) tight.push_back(c[i]);
    std::vector<IntVec> gens = extreme_rays(tight, n);
    IntVec eta0(n, Int(0));
    for (const auto& g : gens) eta0 = add_vec(eta0, g);
    Cone tc;
    tc.apex = v;
    tc.generators = gens;
    for (const auto& simp : triangulate(tc)) {
      std::vector<SignedUnimodularCone> leaves;
      decompose_rec(simp.generators, 1, eta0, v, leaves);
      for (const auto& leaf : leaves) {
        rgf::ShortRGF piece = cone_rgf(leaf);
        acc.terms.insert(acc.terms.end(), piece.terms.begin(), piece.terms.end());
      }
    }
  }
  return rgf::canonical(acc);
}

rgf::ShortRGF polytope_rgf(const polytope::Polytope& p) {
  if (p.empty) return rgf::zero_rgf(p.dim);
  return lattice_rgf(p.dim, p.lhs, p.rhs, {}, {});
}

}  // namespace ehrkit::barvinok
