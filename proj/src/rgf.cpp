#include "ehrkit/rgf.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include "ehrkit/barvinok.hpp"

namespace ehrkit::rgf {

namespace {


bool term_less(const Term& a, const Term& b) {
  return std::tie(a.p, a.denoms) < std::tie(b.p, b.denoms);
}

void check_term(const ShortRGF& f, const Term& t) {
  if (t.p.size() != f.dim) throw std::invalid_argument("term exponent has wrong dimension");
  for (const auto& b : t.denoms) {
    if (b.size() != f.dim) throw std::invalid_argument("denominator has wrong dimension");
    if (is_zero_vec(b)) throw std::invalid_argument("zero denominator vector");
  }
}

// Orient b so its first nonzero entry is positive, using
// 1/(1-x^b) = -x^{-b}/(1-x^{-b}).
void orient_lex_positive(Term& t) {
  for (auto& b : t.denoms) {
    for (size_t i = 0; i < b.size(); ++i) {
      if (b[i] == 0) continue;
      if (b[i] < 0) {
        t.alpha = -t.alpha;
        t.p = sub_vec(t.p, b);
        b = neg_vec(b);
      }
      break;
    }
  }
  std::sort(t.denoms.begin(), t.denoms.end());
}

// Integer l with <l, v> != 0 for every v in avoid: first point of the moment
// curve (1, M, M^2, ...) clearing all of them.
IntVec generic_direction(const std::vector<IntVec>& avoid, size_t dim) {
  for (Int m = 1;; ++m) {
    IntVec l(dim);
    Int pw = 1;
    for (size_t i = 0; i < dim; ++i) {
      l[i] = pw;
      pw *= m;
    }
    bool ok = true;
    for (const auto& v : avoid)
      if (dot(l, v) == 0) {
        ok = false;
        break;
      }
    if (ok) return l;
  }
}

// ---- truncated power series over Rat, coefficients 0..order ----

using Series = std::vector<Rat>;

Series series_mul(const Series& a, const Series& b, size_t order) {
  Series c(order + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series series_inv(const Series& a, size_t order) {
  if (a.empty() || a[0] == 0) throw std::logic_error("series not invertible");
  Series b(order + 1, Rat(0));
  b[0] = 1 / a[0];
  for (size_t k = 1; k <= order; ++k) {
    Rat acc(0);
    for (size_t i = 1; i <= k && i < a.size(); ++i) acc += a[i] * b[k - i];
    b[k] = -acc / a[0];
  }
  return b;
}

// Generalized binomial C(e, i) for any integer e.
Rat binom_rat(const Int& e, size_t i) {
  Rat num(1);
  for (size_t t = 0; t < i; ++t) num *= Rat(e - Int(t));
  Rat den(1);
  for (size_t t = 2; t <= i; ++t) den *= Rat(Int(t));
  return num / den;
}

Series one_plus_s_pow(const Int& e, size_t order) {
  Series a(order + 1);
  for (size_t i = 0; i <= order; ++i) a[i] = binom_rat(e, i);
  return a;
}

// s / (1 - (1+s)^c) for c != 0, a unit series.
Series pole_unit(const Int& c, size_t order) {
  Series d(order + 1);
  for (size_t i = 0; i <= order; ++i) d[i] = -binom_rat(c, i + 1);
  return series_inv(d, order);
}

Int dot_tail(const IntVec& l, const IntVec& v, size_t from) {
  Int acc = 0;
  for (size_t i = from; i < v.size(); ++i) acc += l[i - from] * v[i];
  return acc;
}

// Polynomial in s whose coefficients are lists of terms in the kept variables.
using TermPoly = std::vector<std::vector<Term>>;

TermPoly poly_mul(const TermPoly& x, const TermPoly& y, size_t order) {
  TermPoly out(order + 1);
  for (size_t i = 0; i < x.size() && i <= order; ++i)
    for (const auto& tx : x[i])
      for (size_t j = 0; j < y.size() && i + j <= order; ++j)
        for (const auto& ty : y[j]) {
          Term t;
          t.alpha = tx.alpha * ty.alpha;
          t.p = add_vec(tx.p, ty.p);
          t.denoms = tx.denoms;
          t.denoms.insert(t.denoms.end(), ty.denoms.begin(), ty.denoms.end());
          out[i + j].push_back(std::move(t));
        }
  return out;
}

// The y -> 1 limit of f(z, y) along y = (1+s)^lambda, s -> 0, with z the
// first keep variables. Per term the pole order in s equals the number of
// denominators supported entirely on the y block; factors mixing z and y are
// expanded as finite sums of z-rational functions times s-polynomials. When
// check_poles is set (keep == 0 only) the negative s-powers are verified to
// cancel; for keep > 0 cancellation holds whenever the limit exists.
ShortRGF specialize_block(const ShortRGF& f, size_t keep, bool check_poles) {
  if (keep > f.dim) throw std::invalid_argument("keep exceeds dimension");
  size_t bd = f.dim - keep;

  std::vector<IntVec> avoid;
  for (const auto& t : f.terms)
    for (const auto& b : t.denoms) {
      bool z_zero = true;
      for (size_t i = 0; i < keep; ++i)
        if (b[i] != 0) z_zero = false;
      if (z_zero) avoid.emplace_back(b.begin() + static_cast<long>(keep), b.end());
    }
  IntVec lambda = generic_direction(avoid, bd);

  std::map<long, Rat> laurent;  // negative s-exponents, for the pole check
  ShortRGF out;
  out.dim = keep;

  for (const auto& t : f.terms) {
    std::vector<IntVec> pure_kept;
    std::vector<Int> pole_cs;
    std::vector<std::pair<IntVec, Int>> mixed;  // (z-part, <lambda, y-part>)
    for (const auto& b : t.denoms) {
      IntVec bz(b.begin(), b.begin() + static_cast<long>(keep));
      Int c = dot_tail(lambda, b, keep);
      bool z_zero = is_zero_vec(bz);
      bool y_zero = true;
      for (size_t i = keep; i < b.size(); ++i)
        if (b[i] != 0) y_zero = false;
      if (y_zero)
        pure_kept.push_back(bz);
      else if (z_zero)
        pole_cs.push_back(c);
      else
        mixed.emplace_back(bz, c);
    }
    size_t v = pole_cs.size();

    Series S = one_plus_s_pow(dot_tail(lambda, t.p, keep), v);
    for (const auto& c : pole_cs) S = series_mul(S, pole_unit(c, v), v);
    for (auto& x : S) x *= t.alpha;

    TermPoly P(v + 1);
    {
      Term base;
      base.alpha = 1;
      base.p = IntVec(t.p.begin(), t.p.begin() + static_cast<long>(keep));
      base.denoms = pure_kept;
      P[0].push_back(std::move(base));
    }
    for (const auto& [bz, c] : mixed) {
      Series q = one_plus_s_pow(c, v);
      q[0] -= 1;
      TermPoly F(v + 1);
      Series qpow(v + 1, Rat(0));
      qpow[0] = 1;
      for (size_t m = 0; m <= v; ++m) {
        if (m > 0) qpow = series_mul(qpow, q, v);
        for (size_t i = m; i <= v; ++i) {
          if (qpow[i] == 0) continue;
          Term piece;
          piece.alpha = qpow[i];
          piece.p = scale_vec(Int(m), bz);
          piece.denoms.assign(m + 1, bz);
          F[i].push_back(std::move(piece));
        }
      }
      P = poly_mul(P, F, v);
    }

    for (size_t j = 0; j <= v; ++j) {
      for (size_t a = 0; a <= j; ++a) {
        if (a >= S.size() || S[a] == 0) continue;
        size_t b = j - a;
        if (b >= P.size()) continue;
        for (const auto& pt : P[b]) {
          Rat alpha = S[a] * pt.alpha;
          if (alpha == 0) continue;
          if (j == v) {
            Term res;
            res.alpha = alpha;
            res.p = pt.p;
            res.denoms = pt.denoms;
            out.terms.push_back(std::move(res));
          } else if (check_poles) {
            laurent[static_cast<long>(j) - static_cast<long>(v)] += alpha;
          }
        }
      }
    }
  }

  if (check_poles)
    for (const auto& [e, a] : laurent)
      if (e < 0 && a != 0) throw std::domain_error("pole at the all-ones specialization");

  return canonical(out);
}

}  // namespace

ShortRGF zero_rgf(size_t dim) {
  ShortRGF f;
  f.dim = dim;
  return f;
}

ShortRGF monomial(size_t dim, const Rat& alpha, const IntVec& p) {
  ShortRGF f;
  f.dim = dim;
  if (p.size() != dim) throw std::invalid_argument("exponent has wrong dimension");
  if (alpha != 0) f.terms.push_back(Term{alpha, p, {}});
  return f;
}

ShortRGF canonical(const ShortRGF& f) {
  ShortRGF out;
  out.dim = f.dim;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    check_term(f, t);
    Term u = t;
    orient_lex_positive(u);
    out.terms.push_back(std::move(u));
  }
  std::sort(out.terms.begin(), out.terms.end(), term_less);
  std::vector<Term> merged;
  for (auto& t : out.terms) {
    if (!merged.empty() && merged.back().p == t.p && merged.back().denoms == t.denoms)
      merged.back().alpha += t.alpha;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.alpha == 0; }),
               merged.end());
  out.terms = std::move(merged);
  return out;
}

ShortRGF add(const ShortRGF& f, const ShortRGF& g) {
  if (f.dim != g.dim) throw std::invalid_argument("dimension mismatch");
  ShortRGF out;
  out.dim = f.dim;
  out.terms = f.terms;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return canonical(out);
}

ShortRGF scale(const ShortRGF& f, const Rat& c) {
  ShortRGF out;
  out.dim = f.dim;
  if (c == 0) return out;
  out.terms = f.terms;
  for (auto& t : out.terms) t.alpha *= c;
  return out;
}

ShortRGF shift(const ShortRGF& f, const IntVec& e) {
  if (e.size() != f.dim) throw std::invalid_argument("shift has wrong dimension");
  ShortRGF out = f;
  for (auto& t : out.terms) t.p = add_vec(t.p, e);
  return out;
}

ShortRGF normalize_direction(const ShortRGF& f, const IntVec& l) {
  if (l.size() != f.dim) throw std::invalid_argument("direction has wrong dimension");
  ShortRGF out = f;
  for (auto& t : out.terms)
    for (auto& b : t.denoms) {
      Int s = dot(l, b);
      if (s == 0) throw std::logic_error("direction orthogonal to a denominator");
      if (s < 0) {
        t.alpha = -t.alpha;
        t.p = sub_vec(t.p, b);
        b = neg_vec(b);
      }
    }
  return out;
}

ShortRGF substitute_monomial(const ShortRGF& f, const MonomialMap& phi) {
  if (phi.images.size() != f.dim) throw std::invalid_argument("map has wrong source dimension");
  for (const auto& im : phi.images)
    if (im.size() != phi.target_dim) throw std::invalid_argument("map image has wrong dimension");

  auto apply = [&](const IntVec& v) {
    IntVec out(phi.target_dim, Int(0));
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = 0; j < phi.target_dim; ++j) out[j] += v[i] * phi.images[i][j];
    return out;
  };

  std::vector<IntVec> killed;
  for (const auto& t : f.terms)
    for (const auto& b : t.denoms)
      if (is_zero_vec(apply(b))) killed.push_back(b);

  if (killed.empty()) {
    ShortRGF out;
    out.dim = phi.target_dim;
    for (const auto& t : f.terms) {
      Term u;
      u.alpha = t.alpha;
      u.p = apply(t.p);
      for (const auto& b : t.denoms) u.denoms.push_back(apply(b));
      out.terms.push_back(std::move(u));
    }
    return canonical(out);
  }

  // Some denominators land on exponent zero: route x_v -> z^{A e_v} w^{l_v}
  // through an auxiliary variable and take the w -> 1 limit.
  IntVec lambda = generic_direction(killed, f.dim);
  ShortRGF lifted;
  lifted.dim = phi.target_dim + 1;
  for (const auto& t : f.terms) {
    Term u;
    u.alpha = t.alpha;
    u.p = apply(t.p);
    u.p.push_back(dot(lambda, t.p));
    for (const auto& b : t.denoms) {
      IntVec bb = apply(b);
      bb.push_back(dot(lambda, b));
      u.denoms.push_back(std::move(bb));
    }
    lifted.terms.push_back(std::move(u));
  }
  return specialize_block(lifted, phi.target_dim, false);
}

Rat specialize_all_ones(const ShortRGF& f) {
  ShortRGF r = specialize_block(f, 0, true);
  return r.terms.empty() ? Rat(0) : r.terms[0].alpha;
}

ShortRGF specialize_partial(const ShortRGF& f, size_t keep_dims) {
  return specialize_block(f, keep_dims, false);
}

ShortRGF power_sum_rgf(size_t j, const Int& D) {
  if (D < 1) throw std::invalid_argument("D must be positive");
  ShortRGF g;
  g.dim = 1;
  g.terms.push_back(Term{Rat(1), int_vec({0}), {int_vec({1})}});
  g.terms.push_back(Term{Rat(-1), IntVec{D}, {int_vec({1})}});
  for (size_t step = 0; step < j; ++step) {
    ShortRGF next;
    next.dim = 1;
    for (const auto& t : g.terms) {
      // theta(alpha z^p / prod(1-z^b)) with theta = z d/dz:
      //   p * term + sum_t alpha b_t z^{p+b_t} / ((1-z^{b_t}) * all denoms)
      if (t.p[0] != 0) {
        Term u = t;
        u.alpha *= Rat(t.p[0]);
        next.terms.push_back(std::move(u));
      }
      for (size_t i = 0; i < t.denoms.size(); ++i) {
        Term u = t;
        u.alpha *= Rat(t.denoms[i][0]);
        u.p[0] += t.denoms[i][0];
        u.denoms.push_back(t.denoms[i]);
        next.terms.push_back(std::move(u));
      }
    }
    g = canonical(next);
  }
  return canonical(g);
}

namespace {

struct CoreKey {
  std::vector<IntVec> a, c;
  IntVec r;
  bool operator<(const CoreKey& o) const { return std::tie(a, c, r) < std::tie(o.a, o.c, o.r); }
};

std::map<CoreKey, ShortRGF>& core_memo() {
  static std::map<CoreKey, ShortRGF> m;
  return m;
}
std::mutex& core_mutex() {
  static std::mutex m;
  return m;
}

// Generating function of the projection lambda -> sum lambda_i a_i of
// { (lambda, mu) >= 0 integer : sum lambda_i a_i - sum mu_j c_j = r }.
ShortRGF hadamard_core(const std::vector<IntVec>& A, const std::vector<IntVec>& C,
                       const IntVec& r, size_t dim) {
  CoreKey key{A, C, r};
  {
    std::lock_guard<std::mutex> lk(core_mutex());
    auto it = core_memo().find(key);
    if (it != core_memo().end()) return it->second;
    CoreKey swapped{C, A, neg_vec(r)};
    it = core_memo().find(swapped);
    if (it != core_memo().end()) return shift(it->second, r);
  }

  size_t k1 = A.size(), k2 = C.size(), n = k1 + k2;
  ShortRGF res;
  if (n == 0) {
    res = is_zero_vec(r) ? monomial(dim, Rat(1), IntVec(dim, Int(0))) : zero_rgf(dim);
  } else {
    std::vector<IntVec> ineq_lhs;
    for (size_t t = 0; t < n; ++t) {
      IntVec row(n, Int(0));
      row[t] = -1;
      ineq_lhs.push_back(std::move(row));
    }
    IntVec ineq_rhs(n, Int(0));
    std::vector<IntVec> eq_lhs;
    for (size_t d = 0; d < dim; ++d) {
      IntVec row(n);
      for (size_t t = 0; t < k1; ++t) row[t] = A[t][d];
      for (size_t t = 0; t < k2; ++t) row[k1 + t] = -C[t][d];
      eq_lhs.push_back(std::move(row));
    }
    ShortRGF aux = barvinok::lattice_rgf(n, ineq_lhs, ineq_rhs, eq_lhs, r);
    MonomialMap proj;
    proj.target_dim = dim;
    for (size_t t = 0; t < k1; ++t) proj.images.push_back(A[t]);
    for (size_t t = 0; t < k2; ++t) proj.images.emplace_back(dim, Int(0));
    res = substitute_monomial(aux, proj);
  }

  std::lock_guard<std::mutex> lk(core_mutex());
  core_memo().emplace(std::move(key), res);
  return res;
}

}  // namespace

ShortRGF hadamard(const ShortRGF& g1, const ShortRGF& g2, const Direction& l) {
  if (g1.dim != g2.dim) throw std::invalid_argument("dimension mismatch");
  if (l.l.size() != g1.dim) throw std::invalid_argument("direction has wrong dimension");
  ShortRGF f1 = normalize_direction(canonical(g1), l.l);
  ShortRGF f2 = normalize_direction(canonical(g2), l.l);
  ShortRGF out;
  out.dim = g1.dim;

  // Monomial terms only ever meet at equal exponents, so match them by a
  // sorted sweep instead of the quadratic pair loop.
  std::vector<const Term*> mono1, gen1, mono2, gen2;
  for (const auto& t : f1.terms) (t.denoms.empty() ? mono1 : gen1).push_back(&t);
  for (const auto& t : f2.terms) (t.denoms.empty() ? mono2 : gen2).push_back(&t);
  auto by_p = [](const Term* a, const Term* b) { return a->p < b->p; };
  std::sort(mono1.begin(), mono1.end(), by_p);
  std::sort(mono2.begin(), mono2.end(), by_p);
  for (size_t i = 0, j = 0; i < mono1.size() && j < mono2.size();) {
    if (mono1[i]->p < mono2[j]->p) {
      ++i;
    } else if (mono2[j]->p < mono1[i]->p) {
      ++j;
    } else {
      out.terms.push_back({Rat(mono1[i]->alpha * mono2[j]->alpha), mono1[i]->p, {}});
      ++i;
      ++j;
    }
  }

  auto cross = [&](const Term& t1, const Term& t2) {
    ShortRGF core = hadamard_core(t1.denoms, t2.denoms, sub_vec(t2.p, t1.p), out.dim);
    ShortRGF piece = scale(shift(core, t1.p), t1.alpha * t2.alpha);
    out.terms.insert(out.terms.end(), piece.terms.begin(), piece.terms.end());
  };
  for (const Term* t1 : mono1)
    for (const Term* t2 : gen2) cross(*t1, *t2);
  for (const Term* t1 : gen1)
    for (const Term* t2 : mono2) cross(*t1, *t2);
  for (const Term* t1 : gen1)
    for (const Term* t2 : gen2) cross(*t1, *t2);
  return canonical(out);
}

std::vector<ShortRGF> hadamard_z(const std::vector<ShortRGF>& tcoeffs, const ShortRGF& kernel,
                                 const Direction& l) {
  std::vector<ShortRGF> out;
  out.reserve(tcoeffs.size());
  for (const auto& f : tcoeffs) out.push_back(hadamard(f, kernel, l));
  return out;
}

bool equals_laurent(const ShortRGF& g1, const ShortRGF& g2) {
  if (g1.dim != g2.dim) throw std::invalid_argument("dimension mismatch");
  ShortRGF h = add(g1, scale(g2, Rat(-1)));
  if (h.terms.empty()) return true;
  std::vector<IntVec> avoid;
  for (const auto& t : h.terms)
    for (const auto& b : t.denoms) avoid.push_back(b);
  Direction l{generic_direction(avoid, h.dim)};
  ShortRGF sq = hadamard(h, h, l);
  return specialize_all_ones(sq) == 0;
}

namespace {

nlohmann::json json_of_int(const Int& z) {
  if (z.fits_slong_p()) return nlohmann::json(z.get_si());
  return nlohmann::json(z.get_str());
}

Int json_int(const nlohmann::json& v) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    Int z;
    if (mpz_set_str(z.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
      throw std::invalid_argument("bad integer string");
    return z;
  }
  throw std::invalid_argument("expected integer");
}

IntVec json_vec(const nlohmann::json& v, size_t dim) {
  if (!v.is_array() || v.size() != dim) throw std::invalid_argument("bad exponent vector");
  IntVec out;
  out.reserve(dim);
  for (const auto& e : v) out.push_back(json_int(e));
  return out;
}

}  // namespace

std::string to_json(const ShortRGF& f) {
  nlohmann::json j;
  j["dim"] = f.dim;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : f.terms) {
    nlohmann::json jt;
    jt["alpha"] = rat_to_string(t.alpha);
    jt["p"] = nlohmann::json::array();
    for (const auto& e : t.p) jt["p"].push_back(json_of_int(e));
    jt["denoms"] = nlohmann::json::array();
    for (const auto& b : t.denoms) {
      nlohmann::json jb = nlohmann::json::array();
      for (const auto& e : b) jb.push_back(json_of_int(e));
      jt["denoms"].push_back(std::move(jb));
    }
    j["terms"].push_back(std::move(jt));
  }
  return j.dump();
}

ShortRGF from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("bad JSON");
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw std::invalid_argument("expected {dim, terms}");
  if (!j["dim"].is_number_unsigned()) throw std::invalid_argument("bad dim");
  ShortRGF f;
  f.dim = j["dim"].get<size_t>();
  if (!j["terms"].is_array()) throw std::invalid_argument("bad terms");
  for (const auto& jt : j["terms"]) {
    if (!jt.is_object() || !jt.contains("alpha") || !jt.contains("p") || !jt.contains("denoms"))
      throw std::invalid_argument("expected {alpha, p, denoms}");
    Term t;
    if (jt["alpha"].is_string())
      t.alpha = rat_from_string(jt["alpha"].get<std::string>());
    else
      t.alpha = Rat(json_int(jt["alpha"]));
    t.p = json_vec(jt["p"], f.dim);
    if (!jt["denoms"].is_array()) throw std::invalid_argument("bad denoms");
    for (const auto& jb : jt["denoms"]) {
      IntVec b = json_vec(jb, f.dim);
      if (is_zero_vec(b)) throw std::invalid_argument("zero denominator vector");
      t.denoms.push_back(std::move(b));
    }
    f.terms.push_back(std::move(t));
  }
  return canonical(f);
}

}  // namespace ehrkit::rgf
