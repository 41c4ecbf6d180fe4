#include "ehrkit/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ehrkit/lattice.hpp"
#include "ehrkit/matrix.hpp"
#include "json.hpp"

namespace ehrkit::polytope {

namespace {

using exact::int_kernel;
using exact::solve_linear;
using exact::RatMatrix;

template <typename F>
void for_each_subset(size_t m, size_t k, F&& body) {
  if (k > m) return;
  std::vector<size_t> idx(k);
  if (k == 0) {
    body(idx);
    return;
  }
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    body(idx);
    size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + m - k) break;
      if (i == 0) return;
    }
    ++idx[i];
    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void normalize_row(IntVec& a, Int& b) {
  Int g = abs_int(b);
  for (const auto& x : a) g = gcd_int(g, x);
  if (g > 1) {
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
  }
}

// Fourier-Motzkin feasibility of { x : a_i x <= b_i }.
bool fm_feasible(std::vector<IntVec> a, IntVec b, size_t d) {
  auto sweep_constants = [&]() {
    std::vector<IntVec> na;
    IntVec nb;
    for (size_t i = 0; i < a.size(); ++i) {
      if (is_zero_vec(a[i])) {
        if (b[i] < 0) return false;
        continue;
      }
      na.push_back(std::move(a[i]));
      nb.push_back(std::move(b[i]));
    }
    a = std::move(na);
    b = std::move(nb);
    return true;
  };
  if (!sweep_constants()) return false;
  for (size_t var = 0; var < d; ++var) {
    if (a.empty()) return true;
    std::vector<size_t> pos, neg;
    std::set<std::pair<IntVec, Int>> next;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i][var] > 0)
        pos.push_back(i);
      else if (a[i][var] < 0)
        neg.push_back(i);
      else
        next.insert({a[i], b[i]});
    }
    for (size_t p : pos)
      for (size_t n : neg) {
        Int cp = a[p][var];
        Int cn = -a[n][var];
        IntVec row(d);
        for (size_t t = 0; t < d; ++t) row[t] = cn * a[p][t] + cp * a[n][t];
        Int rhs = cn * b[p] + cp * b[n];
        normalize_row(row, rhs);
        next.insert({std::move(row), std::move(rhs)});
      }
    a.clear();
    b.clear();
    for (auto& [row, rhs] : next) {
      a.push_back(row);
      b.push_back(rhs);
    }
    if (a.size() > 200000) throw std::logic_error("feasibility check blew up");
    if (!sweep_constants()) return false;
  }
  return true;
}

bool recession_unbounded(const std::vector<IntVec>& lhs, size_t d) {
  IntVec zero(lhs.size(), Int(0));
  for (size_t i = 0; i < d; ++i) {
    for (int sgn : {1, -1}) {
      auto a = lhs;
      auto b = zero;
      IntVec extra(d, Int(0));
      extra[i] = Int(-sgn);
      a.push_back(extra);
      b.push_back(Int(-1));
      if (fm_feasible(std::move(a), std::move(b), d)) return true;
    }
  }
  return false;
}

Int json_int(const nlohmann::json& v) {
  if (v.is_number_integer() || v.is_number_unsigned())
    return Int(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    Int z;
    if (mpz_set_str(z.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
      throw std::invalid_argument("malformed H-rep: bad integer string");
    return z;
  }
  throw std::invalid_argument("malformed H-rep: entries must be integers");
}

nlohmann::json json_of_int(const Int& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

}  // namespace

Polytope make_polytope(size_t dim, std::vector<IntVec> lhs, IntVec rhs) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  if (lhs.empty()) throw std::invalid_argument("at least one inequality required");
  if (rhs.size() != lhs.size()) throw std::invalid_argument("lhs/rhs size mismatch");
  for (const auto& row : lhs)
    if (row.size() != dim) throw std::invalid_argument("inequality has wrong arity");

  Polytope p;
  p.dim = dim;
  p.lhs = std::move(lhs);
  p.rhs = std::move(rhs);
  p.empty = !fm_feasible(p.lhs, p.rhs, dim);
  if (!p.empty && recession_unbounded(p.lhs, dim))
    throw std::runtime_error("not a polytope");
  return p;
}

Polytope parse(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed H-rep: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("inequalities"))
    throw std::invalid_argument("malformed H-rep: need dim and inequalities");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
    throw std::invalid_argument("malformed H-rep: dim must be a positive integer");
  size_t dim = doc["dim"].get<size_t>();
  if (!doc["inequalities"].is_array() || doc["inequalities"].empty())
    throw std::invalid_argument("malformed H-rep: inequalities must be non-empty");

  std::vector<IntVec> lhs;
  IntVec rhs;
  for (const auto& row : doc["inequalities"]) {
    if (!row.is_array() || row.size() != dim + 1)
      throw std::invalid_argument("malformed H-rep: each inequality needs dim+1 entries");
    IntVec c;
    for (size_t j = 0; j < dim; ++j) c.push_back(json_int(row[j]));
    lhs.push_back(std::move(c));
    rhs.push_back(json_int(row[dim]));
  }
  return make_polytope(dim, std::move(lhs), std::move(rhs));
}

std::string to_json(const Polytope& p) {
  nlohmann::json doc;
  doc["dim"] = p.dim;
  auto rows = nlohmann::json::array();
  for (size_t i = 0; i < p.lhs.size(); ++i) {
    auto row = nlohmann::json::array();
    for (const auto& c : p.lhs[i]) row.push_back(json_of_int(c));
    row.push_back(json_of_int(p.rhs[i]));
    rows.push_back(std::move(row));
  }
  doc["inequalities"] = std::move(rows);
  return doc.dump();
}

Polytope pentagon(const Int& D, const Int& s) {
  if (D < 2 || s < 1) throw std::invalid_argument("pentagon needs D >= 2, s >= 1");
  std::vector<IntVec> lhs = {
      int_vec({-1, 0}),
      int_vec({1, 0}),
      IntVec{Int(0), -s},
      IntVec{Int(1), D},
      IntVec{Int(1) - D, D},
  };
  IntVec rhs = {Int(0), D, Int(1), D, Int(0)};
  return make_polytope(2, std::move(lhs), std::move(rhs));
}

VertexSet vertices(const Polytope& p) {
  VertexSet out;
  if (p.empty) return out;
  size_t d = p.dim, m = p.lhs.size();
  for_each_subset(m, d, [&](const std::vector<size_t>& idx) {
    RatMatrix a(d, d);
    RatVec b(d);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) a.at(i, j) = Rat(p.lhs[idx[i]][j]);
      b[i] = Rat(p.rhs[idx[i]]);
    }
    auto x = solve_linear(a, b);
    if (!x) return;
    for (size_t i = 0; i < m; ++i)
      if (dot_rat(p.lhs[i], *x) > Rat(p.rhs[i])) return;
    out.vertices.push_back(std::move(*x));
  });
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less_rat);
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                     out.vertices.end());
  return out;
}

Int denominator(const Polytope& p) {
  Int d = 1;
  for (const auto& v : vertices(p).vertices)
    for (const auto& x : v) d = lcm_int(d, x.get_den());
  return d;
}

Polytope dilate(const Polytope& p, const Int& t) {
  if (t < 0) throw std::invalid_argument("dilation factor must be nonnegative");
  if (p.empty) return p;
  Polytope out = p;
  for (auto& b : out.rhs) b *= t;
  return out;
}

Cone tangent_cone(const Polytope& p, const RatVec& v) {
  auto vs = vertices(p);
  if (std::find(vs.vertices.begin(), vs.vertices.end(), v) == vs.vertices.end())
    throw std::invalid_argument("not a vertex of the polytope");

  std::vector<IntVec> tight;
  for (size_t i = 0; i < p.lhs.size(); ++i)
    if (dot_rat(p.lhs[i], v) == Rat(p.rhs[i])) tight.push_back(p.lhs[i]);

  size_t d = p.dim;
  std::set<IntVec> gens;
  for_each_subset(tight.size(), d - 1, [&](const std::vector<size_t>& idx) {
    std::vector<IntVec> rows;
    for (size_t i : idx) rows.push_back(tight[i]);
    auto kern = int_kernel(rows, d);
    if (kern.size() != 1) return;
    IntVec r = primitive_vec(kern[0]);
    for (int sgn : {1, -1}) {
      IntVec dir = sgn == 1 ? r : neg_vec(r);
      bool ok = true;
      for (const auto& c : tight)
        if (dot(c, dir) > 0) ok = false;
      if (ok) gens.insert(dir);
    }
  });

  Cone cone;
  cone.apex = v;
  cone.generators.assign(gens.begin(), gens.end());
  std::sort(cone.generators.begin(), cone.generators.end(), lex_less);
  return cone;
}

Polytope build_Q_j(const Polytope& p, size_t j, const Int& D) {
  if (D < 1) throw std::invalid_argument("denominator must be positive");
  size_t d1 = p.dim + 1;
  if (p.empty) {
    IntVec up(d1, Int(0)), down(d1, Int(0));
    up[0] = 1;
    down[0] = -1;
    return make_polytope(d1, {up, down}, {Int(-1), Int(0)});
  }
  std::vector<IntVec> lhs;
  IntVec rhs;
  IntVec zlo(d1, Int(0)), zhi(d1, Int(0));
  zlo[0] = -1;
  zhi[0] = 1;
  lhs.push_back(zlo);
  rhs.push_back(Int(0));
  lhs.push_back(zhi);
  rhs.push_back(D - 1);
  for (size_t i = 0; i < p.lhs.size(); ++i) {
    IntVec row(d1);
    row[0] = -p.rhs[i];
    for (size_t t = 0; t < p.dim; ++t) row[t + 1] = p.lhs[i][t];
    lhs.push_back(std::move(row));
    rhs.push_back(p.rhs[i] * Int(static_cast<long>(j)) * D);
  }
  return make_polytope(d1, std::move(lhs), std::move(rhs));
}

}  // namespace ehrkit::polytope
