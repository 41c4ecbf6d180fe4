#include "ehrkit/ehrhart.hpp"

#include <algorithm>
#include <stdexcept>

#include "ehrkit/barvinok.hpp"
#include "ehrkit/matrix.hpp"
#include "json.hpp"

namespace ehrkit::ehrhart {

namespace {

bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

// Brent-style rho with fixed seeds; n must be odd, composite, > 1.
Int pollard_rho(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int x(2), y(2), d(1);
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x > y ? Int(x - y) : Int(y - x);
      if (diff == 0) break;  // cycled without a factor; retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d > 1 && d < n) return d;
  }
}

void factor_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Int(n / d), out);
}

// Coefficients of f on [0, hi] for a univariate f whose full series has no
// support above hi; contributions below zero must cancel.
std::vector<Rat> dense_line(const rgf::ShortRGF& f, long hi) {
  auto g = rgf::canonical(f);
  long minp = 0;
  for (const auto& t : g.terms) {
    if (!t.p[0].fits_slong_p())
      throw std::logic_error("internal: exponent out of dense range");
    minp = std::min(minp, t.p[0].get_si());
  }
  size_t n = static_cast<size_t>(hi - minp + 1);
  std::vector<Rat> acc(n, Rat(0));
  for (const auto& t : g.terms) {
    if (t.p[0] > hi) continue;
    size_t off = static_cast<size_t>(t.p[0].get_si() - minp);
    size_t len = n - off;
    std::vector<Rat> e(len, Rat(0));
    e[0] = 1;
    for (const auto& b : t.denoms) {
      size_t step = static_cast<size_t>(b[0].get_si());
      for (size_t i = step; i < len; ++i) e[i] += e[i - step];
    }
    for (size_t i = 0; i < len; ++i) acc[off + i] += t.alpha * e[i];
  }
  for (long i = 0; i < -minp; ++i)
    if (acc[static_cast<size_t>(i)] != 0)
      throw std::logic_error("internal: dense expansion has negative support");
  return std::vector<Rat>(acc.begin() + (-minp), acc.end());
}

nlohmann::json json_of_int(const Int& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

// Below this bound the one-variable series in the pipeline, all polynomials
// supported on z^0 .. z^{D-1}, are rewritten as explicit monomial lists; the
// downstream Hadamard products and equality tests then run on matched
// exponents instead of spawning an auxiliary lattice computation per term
// pair. Larger periods keep the compact representation throughout.
constexpr long kDenseBound = 10000;

bool compressible(const Int& den) {
  return den.fits_slong_p() && den.get_si() <= kDenseBound;
}

rgf::ShortRGF compress_poly(const rgf::ShortRGF& f, long hi) {
  auto line = dense_line(f, hi);
  rgf::ShortRGF out = rgf::zero_rgf(1);
  for (long i = 0; i <= hi; ++i)
    if (line[static_cast<size_t>(i)] != 0)
      out.terms.push_back({line[static_cast<size_t>(i)], IntVec{Int(i)}, {}});
  return out;
}

// Sum_{i=0}^{D-1} i^j z^i written out as monomials.
rgf::ShortRGF dense_power_sum(size_t j, long den) {
  rgf::ShortRGF out = rgf::zero_rgf(1);
  for (long i = 0; i < den; ++i) {
    Rat pw(1);
    for (size_t t = 0; t < j; ++t) pw *= Rat(i);
    if (pw != 0) out.terms.push_back({pw, IntVec{Int(i)}, {}});
  }
  return out;
}

}  // namespace

FactoringOracle default_factoring_oracle() {
  return [](const Int& value) {
    if (value < 1)
      throw std::invalid_argument("factoring oracle needs a positive integer");
    std::vector<Int> out;
    Int n = value;
    for (Int p = 2; p <= 100000 && p * p <= n; p += (p == 2 ? 1 : 2))
      while (n % p == 0) {
        out.push_back(p);
        n /= p;
      }
    if (n > 1) factor_into(n, out);
    std::sort(out.begin(), out.end());
    return out;
  };
}

Int count(const polytope::Polytope& p, const Int& t) {
  Rat r = rgf::specialize_all_ones(barvinok::polytope_rgf(polytope::dilate(p, t)));
  if (r.get_den() != 1 || r < 0)
    throw std::logic_error("internal: lattice-point count is not a nonnegative integer");
  return r.get_num();
}

std::vector<rgf::ShortRGF> interpolate_ak(const polytope::Polytope& p) {
  Int D = polytope::denominator(p);
  size_t d = p.dim;
  std::vector<rgf::ShortRGF> h;
  h.reserve(d + 1);
  for (size_t j = 0; j <= d; ++j) {
    auto hj = rgf::specialize_partial(
        barvinok::polytope_rgf(polytope::build_Q_j(p, j, D)), 1);
    if (compressible(D)) hj = compress_poly(hj, D.get_si() - 1);
    h.push_back(std::move(hj));
  }

  exact::RatMatrix vand(d + 1, d + 1);
  for (size_t i = 0; i <= d; ++i) {
    Rat pw(1);
    for (size_t k = 0; k <= d; ++k) {
      vand.at(i, k) = pw;
      pw *= Rat(static_cast<long>(i));
    }
  }
  auto inv = exact::invert(vand);
  if (!inv) throw std::logic_error("internal: interpolation matrix is singular");

  std::vector<rgf::ShortRGF> a(d + 1, rgf::zero_rgf(1));
  for (size_t k = 0; k <= d; ++k)
    for (size_t j = 0; j <= d; ++j)
      a[k] = rgf::add(a[k], rgf::scale(h[j], inv->at(k, j)));
  return a;
}

TPolyRGF build_F(const polytope::Polytope& p) {
  Int D = polytope::denominator(p);
  size_t d = p.dim;
  auto a = interpolate_ak(p);
  rgf::Direction dir{int_vec({1})};

  TPolyRGF f;
  f.degree_bound = d;
  f.period = D;
  f.coeffs.assign(d + 1, rgf::zero_rgf(1));
  for (size_t k = 0; k <= d; ++k) {
    if (a[k].terms.empty()) continue;
    Int dk;
    mpz_pow_ui(dk.get_mpz_t(), D.get_mpz_t(), k);
    for (size_t m = 0; m <= k; ++m) {
      // ((t-i)/D)^k contributes C(k,m) (-1)^{k-m} i^{k-m} / D^k to t^m.
      Int c;
      mpz_bin_uiui(c.get_mpz_t(), k, m);
      if ((k - m) % 2) c = -c;
      auto psum = compressible(D) ? dense_power_sum(k - m, D.get_si())
                                  : rgf::power_sum_rgf(k - m, D);
      auto prod = rgf::hadamard(a[k], psum, dir);
      f.coeffs[m] = rgf::add(f.coeffs[m], rgf::scale(prod, make_rat(c, dk)));
    }
  }

  size_t cap = 2 * (d + 2);
  for (const auto& g : f.coeffs)
    for (const auto& t : g.terms)
      if (t.denoms.size() > cap)
        throw std::logic_error("internal: denominator count exceeds the dimension bound");
  return f;
}

TPolyRGF cyclic_shift(const TPolyRGF& f, const Int& n) {
  if (n < 1 || n > f.period)
    throw std::invalid_argument("shift must be between 1 and the period");
  const Int& D = f.period;
  rgf::Direction dir{int_vec({1})};

  rgf::ShortRGF high;  // z^n + ... + z^{D-1}
  high.dim = 1;
  high.terms.push_back({make_rat(1, 1), IntVec{n}, {int_vec({1})}});
  high.terms.push_back({make_rat(-1, 1), IntVec{D}, {int_vec({1})}});
  rgf::ShortRGF low;  // 1 + z + ... + z^{n-1}
  low.dim = 1;
  low.terms.push_back({make_rat(1, 1), IntVec{Int(0)}, {int_vec({1})}});
  low.terms.push_back({make_rat(-1, 1), IntVec{n}, {int_vec({1})}});

  auto hi = rgf::hadamard_z(f.coeffs, high, dir);
  auto lo = rgf::hadamard_z(f.coeffs, low, dir);
  TPolyRGF g;
  g.degree_bound = f.degree_bound;
  g.period = D;
  g.coeffs.reserve(f.coeffs.size());
  for (size_t m = 0; m < f.coeffs.size(); ++m)
    g.coeffs.push_back(rgf::add(rgf::shift(hi[m], IntVec{Int(-n)}),
                                rgf::shift(lo[m], IntVec{Int(D - n)})));
  return g;
}

bool is_period(const TPolyRGF& f, const Int& n) {
  if (n < 1) throw std::invalid_argument("period candidate must be positive");
  Int r = n % f.period;
  if (r == 0) return true;
  TPolyRGF g = cyclic_shift(f, r);
  for (size_t m = 0; m < f.coeffs.size(); ++m)
    if (!rgf::equals_laurent(f.coeffs[m], g.coeffs[m])) return false;
  return true;
}

bool is_period(const polytope::Polytope& p, const Int& n) {
  return is_period(build_F(p), n);
}

Int min_period(const polytope::Polytope& p, const FactoringOracle& oracle) {
  TPolyRGF f = build_F(p);
  Int n = f.period;
  for (;;) {
    auto primes = oracle(n);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    bool moved = false;
    for (const Int& q : primes)
      if (is_period(f, Int(n / q))) {
        n /= q;
        moved = true;
        break;
      }
    if (!moved) return n;
  }
}

Int min_period(const polytope::Polytope& p) {
  return min_period(p, default_factoring_oracle());
}

QuasiPolynomial quasipolynomial(const polytope::Polytope& p,
                                const Int& dense_guard) {
  TPolyRGF f = build_F(p);
  if (f.period > dense_guard)
    throw std::invalid_argument(
        "denominator " + f.period.get_str() +
        " is too large to expand densely; query the generating function instead");
  long D = f.period.get_si();
  QuasiPolynomial q;
  q.period = f.period;
  q.constituents.assign(static_cast<size_t>(D),
                        std::vector<Rat>(f.degree_bound + 1, Rat(0)));
  for (size_t m = 0; m < f.coeffs.size(); ++m) {
    auto line = dense_line(f.coeffs[m], D - 1);
    for (long i = 0; i < D; ++i)
      q.constituents[static_cast<size_t>(i)][m] = line[static_cast<size_t>(i)];
  }
  return q;
}

std::string to_json(const QuasiPolynomial& q) {
  nlohmann::json doc;
  doc["period"] = json_of_int(q.period);
  auto rows = nlohmann::json::array();
  for (const auto& con : q.constituents) {
    auto row = nlohmann::json::array();
    for (const auto& c : con) row.push_back(rat_to_string(c));
    rows.push_back(std::move(row));
  }
  doc["constituents"] = std::move(rows);
  return doc.dump();
}

}  // namespace ehrkit::ehrhart
