// Acceptance suite: end-to-end checks of the counting pipeline against
// closed forms, brute-force oracles, and algebraic identities, with wall-time
// limits where a budget applies. Prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ehrkit/barvinok.hpp"
#include "ehrkit/ehrhart.hpp"
#include "ehrkit/lattice.hpp"
#include "ehrkit/matrix.hpp"
#include "ehrkit/oracle.hpp"
#include "ehrkit/polytope.hpp"
#include "ehrkit/rational.hpp"
#include "ehrkit/rgf.hpp"

namespace {

using namespace ehrkit;

// ---------------------------------------------------------------------------
// Shared helpers

// Box with per-axis rational bounds given as (num_lo, den_lo, num_hi, den_hi).
polytope::Polytope make_box(const std::vector<std::array<long, 4>>& axes) {
  size_t d = axes.size();
  std::vector<IntVec> lhs;
  IntVec rhs;
  for (size_t j = 0; j < d; ++j) {
    IntVec lo(d, Int(0)), hi(d, Int(0));
    lo[j] = Int(-axes[j][1]);
    hi[j] = Int(axes[j][3]);
    lhs.push_back(lo);
    rhs.push_back(Int(-axes[j][0]));
    lhs.push_back(hi);
    rhs.push_back(Int(axes[j][2]));
  }
  return polytope::make_polytope(d, std::move(lhs), std::move(rhs));
}

polytope::Polytope standard_simplex(size_t d) {
  std::vector<IntVec> lhs;
  IntVec rhs;
  for (size_t j = 0; j < d; ++j) {
    IntVec row(d, Int(0));
    row[j] = Int(-1);
    lhs.push_back(row);
    rhs.push_back(Int(0));
  }
  lhs.push_back(IntVec(d, Int(1)));
  rhs.push_back(Int(1));
  return polytope::make_polytope(d, std::move(lhs), std::move(rhs));
}

Rat qp_value(const ehrhart::QuasiPolynomial& q, const Int& t) {
  Int r = t % q.period;
  const auto& c = q.constituents[r.get_ui()];
  Rat acc(0);
  for (size_t k = c.size(); k-- > 0;) acc = Rat(acc * Rat(t) + c[k]);
  return acc;
}

Int brute_count(const polytope::Polytope& p, long t) {
  return Int((long)oracle::enumerate(polytope::dilate(p, Int(t))).size());
}

bool advance(IntVec& x, const IntVec& lo, const IntVec& hi) {
  for (size_t j = x.size(); j-- > 0;) {
    if (x[j] < hi[j]) {
      x[j] += 1;
      for (size_t k = j + 1; k < x.size(); ++k) x[k] = lo[k];
      return true;
    }
  }
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Criterion bodies. Each returns "" on success, or a description of the first
// failure.

std::string criterion1_half_square() {
  auto p = make_box({{{0, 1, 1, 2}}, {{0, 1, 1, 2}}});
  auto q = ehrhart::quasipolynomial(p);
  std::vector<std::vector<Rat>> want = {
      {Rat(1), Rat(1), make_rat(1, 4)},
      {make_rat(1, 4), make_rat(1, 2), make_rat(1, 4)},
  };
  if (q.period != 2) return "period is not 2";
  if (q.constituents != want) return "constituents differ from ((t+2)/2)^2-style closed form";
  if (ehrhart::is_period(p, Int(1))) return "1 accepted as a period";
  if (!ehrhart::is_period(p, Int(2))) return "2 rejected as a period";
  if (ehrhart::min_period(p) != 2) return "minimum period is not 2";
  return "";
}

std::string criterion2_pentagons(double per_instance_limit, double* max_seconds) {
  const long data[6][2] = {{2, 1}, {4, 2}, {6, 2}, {6, 3}, {8, 4}, {12, 6}};
  *max_seconds = 0.0;
  for (auto [dd, ss] : data) {
    auto t0 = std::chrono::steady_clock::now();
    auto p = polytope::pentagon(Int(dd), Int(ss));
    if (polytope::denominator(p) != dd) {
      return "pentagon(" + std::to_string(dd) + "," + std::to_string(ss) + "): denominator != D";
    }
    if (ehrhart::min_period(p) != ss) {
      return "pentagon(" + std::to_string(dd) + "," + std::to_string(ss) + "): min period != s";
    }
    if (oracle::brute_min_period(oracle::brute_quasipolynomial(p)) != ss) {
      return "pentagon(" + std::to_string(dd) + "," + std::to_string(ss) +
             "): brute-force period disagrees";
    }
    double dt = seconds_since(t0);
    if (dt > *max_seconds) *max_seconds = dt;
    if (dt >= per_instance_limit) {
      return "pentagon(" + std::to_string(dd) + "," + std::to_string(ss) + ") exceeded " +
             std::to_string(per_instance_limit) + " s";
    }
  }
  return "";
}

std::string criterion3_polynomiality() {
  std::vector<polytope::Polytope> integral;
  integral.push_back(standard_simplex(1));
  integral.push_back(standard_simplex(2));
  integral.push_back(standard_simplex(3));
  const std::vector<std::vector<std::array<long, 4>>> boxes = {
      {{{0, 1, 1, 1}}},
      {{{-3, 1, 5, 1}}},
      {{{2, 1, 7, 1}}},
      {{{-8, 1, 0, 1}}},
      {{{-1, 1, 1, 1}}},
      {{{0, 1, 1, 1}}, {{0, 1, 1, 1}}},
      {{{-2, 1, 3, 1}}, {{1, 1, 4, 1}}},
      {{{0, 1, 5, 1}}, {{-3, 1, -1, 1}}},
      {{{-4, 1, 4, 1}}, {{0, 1, 2, 1}}},
      {{{1, 1, 6, 1}}, {{-6, 1, -2, 1}}},
      {{{0, 1, 3, 1}}, {{0, 1, 3, 1}}},
      {{{0, 1, 1, 1}}, {{0, 1, 1, 1}}, {{0, 1, 1, 1}}},
      {{{-2, 1, 1, 1}}, {{0, 1, 3, 1}}, {{1, 1, 2, 1}}},
      {{{0, 1, 2, 1}}, {{0, 1, 2, 1}}, {{0, 1, 2, 1}}},
      {{{-1, 1, 1, 1}}, {{-1, 1, 1, 1}}, {{-1, 1, 1, 1}}},
      {{{0, 1, 4, 1}}, {{-2, 1, 0, 1}}, {{3, 1, 5, 1}}},
      {{{1, 1, 2, 1}}, {{3, 1, 4, 1}}, {{-5, 1, -3, 1}}},
  };
  for (const auto& axes : boxes) integral.push_back(make_box(axes));
  if (integral.size() != 20) return "instance list is not 20 polytopes";
  for (size_t i = 0; i < integral.size(); ++i) {
    if (!ehrhart::is_period(integral[i], Int(1))) {
      return "integral instance " + std::to_string(i) + " rejected period 1";
    }
  }
  for (size_t d = 1; d <= 3; ++d) {
    std::vector<std::array<long, 4>> axes(d, std::array<long, 4>{0, 1, 1, 2});
    if (ehrhart::is_period(make_box(axes), Int(1))) {
      return "half-open-unit box in dimension " + std::to_string(d) + " accepted period 1";
    }
  }
  return "";
}

// 100 random rational polytopes: d <= 3, H-rep coefficients bounded by 8,
// every vertex coordinate denominator <= 6 (so the denominator divides 60).
std::vector<polytope::Polytope> random_instances() {
  std::mt19937_64 rng(271828182845904523ull);
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  std::vector<polytope::Polytope> out;

  // d = 1: segments with endpoint denominators up to 6.
  while (out.size() < 34) {
    long q1 = rnd(1, 6), q2 = rnd(1, 6);
    long p1 = rnd(-8, 8), p2 = rnd(-8, 8);
    if (Rat(p1) / q1 > Rat(p2) / q2) {
      std::swap(p1, p2);
      std::swap(q1, q2);
    }
    out.push_back(make_box({{p1, q1, p2, q2}}));
  }

  // d = 2: three fixed boxes whose vertex denominators have lcm 60, then
  // random boxes with an optional diagonal cut.
  out.push_back(make_box({{1, 4, 3, 4}, {1, 5, 5, 6}}));
  out.push_back(make_box({{1, 5, 4, 5}, {1, 4, 5, 6}}));
  out.push_back(make_box({{2, 3, 3, 4}, {1, 5, 2, 5}}));
  while (out.size() < 67) {
    long q1 = rnd(1, 6), q2 = rnd(1, 6);
    long wide = (std::lcm(q1, q2) <= 20) ? 2 : 1;
    long d1 = rnd(1, wide * q1), d2 = rnd(1, wide * q2);
    long p1 = rnd(-8, 8 - d1), p2 = rnd(-8, 8 - d2);
    std::vector<IntVec> lhs = {int_vec({-q1, 0}), int_vec({q1, 0}), int_vec({0, -q2}),
                               int_vec({0, q2})};
    IntVec rhs = {Int(-p1), Int(p1 + d1), Int(-p2), Int(p2 + d2)};
    if (rnd(0, 1) == 1) {
      long qr = rnd(1, 6), c1 = rnd(0, 1) ? 1 : -1, c2 = rnd(0, 1) ? 1 : -1;
      lhs.push_back(int_vec({c1 * qr, c2 * qr}));
      rhs.push_back(Int(rnd(-8, 8)));
    }
    auto p = polytope::make_polytope(2, std::move(lhs), std::move(rhs));
    if (p.empty) continue;
    bool small_denoms = true;
    for (const auto& v : polytope::vertices(p).vertices) {
      for (const auto& c : v) {
        if (c.get_den() > 6) small_denoms = false;
      }
    }
    if (!small_denoms) continue;
    out.push_back(std::move(p));
  }

  // d = 3: boxes with axis denominators <= 3 and an optional corner cut, so
  // every vertex denominator stays <= 6.
  while (out.size() < 100) {
    long q[3], dl[3], pl[3];
    std::vector<IntVec> lhs;
    IntVec rhs;
    for (int j = 0; j < 3; ++j) {
      q[j] = rnd(1, 3);
      dl[j] = rnd(1, q[j]);
      pl[j] = rnd(-7, 7 - dl[j]);
      IntVec lo(3, Int(0)), hi(3, Int(0));
      lo[(size_t)j] = Int(-q[j]);
      hi[(size_t)j] = Int(q[j]);
      lhs.push_back(lo);
      rhs.push_back(Int(-pl[j]));
      lhs.push_back(hi);
      rhs.push_back(Int(pl[j] + dl[j]));
    }
    if (rnd(0, 1) == 1) {
      long qr = rnd(1, 2);
      IntVec row(3);
      for (size_t j = 0; j < 3; ++j) row[j] = Int((rnd(0, 1) ? 1 : -1) * qr);
      lhs.push_back(row);
      rhs.push_back(Int(rnd(-8, 8)));
    }
    auto p = polytope::make_polytope(3, std::move(lhs), std::move(rhs));
    if (p.empty) continue;
    out.push_back(std::move(p));
  }
  return out;
}

std::string criterion4_counting(const std::vector<polytope::Polytope>& instances) {
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto& p = instances[i];
    Int den = polytope::denominator(p);
    long tmax = (2 + (long)p.dim) * den.get_si();
    for (long t = 0; t <= tmax; ++t) {
      Int lhs = ehrhart::count(p, Int(t));
      Int rhs = brute_count(p, t);
      if (lhs != rhs) {
        return "instance " + std::to_string(i) + " at t=" + std::to_string(t) + ": count " +
               lhs.get_str() + " vs enumeration " + rhs.get_str();
      }
    }
  }
  return "";
}

std::string criterion5_quasipolynomials(const std::vector<polytope::Polytope>& instances) {
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto& p = instances[i];
    if (polytope::denominator(p) > 60) {
      return "instance " + std::to_string(i) + " has denominator above 60";
    }
    auto q = ehrhart::quasipolynomial(p);
    auto bq = oracle::brute_quasipolynomial(p);
    if (q.period != bq.period || q.constituents != bq.constituents) {
      return "instance " + std::to_string(i) + ": quasi-polynomials disagree";
    }
    if (ehrhart::min_period(p) != oracle::brute_min_period(bq)) {
      return "instance " + std::to_string(i) + ": minimum periods disagree";
    }
  }
  return "";
}

std::string criterion6_rgf_algebra() {
  std::mt19937_64 rng(314159265358979ull);
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };

  // (a) 200 trials: a random Laurent polynomial encoded via telescoping
  // (1 - x^b) splits must equal its plain monomial sum, and must differ from
  // it after any single-coefficient perturbation.
  for (int trial = 0; trial < 200; ++trial) {
    size_t d = (trial % 2) + 1;
    size_t nmono = (size_t)rnd(1, 4);
    rgf::ShortRGF direct = rgf::zero_rgf(d);
    rgf::ShortRGF enc = rgf::zero_rgf(d);
    for (size_t m = 0; m < nmono; ++m) {
      Rat alpha(rnd(1, 9) * (rnd(0, 1) ? 1 : -1));
      if (rnd(0, 3) == 0) alpha = Rat(alpha / 2);
      IntVec p(d);
      for (size_t j = 0; j < d; ++j) p[j] = Int(rnd(-5, 5));
      direct = rgf::add(direct, rgf::monomial(d, alpha, p));
      IntVec b(d, Int(0));
      while (is_zero_vec(b)) {
        for (size_t j = 0; j < d; ++j) b[j] = Int(rnd(-3, 3));
      }
      rgf::ShortRGF split = rgf::zero_rgf(d);
      split.terms.push_back({alpha, p, {b}});
      split.terms.push_back({Rat(-alpha), add_vec(p, b), {b}});
      if (rnd(0, 2) == 0) {
        IntVec b2(d, Int(0));
        while (is_zero_vec(b2)) {
          for (size_t j = 0; j < d; ++j) b2[j] = Int(rnd(-3, 3));
        }
        rgf::ShortRGF nested = rgf::zero_rgf(d);
        for (const auto& t : split.terms) {
          auto dens = t.denoms;
          dens.push_back(b2);
          nested.terms.push_back({t.alpha, t.p, dens});
          nested.terms.push_back({Rat(-t.alpha), add_vec(t.p, b2), dens});
        }
        split = nested;
      }
      enc = rgf::add(enc, split);
    }
    if (!rgf::equals_laurent(enc, direct)) {
      return "trial " + std::to_string(trial) + ": faithful encoding rejected";
    }
    auto perturbed = direct;
    if (perturbed.terms.empty()) {
      perturbed = rgf::monomial(d, Rat(1), IntVec(d, Int(0)));
    } else {
      size_t victim = (size_t)rnd(0, (long)perturbed.terms.size() - 1);
      perturbed.terms[victim].alpha += 1;
    }
    if (rgf::equals_laurent(enc, perturbed)) {
      return "trial " + std::to_string(trial) + ": perturbed coefficient not detected";
    }
  }

  // (b) Hadamard products against dense coefficientwise multiplication.
  for (int trial = 0; trial < 40; ++trial) {
    size_t d = (trial % 2) + 1;
    std::vector<IntVec> pool;
    if (d == 1) {
      pool = {int_vec({1}), int_vec({2}), int_vec({3})};
    } else {
      pool = {int_vec({1, 0}), int_vec({0, 1}), int_vec({1, 1}), int_vec({2, 1})};
    }
    auto random_series = [&]() {
      rgf::ShortRGF f = rgf::zero_rgf(d);
      size_t nterms = (size_t)rnd(1, 3);
      for (size_t m = 0; m < nterms; ++m) {
        rgf::Term t;
        t.alpha = Rat(rnd(1, 5) * (rnd(0, 1) ? 1 : -1));
        t.p = IntVec(d);
        for (size_t j = 0; j < d; ++j) t.p[j] = Int(rnd(0, 4));
        size_t ndens = (size_t)rnd(0, 2);
        for (size_t k = 0; k < ndens; ++k) t.denoms.push_back(pool[(size_t)rnd(0, (long)pool.size() - 1)]);
        f.terms.push_back(t);
      }
      return f;
    };
    auto f = random_series();
    auto g = random_series();
    rgf::Direction dir{d == 1 ? int_vec({1}) : int_vec({7, 3})};
    auto h = rgf::hadamard(f, g, dir);
    IntVec lo(d, Int(-1)), hi(d, Int(10));
    auto df = oracle::expand_dense(f, lo, hi);
    auto dg = oracle::expand_dense(g, lo, hi);
    auto dh = oracle::expand_dense(h, lo, hi);
    IntVec x = lo;
    do {
      auto cf = df.coefficients.count(x) ? df.coefficients.at(x) : Rat(0);
      auto cg = dg.coefficients.count(x) ? dg.coefficients.at(x) : Rat(0);
      auto ch = dh.coefficients.count(x) ? dh.coefficients.at(x) : Rat(0);
      if (ch != Rat(cf * cg)) {
        return "hadamard trial " + std::to_string(trial) + ": coefficient mismatch";
      }
    } while (advance(x, lo, hi));
  }

  // (c) Power-sum series expand to i^j on [0, D-1] and to zero beyond.
  for (long den = 1; den <= 30; ++den) {
    for (size_t j = 0; j <= 4; ++j) {
      auto ps = rgf::power_sum_rgf(j, Int(den));
      auto dense = oracle::expand_dense(ps, int_vec({0}), int_vec({den + 1}));
      for (long i = 0; i <= den + 1; ++i) {
        IntVec e = {Int(i)};
        Rat got = dense.coefficients.count(e) ? dense.coefficients.at(e) : Rat(0);
        Int want(0);
        if (i < den) mpz_pow_ui(want.get_mpz_t(), Int(i).get_mpz_t(), (unsigned long)j);
        if (i == 0 && j == 0) want = 1;
        if (got != Rat(want)) {
          return "power sum D=" + std::to_string(den) + " j=" + std::to_string(j) +
                 " wrong at i=" + std::to_string(i);
        }
      }
    }
  }
  return "";
}

std::string criterion7_decomposition() {
  std::mt19937_64 rng(161803398874989ull);
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 50; ++trial) {
    size_t d = trial < 30 ? 2 : 3;
    std::vector<IntVec> gens;
    Int det;
    do {
      gens.clear();
      for (size_t i = 0; i < d; ++i) {
        IntVec g(d, Int(0));
        while (is_zero_vec(g)) {
          for (size_t j = 0; j < d; ++j) g[j] = Int(rnd(-5, 5));
        }
        gens.push_back(primitive_vec(g));
      }
      det = exact::int_det(gens);
    } while (det == 0 || abs_int(det) > 50);
    std::sort(gens.begin(), gens.end());

    polytope::Cone c;
    c.generators = gens;
    for (size_t j = 0; j < d; ++j) c.apex.push_back(make_rat(Int(rnd(-3, 3)), Int(rnd(1, 2))));

    auto pieces = barvinok::decompose_unimodular(c);
    if (pieces.empty()) return "trial " + std::to_string(trial) + ": empty decomposition";
    for (const auto& piece : pieces) {
      if (abs_int(exact::int_det(piece.generators)) != 1) {
        return "trial " + std::to_string(trial) + ": non-unimodular piece";
      }
    }

    // Pointwise indicator identity over a window around the apex.
    auto inv_of = [&](const std::vector<IntVec>& g) {
      auto inv = exact::invert(exact::RatMatrix::from_int_columns(g));
      if (!inv) throw std::logic_error("internal: singular cone basis");
      return *inv;
    };
    auto member = [&](const exact::RatMatrix& inv, const RatVec& apex, const IntVec& x) {
      for (size_t i = 0; i < x.size(); ++i) {
        Rat lam(0);
        for (size_t j = 0; j < x.size(); ++j) lam += inv.at(i, j) * (Rat(x[j]) - apex[j]);
        if (lam < 0) return false;
      }
      return true;
    };
    auto cone_inv = inv_of(c.generators);
    std::vector<exact::RatMatrix> piece_inv;
    piece_inv.reserve(pieces.size());
    for (const auto& piece : pieces) piece_inv.push_back(inv_of(piece.generators));

    long radius = d == 2 ? 5 : 3;
    IntVec lo(d, Int(-radius)), hi(d, Int(radius + 1));
    IntVec x = lo;
    do {
      long want = member(cone_inv, c.apex, x) ? 1 : 0;
      long got = 0;
      for (size_t k = 0; k < pieces.size(); ++k) {
        if (member(piece_inv[k], pieces[k].apex, x)) got += pieces[k].sign;
      }
      if (got != want) {
        return "trial " + std::to_string(trial) + ": signed indicator sum is " +
               std::to_string(got) + ", expected " + std::to_string(want);
      }
    } while (advance(x, lo, hi));
  }
  return "";
}

std::string criterion8_large_dilation() {
  auto q = ehrhart::quasipolynomial(standard_simplex(3));
  Int t(1000000000);
  Int n = Int(t + 3);
  Int want;
  mpz_bin_ui(want.get_mpz_t(), n.get_mpz_t(), 3);
  Rat got = qp_value(q, t);
  if (got.get_den() != 1 || got.get_num() != want) {
    return "value at t=10^9 is " + rat_to_string(got) + ", expected " + want.get_str();
  }
  return "";
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int num, const char* label, double limit,
                    const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    double secs = seconds_since(t0);
    bool timed_out = limit > 0 && secs >= limit;
    bool ok = err.empty() && !timed_out;
    if (!ok) ++failures;
    std::string limit_note = limit > 0 ? ", limit " + std::to_string((long)limit) + " s" : "";
    if (timed_out && err.empty()) err = "over the time limit";
    std::printf("criterion %d: %s  [%.2f s%s]  %s%s%s\n", num, ok ? "PASS" : "FAIL", secs,
                limit_note.c_str(), label, err.empty() ? "" : " — ", err.c_str());
  };

  report(1, "half-open unit square at scale 1/2: exact constituents and periods", 1.0,
         criterion1_half_square);

  double pent_max = 0.0;
  report(2, "pentagon family: denominator D, minimum period s, brute-force validated", 0.0,
         [&] { return criterion2_pentagons(30.0, &pent_max); });

  report(3, "integral polytopes admit period 1; the scaled box does not", 10.0,
         criterion3_polynomiality);

  auto instances = random_instances();
  report(4, "100 random rational polytopes: counts equal enumeration on [0, 2D+dD]", 300.0,
         [&] { return criterion4_counting(instances); });
  report(5, "same instances: quasi-polynomial and minimum period match brute force", 0.0,
         [&] { return criterion5_quasipolynomials(instances); });

  report(6, "series algebra: telescoped equality, Hadamard vs dense, power sums", 0.0,
         criterion6_rgf_algebra);
  report(7, "signed decompositions: unimodular pieces, pointwise indicator sums", 0.0,
         criterion7_decomposition);
  report(8, "standard 3-simplex at t=10^9 equals the direct binomial", 1.0,
         criterion8_large_dilation);

  return failures == 0 ? 0 : 1;
}
