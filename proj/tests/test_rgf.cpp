#include "ehrkit/rgf.hpp"

#include "doctest.h"

#include <random>

#include "dense_oracle.hpp"

using namespace ehrkit;
using namespace ehrkit::rgf;
using testutil::dense_window;

namespace {

Term mk(long alpha, std::initializer_list<long> p,
        std::initializer_list<std::initializer_list<long>> denoms) {
  Term t;
  t.alpha = rat_of(alpha);
  t.p = int_vec(p);
  for (auto b : denoms) t.denoms.push_back(int_vec(b));
  return t;
}

ShortRGF rgf_of(size_t dim, std::vector<Term> terms) {
  ShortRGF f;
  f.dim = dim;
  f.terms = std::move(terms);
  return f;
}

// 1D window as plain numbers, for readable expectations
std::vector<long> line(const ShortRGF& f, long lo, long hi) {
  auto w = dense_window(f, IntVec{Int(lo)}, IntVec{Int(hi)});
  std::vector<long> out;
  for (long x = lo; x <= hi; ++x) {
    auto it = w.find(IntVec{Int(x)});
    if (it == w.end()) {
      out.push_back(0);
    } else {
      REQUIRE(is_integer(it->second));
      out.push_back(static_cast<long>(it->second.get_num().get_si()));
    }
  }
  return out;
}

ShortRGF laurent_from_coeffs(const std::map<IntVec, Rat>& coeffs, size_t dim) {
  ShortRGF f = zero_rgf(dim);
  for (const auto& [p, a] : coeffs)
    if (a != 0) f.terms.push_back(Term{a, p, {}});
  return f;
}

}  // namespace

TEST_CASE("canonical orients denominators and merges terms") {
  // x^4 / (1 - x^{-1}) == -x^5 / (1 - x)
  ShortRGF f = rgf_of(1, {mk(1, {4}, {{-1}})});
  ShortRGF c = canonical(f);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms[0].alpha == rat_of(-1));
  CHECK(c.terms[0].p == int_vec({5}));
  CHECK(c.terms[0].denoms == std::vector<IntVec>{int_vec({1})});
  CHECK(dense_window(f, int_vec({-3}), int_vec({3})) ==
        dense_window(c, int_vec({-3}), int_vec({3})));

  ShortRGF two = canonical(rgf_of(1, {mk(1, {2}, {{1}}), mk(1, {2}, {{1}})}));
  REQUIRE(two.terms.size() == 1);
  CHECK(two.terms[0].alpha == rat_of(2));

  ShortRGF cancel = canonical(rgf_of(1, {mk(1, {2}, {{1}}), mk(-1, {2}, {{1}})}));
  CHECK(cancel.terms.empty());

  CHECK_THROWS_AS(canonical(rgf_of(2, {mk(1, {0, 0}, {{0, 0}})})), std::invalid_argument);
}

TEST_CASE("add, scale, shift") {
  ShortRGF f = rgf_of(1, {mk(1, {0}, {{1}})});
  ShortRGF g = shift(f, int_vec({3}));
  CHECK(line(g, 0, 5) == std::vector<long>{0, 0, 0, 1, 1, 1});
  ShortRGF s = scale(f, rat_of(3));
  CHECK(line(s, 0, 2) == std::vector<long>{3, 3, 3});
  ShortRGF sum = add(f, scale(f, rat_of(-1)));
  CHECK(sum.terms.empty());
  CHECK_THROWS_AS(add(f, zero_rgf(2)), std::invalid_argument);
}

TEST_CASE("dense expansions of basic series") {
  // 1/(1-x)
  CHECK(line(rgf_of(1, {mk(1, {0}, {{1}})}), 0, 4) == std::vector<long>{1, 1, 1, 1, 1});
  // x/(1-x)^2 = sum i x^i
  CHECK(line(rgf_of(1, {mk(1, {1}, {{1}, {1}})}), 0, 4) == std::vector<long>{0, 1, 2, 3, 4});
  // (1-x^5)/(1-x)
  ShortRGF step = rgf_of(1, {mk(1, {0}, {{1}}), mk(-1, {5}, {{1}})});
  CHECK(line(step, 0, 6) == std::vector<long>{1, 1, 1, 1, 1, 0, 0});
}

TEST_CASE("power_sum_rgf matches direct sums") {
  CHECK(line(power_sum_rgf(1, 3), 0, 4) == std::vector<long>{0, 1, 2, 0, 0});
  CHECK(line(power_sum_rgf(0, 4), 0, 5) == std::vector<long>{1, 1, 1, 1, 0, 0});
  CHECK(line(power_sum_rgf(2, 5), 0, 6) == std::vector<long>{0, 1, 4, 9, 16, 0, 0});
  CHECK(line(power_sum_rgf(3, 2), 0, 3) == std::vector<long>{0, 1, 0, 0});
  CHECK(line(power_sum_rgf(4, 6), 0, 6) ==
        std::vector<long>{0, 1, 16, 81, 256, 625, 0});
  CHECK_THROWS_AS(power_sum_rgf(1, 0), std::invalid_argument);
}

TEST_CASE("substitute_monomial, direct path") {
  // (1-x^5)/(1-x) under x -> z^2
  ShortRGF step = rgf_of(1, {mk(1, {0}, {{1}}), mk(-1, {5}, {{1}})});
  MonomialMap phi;
  phi.target_dim = 1;
  phi.images = {int_vec({2})};
  CHECK(line(substitute_monomial(step, phi), 0, 10) ==
        std::vector<long>{1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0});

  // 1/((1-x)(1-y)) under x -> z, y -> z gives 1/(1-z)^2
  ShortRGF grid = rgf_of(2, {mk(1, {0, 0}, {{1, 0}, {0, 1}})});
  MonomialMap diag;
  diag.target_dim = 1;
  diag.images = {int_vec({1}), int_vec({1})};
  CHECK(line(substitute_monomial(grid, diag), 0, 4) == std::vector<long>{1, 2, 3, 4, 5});
}

TEST_CASE("substitute_monomial, vanishing-image path") {
  // (1-(xy)^3)/(1-xy) = 1 + xy + (xy)^2 under x -> z, y -> z^{-1}: constant 3
  ShortRGF f = rgf_of(2, {mk(1, {0, 0}, {{1, 1}}), mk(-1, {3, 3}, {{1, 1}})});
  MonomialMap phi;
  phi.target_dim = 1;
  phi.images = {int_vec({1}), int_vec({-1})};
  auto w = dense_window(substitute_monomial(f, phi), int_vec({-3}), int_vec({3}));
  REQUIRE(w.size() == 1);
  CHECK(w.at(int_vec({0})) == rat_of(3));

  // same but against a surviving factor: (1-(xy)^2)/((1-xy)(1-x)) -> 2/(1-z)
  ShortRGF g = rgf_of(2, {mk(1, {0, 0}, {{1, 1}, {1, 0}}), mk(-1, {2, 2}, {{1, 1}, {1, 0}})});
  CHECK(line(substitute_monomial(g, phi), 0, 3) == std::vector<long>{2, 2, 2, 2});
}

TEST_CASE("specialize_all_ones") {
  ShortRGF laurent = rgf_of(1, {mk(2, {-1}, {}), mk(1, {0}, {}), mk(3, {4}, {})});
  CHECK(specialize_all_ones(laurent) == rat_of(6));

  ShortRGF step = rgf_of(1, {mk(1, {0}, {{1}}), mk(-1, {5}, {{1}})});
  CHECK(specialize_all_ones(step) == rat_of(5));

  CHECK(specialize_all_ones(power_sum_rgf(2, 5)) == rat_of(30));
  CHECK(specialize_all_ones(power_sum_rgf(3, 10)) == rat_of(2025));

  // 2D: ((1-x^3)/(1-x)) * ((1-y^2)/(1-y)) sums to 6
  ShortRGF grid = rgf_of(2, {mk(1, {0, 0}, {{1, 0}, {0, 1}}), mk(-1, {3, 0}, {{1, 0}, {0, 1}}),
                             mk(-1, {0, 2}, {{1, 0}, {0, 1}}), mk(1, {3, 2}, {{1, 0}, {0, 1}})});
  CHECK(specialize_all_ones(grid) == rat_of(6));

  CHECK(specialize_all_ones(zero_rgf(3)) == rat_of(0));
  CHECK_THROWS_AS(specialize_all_ones(rgf_of(1, {mk(1, {0}, {{1}})})), std::domain_error);
}

TEST_CASE("specialize_partial takes the trailing block to one") {
  // (1-y^3)/((1-y)(1-z)) -> 3/(1-z)
  ShortRGF f = rgf_of(2, {mk(1, {0, 0}, {{0, 1}, {1, 0}}), mk(-1, {0, 3}, {{0, 1}, {1, 0}})});
  CHECK(line(specialize_partial(f, 1), 0, 3) == std::vector<long>{3, 3, 3, 3});

  // mixed factor: (1-y^2)/((1-y)(1-zy)) -> 2/(1-z)
  ShortRGF g = rgf_of(2, {mk(1, {0, 0}, {{0, 1}, {1, 1}}), mk(-1, {0, 2}, {{0, 1}, {1, 1}})});
  CHECK(line(specialize_partial(g, 1), 0, 3) == std::vector<long>{2, 2, 2, 2});

  // keep everything: identity
  ShortRGF h = rgf_of(1, {mk(1, {0}, {{1}})});
  CHECK(dense_window(specialize_partial(h, 1), int_vec({0}), int_vec({4})) ==
        dense_window(h, int_vec({0}), int_vec({4})));
}

namespace {

void check_hadamard_window(const ShortRGF& f1, const ShortRGF& f2, const Direction& l,
                           const IntVec& lo, const IntVec& hi) {
  ShortRGF h = hadamard(f1, f2, l);
  auto wa = dense_window(f1, lo, hi);
  auto wb = dense_window(f2, lo, hi);
  auto wh = dense_window(h, lo, hi);
  std::map<IntVec, Rat> expect;
  for (const auto& [p, a] : wa) {
    auto it = wb.find(p);
    if (it != wb.end() && a * it->second != 0) expect[p] = a * it->second;
  }
  CHECK(wh == expect);
}

}  // namespace

TEST_CASE("hadamard of Laurent polynomials") {
  ShortRGF a = rgf_of(1, {mk(1, {0}, {}), mk(1, {1}, {}), mk(1, {2}, {})});
  ShortRGF b = rgf_of(1, {mk(1, {1}, {}), mk(1, {2}, {}), mk(1, {3}, {})});
  ShortRGF h = hadamard(a, b, Direction{int_vec({1})});
  ShortRGF want = rgf_of(1, {mk(1, {1}, {}), mk(1, {2}, {})});
  CHECK(canonical(h).terms == canonical(want).terms);
}

TEST_CASE("hadamard against dense products") {
  Direction l1{int_vec({1})};
  ShortRGF geo = rgf_of(1, {mk(1, {0}, {{1}})});
  ShortRGF ramp = rgf_of(1, {mk(1, {0}, {{1}, {1}}), mk(-1, {6}, {{1}, {1}})});
  // 1/(1-x) (*) (1-x^6)/(1-x)^2: coefficients min(i+1, 6)
  ShortRGF h = hadamard(geo, ramp, l1);
  CHECK(line(h, 0, 5) == std::vector<long>{1, 2, 3, 4, 5, 6});
  CHECK(line(h, 6, 9) == std::vector<long>{6, 6, 6, 6});
  check_hadamard_window(geo, ramp, l1, int_vec({0}), int_vec({9}));

  check_hadamard_window(rgf_of(1, {mk(1, {0}, {{1}, {1}})}), geo, l1, int_vec({0}),
                        int_vec({8}));
  // operand with a negatively oriented factor
  check_hadamard_window(rgf_of(1, {mk(1, {4}, {{-1}})}), geo, l1, int_vec({-2}), int_vec({6}));
  // both operands with two factors
  check_hadamard_window(rgf_of(1, {mk(1, {0}, {{1}, {2}})}), rgf_of(1, {mk(1, {1}, {{1}, {3}})}),
                        l1, int_vec({0}), int_vec({8}));
}

TEST_CASE("hadamard in two variables") {
  Direction l{int_vec({1, 2})};
  ShortRGF quad = rgf_of(2, {mk(1, {0, 0}, {{1, 0}, {0, 1}})});
  ShortRGF diag = rgf_of(2, {mk(1, {0, 0}, {{1, 1}})});
  check_hadamard_window(quad, diag, l, int_vec({0, 0}), int_vec({4, 4}));
  check_hadamard_window(quad, quad, l, int_vec({0, 0}), int_vec({3, 3}));
  // a Laurent-polynomial operand against a series
  ShortRGF spots = rgf_of(2, {mk(2, {1, 1}, {}), mk(-1, {2, 0}, {})});
  check_hadamard_window(quad, spots, l, int_vec({-1, -1}), int_vec({3, 3}));
}

TEST_CASE("hadamard_z maps across coefficient lists") {
  ShortRGF geo = rgf_of(1, {mk(1, {0}, {{1}})});
  ShortRGF ramp = rgf_of(1, {mk(1, {1}, {{1}, {1}})});
  auto out = hadamard_z({geo, ramp}, power_sum_rgf(0, 3), Direction{int_vec({1})});
  REQUIRE(out.size() == 2);
  CHECK(line(out[0], 0, 4) == std::vector<long>{1, 1, 1, 0, 0});
  CHECK(line(out[1], 0, 4) == std::vector<long>{0, 1, 2, 0, 0});
}

TEST_CASE("equals_laurent on equal and perturbed inputs") {
  // same polynomial, one written densely and one as a quotient
  ShortRGF dense = rgf_of(1, {mk(1, {0}, {}), mk(1, {1}, {})});
  ShortRGF quot = rgf_of(1, {mk(1, {0}, {{1}}), mk(-1, {2}, {{1}})});
  CHECK(equals_laurent(dense, quot));
  CHECK(equals_laurent(quot, dense));
  CHECK(equals_laurent(zero_rgf(2), zero_rgf(2)));

  ShortRGF bumped = rgf_of(1, {mk(1, {0}, {}), mk(1, {1}, {}), mk(1, {7}, {})});
  CHECK_FALSE(equals_laurent(bumped, quot));
  ShortRGF scaled = rgf_of(1, {mk(1, {0}, {}), mk(2, {1}, {})});
  CHECK_FALSE(equals_laurent(scaled, quot));

  ShortRGF five = rgf_of(1, {mk(1, {0}, {{1}}), mk(-1, {5}, {{1}})});
  ShortRGF ones = rgf_of(1, {mk(1, {0}, {}), mk(1, {1}, {}), mk(1, {2}, {}), mk(1, {3}, {}),
                             mk(1, {4}, {})});
  CHECK(equals_laurent(five, ones));
}

TEST_CASE("equals_laurent, randomized split representations") {
  std::mt19937 rng(20240817);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 40; ++trial) {
    size_t dim = trial % 2 == 0 ? 1 : 2;
    std::map<IntVec, Rat> coeffs;
    int nterms = rnd(1, 4);
    for (int i = 0; i < nterms; ++i) {
      IntVec p(dim);
      for (auto& x : p) x = rnd(-5, 5);
      coeffs[p] += rat_of(rnd(-3, 3));
    }
    ShortRGF g1 = laurent_from_coeffs(coeffs, dim);
    // rewrite each monomial as alpha x^p (1 - x^b)/(1 - x^b)
    ShortRGF g2 = zero_rgf(dim);
    for (const auto& t : g1.terms) {
      IntVec b(dim, Int(0));
      while (is_zero_vec(b))
        for (auto& x : b) x = rnd(-2, 2);
      g2.terms.push_back(Term{t.alpha, t.p, {b}});
      g2.terms.push_back(Term{-t.alpha, add_vec(t.p, b), {b}});
    }
    CHECK(equals_laurent(g1, g2));
    ShortRGF g3 = g2;
    IntVec bump(dim, Int(0));
    bump[0] = rnd(6, 9);
    g3.terms.push_back(Term{rat_of(1), bump, {}});
    CHECK_FALSE(equals_laurent(g1, g3));
  }
}

TEST_CASE("rgf json round trip") {
  ShortRGF f = rgf_of(2, {mk(1, {4, -1}, {{-1, 0}, {2, 1}})});
  f.terms[0].alpha = make_rat(Int(-7), Int(3));
  ShortRGF g = from_json(to_json(f));
  CHECK(canonical(f).terms == canonical(g).terms);
  CHECK(g.dim == 2);

  CHECK_THROWS_AS(from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(from_json("{\"dim\": 1}"), std::invalid_argument);
  CHECK_THROWS_AS(from_json("{\"dim\": 1, \"terms\": [{\"alpha\": \"1\", \"p\": [0], "
                            "\"denoms\": [[0]]}]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_json("{\"dim\": 2, \"terms\": [{\"alpha\": \"1\", \"p\": [0], "
                            "\"denoms\": []}]}"),
                  std::invalid_argument);
}
