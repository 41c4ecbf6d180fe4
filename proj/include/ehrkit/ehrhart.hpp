#pragma once

// Ehrhart quasi-polynomials i_P(t) = #(tP cap Z^d) of rational polytopes,
// computed through short rational generating functions: the t-coefficient
// form of F(t,z) = f_0(t) + f_1(t) z + ... + f_{D-1}(t) z^{D-1}, the
// cyclic-shift period test, and the factoring-based minimum-period search.

#include <functional>
#include <string>
#include <vector>

#include "ehrkit/polytope.hpp"
#include "ehrkit/rgf.hpp"

namespace ehrkit::ehrhart {

/// Dense constituent table: i_P(t) = constituents[t mod period] evaluated at
/// t, coefficients ascending in t.
struct QuasiPolynomial {
  Int period;
  std::vector<std::vector<Rat>> constituents;
};

/// F(t,z) stored by powers of t: coeffs[m] is a one-variable generating
/// function in z whose exponent-i coefficient is the t^m coefficient of the
/// constituent f_i. Each coeffs[m] is semantically a polynomial supported on
/// z^0 .. z^{period-1}.
struct TPolyRGF {
  size_t degree_bound = 0;            // dim of the polytope
  std::vector<rgf::ShortRGF> coeffs;  // degree_bound + 1 entries, dim 1 each
  Int period;
};

/// Returns the prime factors of a positive integer, with multiplicity.
using FactoringOracle = std::function<std::vector<Int>(const Int&)>;

/// Deterministic factoring: trial division, then Pollard's rho for what is
/// left.
FactoringOracle default_factoring_oracle();

/// #(tP cap Z^d), exactly, for t >= 0.
Int count(const polytope::Polytope& p, const Int& t);

/// The d+1 series a_k(z) = sum_i a_{ik} z^i where
/// i_P(sD + i) = sum_k a_{ik} s^k for 0 <= i < D.
std::vector<rgf::ShortRGF> interpolate_ak(const polytope::Polytope& p);

TPolyRGF build_F(const polytope::Polytope& p);

/// Rotate the constituent sequence left by n, 1 <= n <= period: coefficient
/// of z^i in the result is f_{(i+n) mod period}(t).
TPolyRGF cyclic_shift(const TPolyRGF& f, const Int& n);

/// True iff rotating F left by n mod period leaves it unchanged (always true
/// when period divides n).
bool is_period(const TPolyRGF& f, const Int& n);
bool is_period(const polytope::Polytope& p, const Int& n);

/// Minimum period of i_P(t): starting from the vertex denominator D, keep
/// dividing by any prime that preserves the period property.
Int min_period(const polytope::Polytope& p, const FactoringOracle& oracle);
Int min_period(const polytope::Polytope& p);

/// Dense read-out of build_F. Refuses denominators above dense_guard.
QuasiPolynomial quasipolynomial(const polytope::Polytope& p,
                                const Int& dense_guard = Int(10000));

std::string to_json(const QuasiPolynomial& q);

}  // namespace ehrkit::ehrhart
