#pragma once

// Brute-force reference implementations: lattice-point enumeration by box
// scan, dense series expansion, and quasi-polynomial recovery by per-residue
// interpolation. Deliberately shares nothing with the generating-function
// pipeline beyond the Rational/IntVector layer and the public structs, so the
// two sides can check each other.

#include <map>
#include <vector>

#include "ehrkit/ehrhart.hpp"
#include "ehrkit/polytope.hpp"
#include "ehrkit/rgf.hpp"

namespace ehrkit::oracle {

/// Exact series coefficients on a finite exponent box; missing entries are
/// zero.
struct DenseSeries {
  IntVec lo, hi;
  std::map<IntVec, Rat> coefficients;
};

/// All lattice points of p, lexicographically sorted.
std::vector<IntVec> enumerate(const polytope::Polytope& p);

/// Coefficients of f's ascending-direction Laurent expansion on [lo, hi].
DenseSeries expand_dense(const rgf::ShortRGF& f, const IntVec& lo,
                         const IntVec& hi);

/// Quasi-polynomial by counting: for each residue i mod D, fit a degree-d
/// polynomial to the counts at t = i, i+D, ..., i+dD and check one extra
/// sample.
ehrhart::QuasiPolynomial brute_quasipolynomial(const polytope::Polytope& p);

/// Smallest n >= 1 such that rotating the constituent list by n fixes it.
Int brute_min_period(const ehrhart::QuasiPolynomial& q);

}  // namespace ehrkit::oracle
