#pragma once

// Lattice-point generating functions of pointed rational polyhedra: placing
// triangulation, signed decomposition into unimodular cones, and the Brion
// sum over vertex tangent cones.

#include <vector>

#include "ehrkit/polytope.hpp"
#include "ehrkit/rational.hpp"
#include "ehrkit/rgf.hpp"

namespace ehrkit::barvinok {

struct SignedUnimodularCone {
  int sign = 1;  // +1 or -1
  RatVec apex;
  std::vector<IntVec> generators;  // square, |det| = 1
};

/// Triangulate a pointed cone into simplicial cones spanned by subsets of its
/// generators, by placing the generators in descending lexicographic order.
/// Throws std::invalid_argument when the cone is not pointed.
std::vector<polytope::Cone> triangulate(const polytope::Cone& c);

/// Signed decomposition of a simplicial cone into unimodular cones such that
/// for every bounded window W,
///   #(c cap Z^d cap W) = sum_i sign_i * #(cone_i cap Z^d cap W).
/// Index-halving replacement vectors are produced until every piece is
/// unimodular; half-open bookkeeping makes the identity exact, and each leaf
/// is converted back to a closed cone by an apex shift.
std::vector<SignedUnimodularCone> decompose_unimodular(const polytope::Cone& c);

/// x^p / prod_i (1 - x^{g_i}) with p the lexicographically determined lattice
/// generator: p = G ceil(G^{-1} apex) in the generator basis, times sign.
rgf::ShortRGF cone_rgf(const SignedUnimodularCone& c);

/// Generating function of { x in Z^n : ineq_lhs x <= ineq_rhs and
/// eq_lhs x = eq_rhs }. The solution polyhedron must be pointed; lattice-empty
/// systems give the zero function. Lower-dimensional solution sets are handled
/// by eliminating equalities through an integer parametrization.
rgf::ShortRGF lattice_rgf(size_t n, const std::vector<IntVec>& ineq_lhs,
                          const IntVec& ineq_rhs,
                          const std::vector<IntVec>& eq_lhs,
                          const IntVec& eq_rhs);

/// Sum over vertices of x^{(lattice generator of the tangent cone)} terms:
/// the generating function of p cap Z^d as a short RGF.
rgf::ShortRGF polytope_rgf(const polytope::Polytope& p);

}  // namespace ehrkit::barvinok
