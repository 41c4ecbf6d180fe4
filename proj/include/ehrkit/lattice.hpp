#pragma once

// Integer lattice algorithms: Hermite normal form, integer linear systems,
// LLL reduction and the short-vector step of Barvinok's decomposition.

#include "ehrkit/matrix.hpp"
#include "ehrkit/rational.hpp"

namespace ehrkit::exact {

/// Determinant of a square integer matrix given by columns (Bareiss).
Int int_det(const std::vector<IntVec>& cols);

struct HnfResult {
  std::vector<IntVec> h;  // columns of H, zero columns trailing
  std::vector<IntVec> u;  // columns of U, unimodular, B * U = H
};

/// Column-style Hermite normal form: pivots positive, entries left of a pivot
/// reduced into [0, pivot), staircase descending, B * U = H with |det U| = 1.
HnfResult hermite_normal_form(const std::vector<IntVec>& cols);

struct IntSolveResult {
  bool solvable = false;       // an integer solution exists
  IntVec x0;                   // one integer solution (when solvable)
  std::vector<IntVec> kernel;  // lattice basis of the integer kernel
};

/// Solve E x = e over the integers; rows are the rows of E.
/// kernel is filled in even when the inhomogeneous system has no solution.
IntSolveResult solve_integer_system(const std::vector<IntVec>& rows, const IntVec& e);

/// Lattice basis of { x in Z^n : <row, x> = 0 for every row }.
std::vector<IntVec> int_kernel(const std::vector<IntVec>& rows, size_t n);

/// In-place LLL reduction (delta = 3/4) of an integer column basis.
void lll_reduce(std::vector<IntVec>& cols);

struct ShortVector {
  IntVec w;      // nonzero integer vector
  RatVec gamma;  // coordinates of w in the given basis, |gamma_i| <= index^(-1/d)
};

/// Barvinok's short vector for a nonsingular integer basis (given as columns).
/// Requires |det| >= 2; throws std::invalid_argument("already unimodular")
/// when the basis has index 1.  Deterministic: among all candidates inside a
/// fixed search box, the lexicographically greatest w is returned.
ShortVector barvinok_short_vector(const std::vector<IntVec>& cols);

}  // namespace ehrkit::exact
