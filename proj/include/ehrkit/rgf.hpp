#pragma once

// Short rational generating functions: finite sums of terms
//   alpha * x^p / prod_j (1 - x^{b_j})
// with exact rational alpha and integer exponent vectors, plus the algebra on
// them (shift, substitution, specialization at 1, Hadamard products, equality
// of Laurent polynomials).

#include <string>
#include <vector>

#include "ehrkit/rational.hpp"

namespace ehrkit::rgf {

struct Term {
  Rat alpha;
  IntVec p;
  std::vector<IntVec> denoms;  // nonzero vectors; repetitions allowed
};

inline bool operator==(const Term& a, const Term& b) {
  return a.alpha == b.alpha && a.p == b.p && a.denoms == b.denoms;
}

struct ShortRGF {
  size_t dim = 0;
  std::vector<Term> terms;
};

ShortRGF zero_rgf(size_t dim);
ShortRGF monomial(size_t dim, const Rat& alpha, const IntVec& p);

/// Canonical form: every denominator vector oriented so its first nonzero
/// entry is positive (via 1/(1-x^b) = -x^{-b}/(1-x^{-b})), denominators
/// sorted within each term, terms sorted and merged, zero terms dropped.
ShortRGF canonical(const ShortRGF& f);

ShortRGF add(const ShortRGF& f, const ShortRGF& g);
ShortRGF scale(const ShortRGF& f, const Rat& c);
ShortRGF shift(const ShortRGF& f, const IntVec& e);

/// x_v -> x^{images[v]}; target dimension is images[v].size().
struct MonomialMap {
  size_t target_dim = 0;
  std::vector<IntVec> images;  // one exponent vector per source variable
};

/// g(z) = f(phi(z)). Denominator vectors mapping to zero are handled by a
/// limit along a generic perturbation; the limit must exist (it does for all
/// substitutions arising from lattice-point series).
ShortRGF substitute_monomial(const ShortRGF& f, const MonomialMap& phi);

/// Sum of the series coefficients: the limit of f toward (1,...,1) along a
/// generic ray. Throws std::domain_error when the limit has a pole.
Rat specialize_all_ones(const ShortRGF& f);

/// Set the trailing variable block to 1, keeping the first keep_dims
/// variables: the y -> 1 limit of f(z, y) computed per term.
ShortRGF specialize_partial(const ShortRGF& f, size_t keep_dims);

struct Direction {
  IntVec l;  // requires <l, b> != 0 for every denominator it is applied to
};

/// Flip denominators so <l, b> > 0 for all of them.
ShortRGF normalize_direction(const ShortRGF& f, const IntVec& l);

/// Coefficientwise product of the two series expanded in direction l.
ShortRGF hadamard(const ShortRGF& g1, const ShortRGF& g2, const Direction& l);

/// hadamard applied to each entry of a coefficient list against a fixed kernel.
std::vector<ShortRGF> hadamard_z(const std::vector<ShortRGF>& tcoeffs,
                                 const ShortRGF& kernel, const Direction& l);

/// Sum_{i=0}^{D-1} i^j z^i as a short univariate RGF (term count grows with j,
/// not with D).
ShortRGF power_sum_rgf(size_t j, const Int& D);

/// Decide g1 == g2 for operands that are semantically Laurent polynomials:
/// h = g1 - g2, then h~ = h (*) h and the test h~(1) = sum of squared
/// coefficients = 0.
bool equals_laurent(const ShortRGF& g1, const ShortRGF& g2);

std::string to_json(const ShortRGF& f);
ShortRGF from_json(const std::string& text);

}  // namespace ehrkit::rgf
