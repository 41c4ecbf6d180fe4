#pragma once

// Rational polytopes in H-representation: vertex enumeration, denominator,
// dilation, tangent cones, and the lifted polyhedra used for interpolation.

#include <string>
#include <vector>

#include "ehrkit/rational.hpp"

namespace ehrkit::polytope {

/// Solution set of { x : <lhs_i, x> <= rhs_i }. Instances are validated at
/// construction: the set must be bounded (empty is fine).
struct Polytope {
  size_t dim = 0;
  std::vector<IntVec> lhs;
  IntVec rhs;
  bool empty = false;

  size_t num_inequalities() const { return lhs.size(); }
};

/// Validating constructor. Throws std::invalid_argument on malformed input
/// and std::runtime_error("not a polytope") when the set is unbounded.
Polytope make_polytope(size_t dim, std::vector<IntVec> lhs, IntVec rhs);

/// Parse the JSON H-rep {"dim": d, "inequalities": [[c_1..c_d, b], ...]}.
/// Entries may be JSON integers or decimal strings (for big values).
Polytope parse(const std::string& text);

/// Serialize back to the JSON H-rep format.
std::string to_json(const Polytope& p);

/// The pentagon family with vertices (0,0), (0,-1/s), (D,-1/s), (D,0),
/// (1,(D-1)/D). Requires D >= 2, s >= 1.
Polytope pentagon(const Int& D, const Int& s);

struct VertexSet {
  std::vector<RatVec> vertices;  // deduplicated, lexicographically sorted
};

VertexSet vertices(const Polytope& p);

/// lcm of the denominators of all vertex coordinates; 1 for the empty polytope.
Int denominator(const Polytope& p);

/// { t*x : x in P }. For t = 0 and nonempty P this is {0}; the empty polytope
/// stays empty for every t.
Polytope dilate(const Polytope& p, const Int& t);

struct Cone {
  RatVec apex;
  std::vector<IntVec> generators;  // primitive, deduplicated, lex sorted
};

/// Cone of feasible directions at a vertex, generated by the primitive edge
/// directions. Throws std::invalid_argument when v is not a vertex.
Cone tangent_cone(const Polytope& p, const RatVec& v);

/// The (d+1)-dimensional polytope {(z,y) : 0 <= z <= D-1, y in (jD+z)P}.
/// Its lattice points with first coordinate a are {a} x ((jD+a)P cap Z^d).
Polytope build_Q_j(const Polytope& p, size_t j, const Int& D);

}  // namespace ehrkit::polytope
