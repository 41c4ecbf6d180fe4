#pragma once

// Exact arithmetic primitives shared by every module: arbitrary-precision
// integers and rationals backed by GMP, plus small dense vector helpers.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ehrkit {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_of(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Canonical string form: reduced, positive denominator, "/1" omitted.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

// ---- vector helpers ------------------------------------------------------

inline IntVec int_vec(std::initializer_list<long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVec rat_vec(std::initializer_list<long> xs) {
  RatVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot_rat(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline IntVec add_vec(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add_vec: size mismatch");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec sub_vec(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub_vec: size mismatch");
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec neg_vec(const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVec scale_vec(const Int& c, const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

/// Lexicographic comparison, used everywhere determinism matters.
inline bool lex_less(const IntVec& a, const IntVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline bool lex_less_rat(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
inline IntVec primitive_vec(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd_int(g, x);
  if (g == 0 || g == 1) return v;
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

}  // namespace ehrkit
