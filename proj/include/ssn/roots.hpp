#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "ssn/bigreal.hpp"
#include "ssn/polynomial.hpp"

namespace ssn {

/// Closed rational interval holding exactly one real root. lo == hi marks a
/// rational root found exactly.
struct RealRootInterval {
  mpq_class lo;
  mpq_class hi;

  bool is_exact() const { return lo == hi; }
  BigReal enclosure(Precision bits = kDefaultPrecision) const {
    return BigReal::from_bounds(lo, hi, bits);
  }
};

/// Disc |z - (re + i im)| <= radius holding exactly one complex root.
struct RootDisc {
  mpq_class re;
  mpq_class im;
  mpq_class radius;

  BigReal modulus_enclosure(Precision bits = kDefaultPrecision) const;
};

/// One representative (positive imaginary part) per non-real conjugate pair,
/// with certified bounds on the common modulus.
struct ComplexPairBound {
  RootDisc disc;
  BigReal modulus;
};

struct RootIsolation {
  std::vector<RealRootInterval> real_roots;  // increasing, pairwise disjoint
  std::vector<ComplexPairBound> complex_pairs;
  /// Certified discs for every root (real ones included), same count as degree.
  std::vector<RootDisc> discs;
  Precision precision_used = 0;
};

/// Real roots by Sturm bisection (widths <= 2^-bits) and certified discs for
/// all complex roots; the precision doubles from `bits` until every disc is
/// isolated. Throws ErrorKind::RepeatedRoots for non-square-free input.
RootIsolation isolate_real_roots(const IntPolynomial& p, Precision bits = kDefaultPrecision);

/// Real-root intervals only (cheaper; no complex discs).
std::vector<RealRootInterval> isolate_real_root_intervals(const IntPolynomial& p);

/// Bisects `root` (which must isolate a root of p) down to width <= 2^-bits.
RealRootInterval refine_root(const IntPolynomial& p, RealRootInterval root, Precision bits);

/// A nontrivial integer factor of p, or nullopt when p is irreducible over Q.
/// p must be square-free of degree <= 16.
std::optional<IntPolynomial> find_factor(const IntPolynomial& p);
bool is_irreducible(const IntPolynomial& p);

/// x^d p(1/x) = +-p(x).
bool is_self_reciprocal(const IntPolynomial& p);

}  // namespace ssn
