#pragma once

#include <string>

#include "ssn/algebraic.hpp"

namespace ssn {

inline constexpr long kDefaultSearchBound = 64;

/// Outcome of the multiplicative (in)dependence test for a pair (a, b).
struct Relation {
  enum class Kind { Dependent, IndependentCertified, IndependentUpTo };
  Kind kind = Kind::IndependentUpTo;
  long p = 0;  // Dependent: |a|^q = |b|^p, q > 0, gcd(p, q) = 1
  long q = 0;
  long bound = 0;  // IndependentUpTo: every 0 < |p|, |q| <= bound excluded
  std::string evidence;

  bool dependent() const { return kind == Kind::Dependent; }
  bool independent() const { return kind != Kind::Dependent; }
  bool certified() const { return kind != Kind::IndependentUpTo; }
};

std::string to_string(const Relation& r);

/// Throws ErrorKind::DegenerateInput when a or b is 0 or has modulus 1.
Relation multiplicative_relation(const FieldElement& a, const FieldElement& b,
                                 long search_bound = kDefaultSearchBound);
Relation multiplicative_relation(const AlgebraicNumber& a, const AlgebraicNumber& b,
                                 long search_bound = kDefaultSearchBound);

/// Element of Q(x) representing x itself.
FieldElement as_field_element(const AlgebraicNumber& x);

}  // namespace ssn
