#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssn/bigreal.hpp"
#include "ssn/polynomial.hpp"
#include "ssn/roots.hpp"

namespace ssn {

/// A real algebraic number: an irreducible primitive integer polynomial plus a
/// rational interval isolating one of its real roots.
///
/// Values are immutable. Refinement narrows a shared isolation cache and never
/// changes which root is designated, so copies stay consistent.
class AlgebraicNumber {
 public:
  static AlgebraicNumber from_rational(const mpq_class& value);
  /// `index` counts real roots in increasing order. Rejects reducible input.
  static AlgebraicNumber real_root(const IntPolynomial& p, std::size_t index);
  static AlgebraicNumber largest_real_root(const IntPolynomial& p);
  /// Trusted constructor: `min_poly` is irreducible and `root` isolates a root.
  static AlgebraicNumber from_isolation(const IntPolynomial& min_poly, const RealRootInterval& root);

  const IntPolynomial& min_poly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  bool is_rational() const { return degree() == 1; }
  std::optional<mpq_class> rational_value() const;
  /// Monic minimal polynomial, i.e. an algebraic integer.
  bool is_algebraic_integer() const { return poly_.leading() == 1; }

  RealRootInterval isolation() const;
  /// Enclosure of absolute width at most 2^-bits * max(1, |x|).
  BigReal enclosure(Precision bits) const;
  double to_double() const { return enclosure(64).mid(); }
  /// Sign of (x - q), exact.
  int compare(const mpq_class& q) const;

  std::string describe() const;

 private:
  struct Cache;
  IntPolynomial poly_;
  std::shared_ptr<Cache> cache_;
};

/// Q(theta) for a real algebraic theta. The rationals are the degree-1 field.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> rationals();
  static std::shared_ptr<const NumberField> make(const AlgebraicNumber& generator, std::string name);
  /// Registry of named generators: phi (alias golden), sqrt2, sqrt3, sqrt5,
  /// silver, tribonacci, plastic. Returns nullptr for unknown names.
  static std::shared_ptr<const NumberField> named(const std::string& name);

  int degree() const { return degree_; }
  bool is_rational() const { return degree_ == 1; }
  const AlgebraicNumber& generator() const { return generator_; }
  const std::string& name() const { return name_; }
  /// Monic minimal polynomial of the generator over Q.
  const RatPolynomial& modulus() const { return modulus_; }
  /// theta^k reduced to the power basis, for k = degree .. 2*degree-2.
  const std::vector<std::vector<mpq_class>>& reductions() const { return reductions_; }

  bool same_as(const NumberField& other) const;

 private:
  NumberField(AlgebraicNumber generator, std::string name);

  AlgebraicNumber generator_;
  std::string name_;
  int degree_;
  RatPolynomial modulus_;
  std::vector<std::vector<mpq_class>> reductions_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Exact real number in a number field, stored in the power basis of the
/// field's generator. Rationals are elements of NumberField::rationals() and
/// combine with elements of any field.
class FieldElement {
 public:
  FieldElement();
  FieldElement(long value);  // NOLINT(google-explicit-constructor)
  FieldElement(const mpq_class& value);  // NOLINT(google-explicit-constructor)
  FieldElement(FieldPtr field, std::vector<mpq_class> coefficients);

  static FieldElement generator(FieldPtr field);

  const NumberField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  std::optional<mpq_class> as_rational() const;

  /// Exact sign, decided by refining the generator until the enclosure
  /// excludes zero.
  int sign() const;
  BigReal enclosure(Precision bits) const;
  double to_double() const;
  mpz_class floor() const;
  FieldElement abs() const { return sign() < 0 ? -*this : *this; }
  FieldElement inverse() const;
  FieldElement pow(long exponent) const;

  /// Minimal polynomial over Q (monic) and the corresponding algebraic number.
  RatPolynomial minimal_polynomial() const;
  AlgebraicNumber to_algebraic() const;

  /// Parseable form, e.g. "1/2 + 3/4*phi".
  std::string to_string() const;
  /// Stable key for hashing equal values.
  std::string key() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return (a - b).sign() < 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return b < a; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return !(b < a); }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return !(a < b); }

 private:
  FieldPtr field_;
  std::vector<mpq_class> c_;
};

/// Field shared by both operands (promoting rationals); throws
/// ErrorKind::IncompatibleFields otherwise.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);
FieldElement promote(const FieldElement& x, const FieldPtr& field);

/// Parses exact real expressions: integers, decimals, fractions, named
/// constants and sqrt(n), combined with + - * / ^ and parentheses.
/// Examples: "1/3", "-0.25", "1/phi^2", "2 - sqrt2".
FieldElement parse_exact(const std::string& text);

/// Result of the Pisot test together with conjugate moduli.
struct PisotReport {
  bool pisot = false;
  std::string reason;
  std::vector<BigReal> conjugate_moduli;  // one entry per conjugate other than x
  Precision precision_used = 0;
};

PisotReport pisot_report(const AlgebraicNumber& x);
bool is_pisot(const AlgebraicNumber& x);

}  // namespace ssn
