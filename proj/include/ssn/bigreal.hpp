#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace ssn {

using Precision = long;

inline constexpr Precision kDefaultPrecision = 128;

/// Certified real enclosure: a closed interval [lo, hi] with MPFR endpoints.
///
/// Every operation rounds the lower endpoint down and the upper endpoint up,
/// so the true value of any expression evaluated with BigReal operands lies
/// inside the resulting interval. The error bound reported by radius() is the
/// half-width, in units of the value.
class BigReal {
 public:
  explicit BigReal(Precision bits = kDefaultPrecision);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal from_int(long value, Precision bits = kDefaultPrecision);
  static BigReal from_mpz(const mpz_class& value, Precision bits = kDefaultPrecision);
  static BigReal from_mpq(const mpq_class& value, Precision bits = kDefaultPrecision);
  static BigReal from_double(double value, Precision bits = kDefaultPrecision);
  static BigReal from_bounds(const mpq_class& lo, const mpq_class& hi,
                             Precision bits = kDefaultPrecision);
  /// Smallest interval containing both operands.
  static BigReal hull(const BigReal& a, const BigReal& b);

  Precision precision() const { return prec_; }
  BigReal with_precision(Precision bits) const;

  double lower() const;
  double upper() const;
  double mid() const;
  /// Upper bound on |value - mid()| where mid() is the rounded midpoint.
  double radius() const;
  double width() const;
  mpq_class lower_q() const;
  mpq_class upper_q() const;
  /// Midpoint as an exact rational (at working precision).
  mpq_class mid_q() const;

  bool contains(const mpq_class& q) const;
  bool contains(const BigReal& inner) const;
  bool contains_zero() const;
  /// +1 / -1 when the sign is certified, 0 when the interval touches zero.
  int sign() const;
  bool certainly_less(const BigReal& other) const;
  bool certainly_greater(const BigReal& other) const;
  bool overlaps(const BigReal& other) const;

  /// floor() of every point in the interval when it is the same integer.
  std::optional<mpz_class> floor() const;

  BigReal operator-() const;
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
  BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
  BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
  BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

  BigReal abs() const;
  BigReal square() const;
  BigReal sqrt() const;
  BigReal exp() const;
  BigReal log() const;
  BigReal atan() const;
  BigReal sinh() const;
  BigReal pow(long exponent) const;

  std::string to_string(int digits = 20) const;

  mpfr_srcptr lo_ptr() const { return lo_; }
  mpfr_srcptr hi_ptr() const { return hi_; }

 private:
  Precision prec_;
  mpfr_t lo_;
  mpfr_t hi_;

  BigReal(Precision bits, bool uninitialized_tag);
};

}  // namespace ssn
