#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "ssn/bigreal.hpp"

namespace ssn {

/// Dense univariate polynomial, coefficients lowest degree first.
/// The coefficient vector is kept trimmed: the zero polynomial is empty and
/// otherwise the last entry is nonzero.
template <typename Coef>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coef> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Polynomial constant(Coef value) { return Polynomial(std::vector<Coef>{std::move(value)}); }
  static Polynomial monomial(int degree, Coef value = Coef(1)) {
    std::vector<Coef> c(static_cast<std::size_t>(degree) + 1, Coef(0));
    c.back() = std::move(value);
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coef>& coefficients() const { return c_; }
  Coef coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Coef(0);
  }
  const Coef& leading() const { return c_.back(); }

  template <typename T>
  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Coef> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Coef(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Coef> r(std::max(a.c_.size(), b.c_.size()), Coef(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Coef> r(std::max(a.c_.size(), b.c_.size()), Coef(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coef> r(a.c_.size() + b.c_.size() - 1, Coef(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  Polynomial scaled(const Coef& s) const {
    std::vector<Coef> r = c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const { return scaled(Coef(-1)); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  std::vector<Coef> c_;

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

using IntPolynomial = Polynomial<mpz_class>;
using RatPolynomial = Polynomial<mpq_class>;

RatPolynomial to_rational(const IntPolynomial& p);
/// Scales by the lcm of denominators and divides by the content; the result
/// has a positive leading coefficient.
IntPolynomial primitive_part(const RatPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);
mpz_class content(const IntPolynomial& p);

/// Euclidean division over Q; throws on a zero divisor.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial monic(const RatPolynomial& p);
/// Monic gcd over Q (zero when both inputs are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
/// p / gcd(p, p'), made monic.
RatPolynomial squarefree_part(const RatPolynomial& p);
bool is_squarefree(const IntPolynomial& p);
/// Exact division test in Q[x].
bool divides(const RatPolynomial& d, const RatPolynomial& p);

/// x^deg p(1/x).
IntPolynomial reversed(const IntPolynomial& p);
/// p(-x).
IntPolynomial negated_argument(const IntPolynomial& p);

/// Sign of p at an exact rational point.
int sign_at(const IntPolynomial& p, const mpq_class& x);
/// Interval (Horner) enclosure of p over the enclosure x.
BigReal eval_enclosure(const IntPolynomial& p, const BigReal& x);
BigReal eval_enclosure(const RatPolynomial& p, const BigReal& x);

/// Parses forms such as "x^2 - x - 1", "3*x^3+2x-7", "x^2/2 + 1", or a bare
/// number. The variable is `x`.
RatPolynomial parse_polynomial(const std::string& text);
std::string to_string(const IntPolynomial& p);
std::string to_string(const RatPolynomial& p);

/// Sturm chain for counting real roots of a square-free polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const RatPolynomial& p);
  /// Number of sign variations at the rational point x.
  int variations(const mpq_class& x) const;
  int variations_at_infinity(bool positive) const;
  /// Roots in the half-open interval (a, b].
  int count(const mpq_class& a, const mpq_class& b) const;
  int count_all() const;

 private:
  std::vector<RatPolynomial> chain_;
};

/// Cauchy bound: every root z satisfies |z| < bound.
mpq_class cauchy_bound(const RatPolynomial& p);

}  // namespace ssn
