#include "ssn/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssn/error.hpp"

namespace ssn {

namespace {

// Scratch value with RAII; used for the four-corner products.
struct Scratch {
  mpfr_t v;
  explicit Scratch(Precision bits) { mpfr_init2(v, bits); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

Precision join(const BigReal& a, const BigReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigReal::BigReal(Precision bits) : prec_(bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

BigReal::BigReal(Precision bits, bool) : prec_(bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
}

BigReal::BigReal(const BigReal& other) : BigReal(other.prec_, true) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

BigReal::BigReal(BigReal&& other) noexcept : BigReal(other.prec_, true) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

BigReal::~BigReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

BigReal BigReal::from_int(long value, Precision bits) {
  BigReal r(bits, true);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

BigReal BigReal::from_mpz(const mpz_class& value, Precision bits) {
  BigReal r(bits, true);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

BigReal BigReal::from_mpq(const mpq_class& value, Precision bits) {
  BigReal r(bits, true);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

BigReal BigReal::from_double(double value, Precision bits) {
  BigReal r(bits, true);
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

BigReal BigReal::from_bounds(const mpq_class& lo, const mpq_class& hi, Precision bits) {
  if (hi < lo) throw Error(ErrorKind::Precondition, "BigReal bounds out of order");
  BigReal r(bits, true);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

BigReal BigReal::hull(const BigReal& a, const BigReal& b) {
  BigReal r(join(a, b), true);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::with_precision(Precision bits) const {
  BigReal r(bits, true);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

double BigReal::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double BigReal::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double BigReal::mid() const {
  Scratch s(prec_ + 1);
  mpfr_add(s.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(s.v, s.v, 1, MPFR_RNDN);
  return mpfr_get_d(s.v, MPFR_RNDN);
}

double BigReal::radius() const {
  const double m = mid();
  Scratch a(prec_ + 64);
  Scratch b(prec_ + 64);
  mpfr_sub_d(a.v, hi_, m, MPFR_RNDU);
  mpfr_d_sub(b.v, m, lo_, MPFR_RNDU);
  mpfr_max(a.v, a.v, b.v, MPFR_RNDU);
  return mpfr_get_d(a.v, MPFR_RNDU);
}

double BigReal::width() const {
  Scratch s(prec_);
  mpfr_sub(s.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(s.v, MPFR_RNDU);
}

mpq_class BigReal::lower_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class BigReal::upper_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

mpq_class BigReal::mid_q() const { return (lower_q() + upper_q()) / 2; }

bool BigReal::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool BigReal::contains(const BigReal& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool BigReal::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

int BigReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

bool BigReal::certainly_less(const BigReal& other) const { return mpfr_less_p(hi_, other.lo_); }
bool BigReal::certainly_greater(const BigReal& other) const { return other.certainly_less(*this); }
bool BigReal::overlaps(const BigReal& other) const {
  return !certainly_less(other) && !certainly_greater(other);
}

std::optional<mpz_class> BigReal::floor() const {
  mpz_class a;
  mpz_class b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

BigReal BigReal::operator-() const {
  BigReal r(prec_, true);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(join(a, b), true);
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(join(a, b), true);
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  const Precision p = join(a, b);
  BigReal r(p, true);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  Scratch t(p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  if (b.contains_zero()) throw Error(ErrorKind::Precondition, "division by an interval containing zero");
  const Precision p = join(a, b);
  BigReal r(p, true);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  Scratch t(p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

BigReal BigReal::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  BigReal r(prec_, true);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::square() const { return pow(2); }

BigReal BigReal::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw Error(ErrorKind::Precondition, "sqrt of a negative interval");
  BigReal r(prec_, true);
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::exp() const {
  BigReal r(prec_, true);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::log() const {
  if (mpfr_sgn(lo_) <= 0) throw Error(ErrorKind::Precondition, "log of a non-positive interval");
  BigReal r(prec_, true);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::atan() const {
  BigReal r(prec_, true);
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::sinh() const {
  BigReal r(prec_, true);
  mpfr_sinh(r.lo_, lo_, MPFR_RNDD);
  mpfr_sinh(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigReal BigReal::pow(long exponent) const {
  if (exponent == 0) return from_int(1, prec_);
  if (exponent < 0) return from_int(1, prec_) / pow(-exponent);
  const unsigned long n = static_cast<unsigned long>(exponent);
  BigReal r(prec_, true);
  const bool even = (n % 2) == 0;
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    if (even) {
      mpfr_pow_ui(r.lo_, hi_, n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_, lo_, n, MPFR_RNDU);
    } else {
      mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
    }
  } else if (even) {
    Scratch m(prec_);
    mpfr_neg(m.v, lo_, MPFR_RNDU);
    mpfr_max(m.v, m.v, hi_, MPFR_RNDU);
    mpfr_set_zero(r.lo_, 1);
    mpfr_pow_ui(r.hi_, m.v, n, MPFR_RNDU);
  } else {
    mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
  }
  return r;
}

std::string BigReal::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << mid() << " +/- " << radius();
  return os.str();
}

}  // namespace ssn
