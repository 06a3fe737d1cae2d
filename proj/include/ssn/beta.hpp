#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssn/algebraic.hpp"
#include "ssn/ifs.hpp"

namespace ssn {

/// Enclosure of a real number at a requested precision.
using RealApproximator = std::function<BigReal(Precision)>;

/// A real number that is either exact (number-field element) or given by
/// arbitrarily precise enclosures.
struct RealPoint {
  std::optional<FieldElement> exact;
  RealApproximator approx;

  static RealPoint of(FieldElement x);
  static RealPoint of(RealApproximator f);
  BigReal enclosure(Precision bits) const;
  double to_double() const { return enclosure(64).mid(); }
};

class BetaBase {
 public:
  /// "2", "5/2", "golden", "1 + sqrt2", or a polynomial in x such as
  /// "x^3 - x^2 - x - 1" (its largest real root).
  static BetaBase parse(const std::string& spec);
  explicit BetaBase(FieldElement value, std::string spec = "");

  const FieldElement& value() const { return value_; }
  const AlgebraicNumber& algebraic() const { return alg_; }
  bool pisot() const { return pisot_; }
  bool is_integer() const { return value_.is_rational() && value_.as_rational()->get_den() == 1; }
  /// Digits are 0 .. alphabet_size()-1.
  int alphabet_size() const { return alphabet_; }
  double to_double() const { return approx_; }
  double log2() const;
  const std::string& spec() const { return spec_; }

 private:
  FieldElement value_;
  AlgebraicNumber alg_;
  bool pisot_ = false;
  int alphabet_ = 0;
  double approx_ = 0;
  std::string spec_;
};

struct OrbitRecord {
  std::vector<int> digits;                 // digits[k] = floor(beta x_k), k = 0..n-1
  std::vector<double> orbit;               // x_0 .. x_n (rounded)
  std::vector<BigReal> orbit_enclosures;   // x_0 .. x_n, when requested (non-exact path)
  std::vector<FieldElement> orbit_exact;   // x_0 .. x_n, when requested (exact path)
  bool exact = false;
  Precision precision_used = 0;
  int restarts = 0;
};

struct OrbitOptions {
  bool keep_orbit = false;
  Precision max_precision = Precision{1} << 20;
};

/// n steps of T(x) = beta x mod 1. Exact inputs in the field of beta (or
/// rational) use exact arithmetic; otherwise interval arithmetic at
/// ceil(n log2 beta) + 64 bits, doubled on any undecided floor, with
/// ErrorKind::OrbitUndecidable past max_precision.
OrbitRecord beta_orbit(const BetaBase& b, const RealPoint& x, std::size_t n, const OrbitOptions& opt = {});

inline constexpr int kDefaultParryTruncation = 256;

struct ParryDensity {
  std::vector<double> breakpoints;  // 0 = c_0 < ... < c_m = 1
  std::vector<double> values;       // values[k] on [c_k, c_{k+1})
  std::vector<FieldElement> breakpoints_exact;
  std::vector<FieldElement> values_exact;  // empty unless the series is summed exactly
  double normalization = 0;
  double tail_bound = 0;  // absolute error of every value (0 when exact)
  bool exact = false;
  std::string orbit_kind;  // "finite", "periodic" or "truncated"

  double density(double x) const;
  double cdf(double x) const;
};

ParryDensity parry_density(const BetaBase& b, int truncation = kDefaultParryTruncation);

inline constexpr int kDiscrepancyGrid = 1024;

struct NormalityStat {
  std::vector<double> digit_freqs;
  double discrepancy = 0;  // sup over the grid j/1024 of |F_orbit - F_parry|
  Precision precision_used = 0;
  bool exact = false;
};

NormalityStat normality_statistic(const BetaBase& b, const ParryDensity& parry, const RealPoint& x, std::size_t n);
NormalityStat normality_statistic(const OrbitRecord& orbit, const BetaBase& b, const ParryDensity& parry, std::size_t n);

/// Smallest exact-sampling depth for which the truncation error is below
/// beta^-n 2^-64.
int exact_depth_for_digits(double beta, std::size_t n, double max_ratio, double diam);

/// Smooth map applied to sample points before testing.
class Pushforward {
 public:
  /// "identity", a polynomial in x with rational coefficients ("2x + 5",
  /// "x + x^2/10"), or one of exp, atan, sinh.
  static Pushforward parse(const std::string& spec);

  /// Throws ErrorKind::NotDiffeomorphism when a polynomial derivative vanishes on [lo, hi].
  void check_on(const Interval& hull) const;
  RealPoint apply(const RealPoint& x) const;
  const std::string& spec() const { return spec_; }

 private:
  std::string spec_;
  std::optional<RatPolynomial> poly_;
  std::string builtin_;
};

/// x - floor(x).
RealPoint reduce_mod1(const RealPoint& x);

}  // namespace ssn
