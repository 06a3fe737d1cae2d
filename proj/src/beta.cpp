#include "ssn/beta.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ssn/error.hpp"

namespace ssn {

RealPoint RealPoint::of(FieldElement x) {
  RealPoint p;
  p.exact = std::move(x);
  return p;
}

RealPoint RealPoint::of(RealApproximator f) {
  RealPoint p;
  p.approx = std::move(f);
  return p;
}

BigReal RealPoint::enclosure(Precision bits) const {
  if (exact) return exact->enclosure(bits);
  if (!approx) throw Error(ErrorKind::Precondition, "empty real point");
  return approx(bits);
}

// ---------------------------------------------------------------------------
// BetaBase

BetaBase BetaBase::parse(const std::string& spec) {
  if (spec.find('x') != std::string::npos) {
    const IntPolynomial p = primitive_part(parse_polynomial(spec));
    const AlgebraicNumber a = AlgebraicNumber::largest_real_root(p);
    if (auto q = a.rational_value()) return BetaBase(FieldElement(*q), spec);
    for (const char* name : {"phi", "silver", "tribonacci", "plastic"}) {
      const FieldPtr f = NumberField::named(name);
      if (f->generator().min_poly() == a.min_poly() && f->same_as(*NumberField::make(a, "beta"))) {
        return BetaBase(FieldElement::generator(f), spec);
      }
    }
    return BetaBase(FieldElement::generator(NumberField::make(a, "beta")), spec);
  }
  return BetaBase(parse_exact(spec), spec);
}

BetaBase::BetaBase(FieldElement value, std::string spec)
    : value_(std::move(value)), alg_(value_.to_algebraic()), spec_(std::move(spec)) {
  if (value_ <= FieldElement(1)) throw Error(ErrorKind::Precondition, "beta must exceed 1, got " + value_.to_string());
  if (spec_.empty()) spec_ = value_.to_string();
  pisot_ = is_pisot(alg_);
  const mpz_class f = value_.floor();
  alphabet_ = static_cast<int>(f.get_si()) + (is_integer() ? 0 : 1);
  approx_ = value_.to_double();
}

double BetaBase::log2() const { return std::log2(approx_); }

// ---------------------------------------------------------------------------
// Orbits

namespace {

bool exact_compatible(const BetaBase& b, const FieldElement& x) {
  if (x.is_rational()) return true;
  try {
    common_field(b.value().field_ptr(), x.field_ptr());
    return true;
  } catch (const Error&) {
    return false;
  }
}

OrbitRecord exact_orbit(const BetaBase& b, const FieldElement& x0, std::size_t n, const OrbitOptions& opt) {
  if (x0.sign() < 0 || x0 >= FieldElement(1)) throw Error(ErrorKind::Precondition, "orbit start must lie in [0,1)");
  OrbitRecord rec;
  rec.exact = true;
  rec.digits.reserve(n);
  rec.orbit.reserve(n + 1);
  FieldElement x = x0;
  rec.orbit.push_back(x.to_double());
  if (opt.keep_orbit) rec.orbit_exact.push_back(x);

  if (b.is_integer() && x.is_rational()) {
    // plain rational arithmetic
    const mpz_class beta = b.value().as_rational()->get_num();
    mpq_class q = *x.as_rational();
    mpz_class d;
    for (std::size_t k = 0; k < n; ++k) {
      q *= beta;
      mpz_fdiv_q(d.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      q -= d;
      rec.digits.push_back(static_cast<int>(d.get_si()));
      rec.orbit.push_back(q.get_d());
      if (opt.keep_orbit) rec.orbit_exact.emplace_back(q);
    }
    return rec;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const FieldElement y = b.value() * x;
    const mpz_class d = y.floor();
    x = y - FieldElement(mpq_class(d));
    rec.digits.push_back(static_cast<int>(d.get_si()));
    rec.orbit.push_back(x.to_double());
    if (opt.keep_orbit) rec.orbit_exact.push_back(x);
  }
  return rec;
}

}  // namespace

OrbitRecord beta_orbit(const BetaBase& b, const RealPoint& x, std::size_t n, const OrbitOptions& opt) {
  if (x.exact && exact_compatible(b, *x.exact)) return exact_orbit(b, *x.exact, n, opt);

  Precision bits = static_cast<Precision>(std::ceil(static_cast<double>(n) * b.log2())) + 64;
  int restarts = 0;
  while (true) {
    if (bits > opt.max_precision) {
      throw Error(ErrorKind::OrbitUndecidable, "orbit undecidable at " + std::to_string(opt.max_precision) + " bits");
    }
    BigReal xe = x.enclosure(bits).with_precision(bits);
    if (xe.upper_q() < 0 || xe.lower_q() >= 1) throw Error(ErrorKind::Precondition, "orbit start must lie in [0,1)");
    if (xe.lower_q() < 0 || xe.upper_q() >= 1) {
      bits *= 2;
      ++restarts;
      continue;
    }
    const BigReal beta = b.value().enclosure(bits + 16).with_precision(bits);
    OrbitRecord rec;
    rec.digits.reserve(n);
    rec.orbit.reserve(n + 1);
    rec.orbit.push_back(xe.mid());
    if (opt.keep_orbit) rec.orbit_enclosures.push_back(xe);
    bool ok = true;
    std::size_t failed_at = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const BigReal y = beta * xe;
      const auto d = y.floor();
      if (!d) {
        ok = false;
        failed_at = k;
        break;
      }
      xe = y - BigReal::from_mpz(*d, bits);
      rec.digits.push_back(static_cast<int>(d->get_si()));
      rec.orbit.push_back(xe.mid());
      if (opt.keep_orbit) rec.orbit_enclosures.push_back(xe);
    }
    if (ok) {
      rec.precision_used = bits;
      rec.restarts = restarts;
      return rec;
    }
    if (bits * 2 > opt.max_precision) {
      throw Error(ErrorKind::OrbitUndecidable, "orbit undecidable at step " + std::to_string(failed_at) + " with " +
                                                   std::to_string(bits) + " bits");
    }
    bits *= 2;
    ++restarts;
  }
}

// ---------------------------------------------------------------------------
// Parry density

double ParryDensity::density(double x) const {
  if (x < 0 || x >= 1) return 0;
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return values[std::min(k, values.size() - 1)];
}

double ParryDensity::cdf(double x) const {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double acc = 0;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k];
    const double c = breakpoints[k + 1];
    if (x <= a) break;
    acc += values[k] * (std::min(x, c) - a);
  }
  return std::min(1.0, acc);
}

ParryDensity parry_density(const BetaBase& b, int truncation) {
  if (truncation < 1) throw Error(ErrorKind::Precondition, "truncation must be positive");
  const FieldElement& beta = b.value();
  const FieldElement one(1);
  std::vector<FieldElement> orbit{one};
  std::map<std::string, std::size_t> seen{{one.key(), 0}};
  ParryDensity out;
  out.orbit_kind = "truncated";
  std::size_t cycle_start = 0;
  std::size_t period = 0;
  for (int n = 1; n < truncation; ++n) {
    const FieldElement y = beta * orbit.back();
    const FieldElement t = y - FieldElement(mpq_class(y.floor()));
    if (t.is_zero()) {
      out.orbit_kind = "finite";
      break;
    }
    const auto [it, inserted] = seen.emplace(t.key(), orbit.size());
    if (!inserted) {
      out.orbit_kind = "periodic";
      cycle_start = it->second;
      period = orbit.size() - it->second;
      break;
    }
    orbit.push_back(t);
  }

  // weight of T^n(1)
  const FieldElement inv = beta.inverse();
  std::vector<FieldElement> w(orbit.size());
  FieldElement pw(1);
  for (std::size_t n = 0; n < orbit.size(); ++n) {
    w[n] = pw;
    pw = pw * inv;
  }
  if (out.orbit_kind == "periodic") {
    const FieldElement g = (one - inv.pow(static_cast<long>(period))).inverse();
    for (std::size_t n = cycle_start; n < orbit.size(); ++n) w[n] = w[n] * g;
  }

  std::vector<FieldElement> cuts{FieldElement(0), one};
  for (const auto& v : orbit) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end(), [](const FieldElement& a, const FieldElement& c) { return a < c; });
  std::vector<FieldElement> uniq;
  for (auto& c : cuts)
    if (uniq.empty() || !(uniq.back() == c)) uniq.push_back(c);

  FieldElement z(0);
  for (std::size_t n = 0; n < orbit.size(); ++n) z += w[n] * orbit[n];
  const FieldElement zinv = z.inverse();
  for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
    FieldElement h(0);
    for (std::size_t n = 0; n < orbit.size(); ++n)
      if (orbit[n] >= uniq[k + 1]) h += w[n];
    out.values_exact.push_back(h * zinv);
  }
  out.breakpoints_exact = uniq;
  for (const auto& c : uniq) out.breakpoints.push_back(c.to_double());
  for (const auto& v : out.values_exact) out.values.push_back(v.to_double());
  out.normalization = z.to_double();
  out.exact = out.orbit_kind != "truncated";
  if (!out.exact) {
    const double bd = b.to_double();
    const double tail = std::pow(bd, -static_cast<double>(orbit.size())) / (1 - 1 / bd);
    // missing mass in each value and in the normalisation
    out.tail_bound = tail / out.normalization * (1 + *std::max_element(out.values.begin(), out.values.end()));
    out.values_exact.clear();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normality

NormalityStat normality_statistic(const OrbitRecord& orbit, const BetaBase& b, const ParryDensity& parry,
                                  std::size_t n) {
  if (orbit.digits.size() < n) throw Error(ErrorKind::Precondition, "orbit shorter than n");
  NormalityStat s;
  s.exact = orbit.exact;
  s.precision_used = orbit.precision_used;
  s.digit_freqs.assign(static_cast<std::size_t>(b.alphabet_size()), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = static_cast<std::size_t>(orbit.digits[k]);
    if (d >= s.digit_freqs.size()) s.digit_freqs.resize(d + 1, 0.0);
    s.digit_freqs[d] += 1;
  }
  for (auto& f : s.digit_freqs) f /= static_cast<double>(n);
  std::vector<double> pts(orbit.orbit.begin(), orbit.orbit.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(pts.begin(), pts.end());
  double disc = 0;
  for (int j = 1; j <= kDiscrepancyGrid; ++j) {
    const double g = static_cast<double>(j) / kDiscrepancyGrid;
    const double emp = static_cast<double>(std::upper_bound(pts.begin(), pts.end(), g) - pts.begin()) / static_cast<double>(n);
    disc = std::max(disc, std::abs(emp - parry.cdf(g)));
  }
  s.discrepancy = disc;
  return s;
}

NormalityStat normality_statistic(const BetaBase& b, const ParryDensity& parry, const RealPoint& x, std::size_t n) {
  return normality_statistic(beta_orbit(b, reduce_mod1(x), n), b, parry, n);
}

int exact_depth_for_digits(double beta, std::size_t n, double max_ratio, double diam) {
  const double need = static_cast<double>(n) * std::log(beta) + 64 * std::log(2.0) + std::log(std::max(diam, 1e-300));
  return std::max(1, static_cast<int>(std::ceil(need / std::log(1 / max_ratio))));
}

// ---------------------------------------------------------------------------
// Pushforwards

Pushforward Pushforward::parse(const std::string& spec) {
  Pushforward g;
  g.spec_ = spec;
  if (spec == "identity" || spec == "id") {
    g.poly_ = RatPolynomial::monomial(1);
  } else if (spec == "exp" || spec == "atan" || spec == "sinh") {
    g.builtin_ = spec;
  } else {
    g.poly_ = parse_polynomial(spec);
    if (g.poly_->degree() < 1) throw Error(ErrorKind::NotDiffeomorphism, "constant map " + spec);
  }
  return g;
}

void Pushforward::check_on(const Interval& hull) const {
  if (!poly_) return;  // exp, atan, sinh have positive derivative everywhere
  const RatPolynomial dp = poly_->derivative();
  if (dp.degree() == 0) return;
  const mpq_class lo = hull.lo.enclosure(64).lower_q();
  const mpq_class hi = hull.hi.enclosure(64).upper_q();
  const IntPolynomial ip = primitive_part(dp);
  if (sign_at(ip, lo) == 0 || SturmSequence(dp).count(lo, hi) > 0) {
    throw Error(ErrorKind::NotDiffeomorphism, "derivative of " + spec_ + " vanishes on the hull");
  }
}

RealPoint Pushforward::apply(const RealPoint& x) const {
  if (poly_) {
    if (x.exact) {
      FieldElement acc(0);
      const auto& c = poly_->coefficients();
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * *x.exact + FieldElement(*it);
      return RealPoint::of(acc);
    }
    const RatPolynomial p = *poly_;
    return RealPoint::of([p, x](Precision bits) {
      const Precision guard = bits + 32 + 8 * p.degree();
      return eval_enclosure(p, x.enclosure(guard).with_precision(guard));
    });
  }
  const std::string f = builtin_;
  return RealPoint::of([f, x](Precision bits) {
    const Precision guard = bits + 64;
    const BigReal v = x.enclosure(guard).with_precision(guard);
    if (f == "exp") return v.exp();
    if (f == "atan") return v.atan();
    return v.sinh();
  });
}

RealPoint reduce_mod1(const RealPoint& x) {
  if (x.exact) return RealPoint::of(*x.exact - FieldElement(mpq_class(x.exact->floor())));
  std::optional<mpz_class> k;
  for (Precision bits = 64; bits <= (Precision{1} << 16) && !k; bits *= 2) k = x.enclosure(bits).floor();
  if (!k) throw Error(ErrorKind::OrbitUndecidable, "cannot decide the integer part of the point");
  const mpz_class shift = *k;
  return RealPoint::of([x, shift](Precision bits) { return x.enclosure(bits) - BigReal::from_mpz(shift, bits); });
}

}  // namespace ssn
