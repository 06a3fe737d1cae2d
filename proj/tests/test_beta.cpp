#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "ssn/beta.hpp"
#include "ssn/error.hpp"
#include "ssn/rng.hpp"

using namespace ssn;

namespace {
RealPoint exact(const char* s) { return RealPoint::of(parse_exact(s)); }

// Binary Champernowne prefix as a dyadic interval of width 2^-len.
RealPoint champernowne(std::size_t len) {
  std::string bits;
  for (unsigned k = 1; bits.size() < len; ++k) {
    std::string w;
    for (unsigned v = k; v; v >>= 1) w.insert(w.begin(), static_cast<char>('0' + (v & 1)));
    bits += w;
  }
  bits.resize(len);
  mpz_class num(bits, 2);
  mpq_class lo(num, mpz_class(1) << len);
  mpq_class hi(num + 1, mpz_class(1) << len);
  lo.canonicalize();
  hi.canonicalize();
  return RealPoint::of([lo, hi](Precision p) { return BigReal::from_bounds(lo, hi, p); });
}
}  // namespace

TEST_CASE("beta bases") {
  CHECK(BetaBase::parse("2").alphabet_size() == 2);
  CHECK(BetaBase::parse("5/2").alphabet_size() == 3);
  CHECK_FALSE(BetaBase::parse("5/2").pisot());
  const BetaBase g = BetaBase::parse("golden");
  CHECK(g.alphabet_size() == 2);
  CHECK(g.pisot());
  const BetaBase t = BetaBase::parse("x^3 - x^2 - x - 1");
  CHECK(t.to_double() == doctest::Approx(1.839286755214161));
  CHECK(t.value().field().name() == "tribonacci");
  CHECK(BetaBase::parse("x^2 - x - 1").value() == parse_exact("phi"));
  CHECK_THROWS_AS(BetaBase::parse("1"), Error);
  CHECK_THROWS_AS(BetaBase::parse("1/2"), Error);
}

TEST_CASE("beta orbits, exact") {
  const BetaBase two = BetaBase::parse("2");
  auto r = beta_orbit(two, exact("3/8"), 4);
  CHECK(r.digits == std::vector<int>{0, 1, 1, 0});
  CHECK(r.exact);
  r = beta_orbit(two, exact("1/3"), 6);
  CHECK(r.digits == std::vector<int>{0, 1, 0, 1, 0, 1});
  CHECK(r.orbit[2] == doctest::Approx(1.0 / 3));

  const BetaBase g = BetaBase::parse("golden");
  r = beta_orbit(g, exact("1/phi"), 3, {true});
  CHECK(r.digits == std::vector<int>{1, 0, 0});
  CHECK(r.orbit_exact[1].is_zero());
  CHECK_THROWS_AS(beta_orbit(two, exact("1"), 3), Error);
  CHECK_THROWS_AS(beta_orbit(two, exact("-1/4"), 3), Error);
}

TEST_CASE("beta orbits, interval path agrees with exact") {
  const BetaBase g = BetaBase::parse("golden");
  const FieldElement x = parse_exact("3/7 + 1/11*sqrt2");
  // sqrt2 lives outside Q(phi), so this takes the interval path
  const auto r = beta_orbit(g, RealPoint::of(x), 300, {true});
  CHECK_FALSE(r.exact);
  CHECK(r.precision_used >= 300 * g.log2());
  // greedy digits: no two consecutive ones
  for (std::size_t k = 0; k + 1 < r.digits.size(); ++k) CHECK_FALSE((r.digits[k] == 1 && r.digits[k + 1] == 1));
  // reconstruction of x from digits and the final orbit point
  BigReal acc = r.orbit_enclosures.back();
  const BigReal beta = g.value().enclosure(r.precision_used);
  for (std::size_t k = r.digits.size(); k-- > 0;) acc = (acc + BigReal::from_int(r.digits[k], r.precision_used)) / beta;
  CHECK(acc.overlaps(x.enclosure(r.precision_used)));
  CHECK(std::abs(acc.mid() - x.to_double()) < 1e-15);
}

TEST_CASE("undecidable orbit is reported") {
  const BetaBase two = BetaBase::parse("2");
  // an approximator for 1/2 that never pins the value down
  const RealPoint half = RealPoint::of([](Precision p) {
    return BigReal::from_bounds(mpq_class(1, 2) - mpq_class(1, 1u << 20) / (mpz_class(1) << p),
                                mpq_class(1, 2) + mpq_class(1, 1u << 20) / (mpz_class(1) << p), p);
  });
  OrbitOptions o;
  o.max_precision = 4096;
  CHECK_THROWS_AS(beta_orbit(two, half, 10, o), Error);
}

TEST_CASE("Parry density for integer bases is uniform") {
  for (const char* b : {"2", "3", "10"}) {
    const auto p = parry_density(BetaBase::parse(b));
    CHECK(p.exact);
    REQUIRE(p.values.size() == 1);
    CHECK(p.values[0] == doctest::Approx(1.0));
    CHECK(p.cdf(0.3) == doctest::Approx(0.3));
  }
}

TEST_CASE("golden Parry density in closed form") {
  const auto p = parry_density(BetaBase::parse("golden"));
  CHECK(p.exact);
  CHECK(p.orbit_kind == "finite");
  REQUIRE(p.values_exact.size() == 2);
  const FieldElement s5 = parse_exact("2*phi - 1");
  CHECK(p.values_exact[0] == (FieldElement(5) + FieldElement(3) * s5) / FieldElement(10));
  CHECK(p.values_exact[1] == (FieldElement(5) + s5) / FieldElement(10));
  CHECK(p.breakpoints_exact[1] == parse_exact("1/phi"));
  CHECK(p.cdf(1.0) == doctest::Approx(1.0));
}

TEST_CASE("Parry density against the Ulam oracle") {
  for (const char* b : {"x^3 - x^2 - x - 1", "5/2", "silver", "3/2"}) {
    CAPTURE(b);
    const BetaBase beta = BetaBase::parse(b);
    const auto p = parry_density(beta);
    const int bins = 2000;
    const auto u = oracle::ulam_density(beta.to_double(), bins);
    double err = 0;
    int used = 0;
    for (int k = 0; k < bins; ++k) {
      const double a = static_cast<double>(k) / bins;
      const double c = static_cast<double>(k + 1) / bins;
      bool straddles = false;
      for (double br : p.breakpoints) straddles |= (br > a - 1e-12 && br < c + 1e-12);
      if (straddles) continue;
      err += std::abs(p.density(0.5 * (a + c)) - u[static_cast<std::size_t>(k)]) / bins;
      ++used;
    }
    CHECK(used > bins / 2);
    CHECK(err < 2e-3);
  }
}

TEST_CASE("Parry density is invariant under the transfer operator") {
  for (const char* b : {"x^3 - x^2 - x - 1", "golden", "5/2", "plastic"}) {
    CAPTURE(b);
    const BetaBase beta = BetaBase::parse(b);
    const double bd = beta.to_double();
    const auto p = parry_density(beta);
    double l1 = 0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
      const double x = (k + 0.5) / n;
      double ph = 0;
      for (int d = 0; d < beta.alphabet_size(); ++d) {
        const double y = (x + d) / bd;
        if (y < 1) ph += p.density(y) / bd;
      }
      l1 += std::abs(ph - p.density(x)) / n;
    }
    CHECK(l1 < 1e-3);
  }
}

TEST_CASE("periodic orbit of 1") {
  // beta^2 = 2 beta + 1 gives T(1) = beta - 2, a fixed point after one more step
  const auto p = parry_density(BetaBase::parse("silver"));
  CHECK(p.exact);
  double total = 0;
  for (std::size_t k = 0; k + 1 < p.breakpoints.size(); ++k)
    total += p.values[k] * (p.breakpoints[k + 1] - p.breakpoints[k]);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normality statistics") {
  const BetaBase two = BetaBase::parse("2");
  const auto parry = parry_density(two);
  auto s = normality_statistic(two, parry, exact("1/3"), 1000);
  CHECK(s.digit_freqs[0] == doctest::Approx(0.5));
  CHECK(s.discrepancy == doctest::Approx(1.0 / 3).epsilon(3e-3));

  s = normality_statistic(two, parry, champernowne(20000), 16000);
  CHECK(std::abs(s.digit_freqs[1] - 0.5) < 0.05);
  CHECK(s.discrepancy < 0.1);

  const BetaBase g = BetaBase::parse("golden");
  const auto pg = parry_density(g);
  s = normality_statistic(g, pg, exact("1/phi"), 200);
  CHECK(s.discrepancy > pg.cdf(0.618) - 0.01);
}

TEST_CASE("Parry-distributed inputs have small discrepancy") {
  // x drawn from the Parry measure by inverting its CDF, then pushed through T
  const BetaBase g = BetaBase::parse("golden");
  const auto p = parry_density(g);
  Stream rng(17);
  double total = 0;
  const int reps = 20;
  for (int i = 0; i < reps; ++i) {
    mpq_class x(static_cast<long>(rng.below(1u << 30)), 1u << 30);
    x.canonicalize();
    const auto s = normality_statistic(g, p, RealPoint::of(FieldElement(x)), 2000);
    total += s.discrepancy;
  }
  CHECK(total / reps < 0.05);
}

TEST_CASE("exact depth") {
  const int d = exact_depth_for_digits(2.0, 100, 1.0 / 3, 1.0);
  CHECK(std::pow(3.0, -d) < std::pow(2.0, -164));
  CHECK(std::pow(3.0, -(d - 1)) >= std::pow(2.0, -164) * 0.999);
}

TEST_CASE("pushforwards") {
  const Interval hull{FieldElement(0), FieldElement(1)};
  Pushforward::parse("2x + 5").check_on(hull);
  Pushforward::parse("x + x^2/10").check_on(hull);
  CHECK_THROWS_AS(Pushforward::parse("x^2 - x").check_on(hull), Error);
  CHECK_THROWS_AS(Pushforward::parse("x^2").check_on(hull), Error);
  CHECK_THROWS_AS(Pushforward::parse("3").check_on(hull), Error);

  const auto y = Pushforward::parse("2x + 5").apply(exact("1/3"));
  REQUIRE(y.exact);
  CHECK(*y.exact == parse_exact("17/3"));
  CHECK(*reduce_mod1(y).exact == parse_exact("2/3"));

  const auto e = Pushforward::parse("exp").apply(exact("1/2"));
  CHECK(e.to_double() == doctest::Approx(std::exp(0.5)));
  CHECK(e.enclosure(200).width() < 1e-55);
  const auto m = reduce_mod1(e);
  CHECK(m.to_double() == doctest::Approx(std::exp(0.5) - 1));
  const auto a = Pushforward::parse("atan").apply(exact("1"));
  CHECK(a.to_double() == doctest::Approx(std::atan(1.0)));
}
