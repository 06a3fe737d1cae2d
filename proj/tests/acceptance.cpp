// Acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ssn/error.hpp"
#include "ssn/rng.hpp"
#include "ssn/scenery.hpp"
#include "ssn/stats.hpp"

using namespace ssn;

namespace {

// tolerances
constexpr double kParryTol = 1e-9;
constexpr double kKsTol = 0.01;
constexpr std::size_t kKsSamples = 100000;
constexpr double kShiftTol = 0.02;
constexpr std::size_t kShiftSamples = 100000;
constexpr int kShiftBins = 256;
constexpr int kShiftStarts = 50;
constexpr std::size_t kCantorPoints = 100;
constexpr std::size_t kBinaryDigits = 2000;
constexpr double kFreqLo = 0.48, kFreqHi = 0.52;
constexpr double kTernaryOnesMax = 0.01;
constexpr std::size_t kOrbitLength = 2000;
constexpr double kDiscrepancyMax = 0.05;
constexpr double kNoiseSE = 2.0;
constexpr double kSceneryRoofs = 200;
constexpr double kSceneryTol = 0.05;
constexpr double kContrastMin = 0.2;
constexpr std::size_t kSpectrumRows = 6;
constexpr std::size_t kOrbitInputs = 1000;
constexpr std::size_t kOrbitDigits = 1000;
constexpr int kReconstructionBits = 64;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s  %d  %-34s %s  [%.2f s, limit %.0f s%s]\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), s,
              limit_s, in_time ? "" : ", over time");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SimilarityIFS make(std::vector<std::pair<const char*, const char*>> maps, std::vector<mpq_class> w = {}) {
  std::vector<SimilarityMap> m;
  for (auto [s, t] : maps) m.emplace_back(parse_exact(s), parse_exact(t));
  if (w.empty()) w.assign(m.size(), mpq_class(1, static_cast<long>(m.size())));
  return SimilarityIFS(std::move(m), std::move(w));
}
SimilarityIFS cantor() { return make({{"1/3", "0"}, {"1/3", "2/3"}}); }
SimilarityIFS two_three() { return make({{"1/2", "0"}, {"1/3", "2/3"}}, {mpq_class(1, 2), mpq_class(1, 2)}); }
SimilarityIFS flipped() { return make({{"1/3", "0"}, {"-1/3", "1"}}); }
SimilarityIFS reversed() { return make({{"-1/3", "1/3"}, {"-1/3", "1"}}); }

Outcome parry_golden() {
  const ParryDensity p = parry_density(BetaBase::parse("golden"));
  const double hi = (5 + 3 * std::sqrt(5.0)) / 10, lo = (5 + std::sqrt(5.0)) / 10;
  if (p.values.size() != 2) return {false, "expected two density levels"};
  const double err = std::max(std::abs(p.values[0] - hi), std::abs(p.values[1] - lo));
  const double cut = std::abs(p.breakpoints[1] - (std::sqrt(5.0) - 1) / 2);
  return {err < kParryTol && cut < kParryTol && p.exact,
          fmt("max|h - closed form| = %.2e, |break - 1/phi| = %.2e (tol %.0e)", err, cut, kParryTol)};
}

Outcome disintegration_ks() {
  double worst = 0;
  for (const auto& ifs : {cantor(), two_three()}) {
    const Model m = build_model(ifs);
    const auto a = sample_measure(ifs, kKsSamples, 40, 101).points;
    const auto b = sample_disintegration(m, kKsSamples, m.default_depth(), 102);
    worst = std::max(worst, ks_distance(a, b));
  }
  return {worst < kKsTol, fmt("max KS = %.4f over 2 systems at n = 1e5 (tol %.2f)", worst, kKsTol)};
}

Outcome shift_identity() {
  double worst = 0, worst_reflect = 0;
  int reflected = 0;
  for (const auto& ifs : {cantor(), flipped(), two_three()}) {
    const Model m = rescale_model_for_gap(build_model(ifs)).model;
    const bool orient = !m.orientation_preserving();
    WindowOptions opt;
    opt.samples = kShiftSamples;
    opt.half_bins = kShiftBins;
    for (int s = 0; s < kShiftStarts; ++s) {
      const auto k = static_cast<std::uint64_t>(s);
      const SceneState st = SceneState::random(m, hash_key(301, k), orient);
      const auto zoomed = scenery_window(m, st, st.roof(m), opt, hash_key(302, k));
      const auto fresh = scenery_window(m, st.shifted(m), 0.0, opt, hash_key(303, k));
      worst = std::max(worst, l1_distance(zoomed, fresh));
      if (m.index(static_cast<std::size_t>(st.omega()[0])).rd < 0) {
        const auto plain = scenery_window(m, st.shifted(m).with_a(st.a()), 0.0, opt, hash_key(304, k));
        worst_reflect = std::max(worst_reflect, l1_distance(zoomed, reflect(plain)));
        ++reflected;
      }
    }
  }
  const bool ok = worst < kShiftTol && worst_reflect < kShiftTol && reflected > 0;
  return {ok, fmt("max L1 = %.4f, reflection max L1 = %.4f (%.0f flips) over 3x50 starts (tol %.2f)", worst,
                  worst_reflect, reflected, kShiftTol)};
}

Outcome chain_checks() {
  bool ok = true;
  int worst_diam = 0;
  for (const auto& ifs : {cantor(), two_three(), flipped(), reversed()}) {
    const auto ch = build_extended_chain(build_model(ifs));
    ok = ok && ch.stationary_exact();
    if (ch.with_orientation) ok = ok && ch.a_marginal(0) == mpq_class(1, 2) && ch.a_marginal(1) == mpq_class(1, 2);
    worst_diam = std::max(worst_diam, ch.diameter);
  }
  ok = ok && worst_diam <= 2;
  return {ok, fmt("pi P = pi exact, a-marginal (1/2,1/2) exact, max diameter %.0f on 4 models", worst_diam)};
}

std::vector<FieldElement> cantor_points(std::size_t n, double beta, std::uint64_t seed) {
  const Model m = build_model(cantor());
  const int depth = exact_depth_for_digits(beta, kBinaryDigits, m.max_abs_ratio(), m.diam());
  return sample_disintegration_exact(m, n, depth, seed);
}

Outcome cantor_digits() {
  double mean1 = 0, mean_ternary1 = 0;
  for (const auto& [base, out] : {std::pair{2, &mean1}, std::pair{3, &mean_ternary1}}) {
    const BetaBase b = BetaBase::parse(std::to_string(base));
    const ParryDensity parry = parry_density(b);
    for (const auto& x : cantor_points(kCantorPoints, base, 500 + static_cast<std::uint64_t>(base))) {
      const auto orbit = beta_orbit(b, RealPoint::of(x), kBinaryDigits);
      *out += normality_statistic(orbit, b, parry, kBinaryDigits).digit_freqs[1] / kCantorPoints;
    }
  }
  const bool ok = mean1 >= kFreqLo && mean1 <= kFreqHi && mean_ternary1 < kTernaryOnesMax;
  return {ok, fmt("binary mean freq(1) = %.4f in [%.2f, %.2f]; ternary freq(1) = %.4f", mean1, kFreqLo, kFreqHi,
                  mean_ternary1)};
}

Outcome golden_discrepancy() {
  const BetaBase b = BetaBase::parse("golden");
  const ParryDensity parry = parry_density(b);
  const std::vector<std::size_t> lengths{250, 500, 1000, kOrbitLength};
  std::vector<std::vector<double>> d(lengths.size());
  for (const auto& x : cantor_points(kCantorPoints, b.to_double(), 600)) {
    const auto orbit = beta_orbit(b, RealPoint::of(x), kOrbitLength);
    for (std::size_t l = 0; l < lengths.size(); ++l) d[l].push_back(normality_statistic(orbit, b, parry, lengths[l]).discrepancy);
  }
  bool monotone = true;
  std::string trail;
  for (std::size_t l = 0; l < lengths.size(); ++l) {
    trail += fmt(l ? " > %.4f" : "%.4f", mean(d[l]));
    if (l > 0) {
      const double se = std::hypot(standard_error(d[l]), standard_error(d[l - 1]));
      monotone = monotone && mean(d[l]) <= mean(d[l - 1]) + kNoiseSE * se;
    }
  }
  const double last = mean(d.back());
  return {last < kDiscrepancyMax && monotone,
          "mean discrepancy " + trail + fmt(" (tol %.2f, monotone within %.0f SE)", kDiscrepancyMax, kNoiseSE)};
}

Outcome scenery_consistency() {
  const Model m = rescale_model_for_gap(build_model(cantor())).model;
  const auto ch = build_extended_chain(m);
  WindowOptions opt;
  opt.samples = 512;
  const double T = kSceneryRoofs * ch.expected_roof;
  const auto orbit = scenery_orbit(m, SceneState::random(m, 701, ch.with_orientation), T, ch.expected_roof / 4, opt, 702);
  const auto q = sample_Q(m, ch, 8000, opt, 703);
  const auto rep = compare_scenery_to_Q(orbit.windows, q);
  const auto trivial = compare_scenery_to_Q(orbit.windows, {point_mass_window(opt.half_bins)});
  return {rep.max_distance < kSceneryTol && trivial.max_distance > kContrastMin,
          fmt("max panel distance %.4f (tol %.2f), delta_0 contrast %.3f (min %.1f)", rep.max_distance, kSceneryTol,
              trivial.max_distance, kContrastMin) +
              " at " + panel_names()[rep.argmax]};
}

Outcome spectrum_table() {
  struct Row {
    SimilarityIFS ifs;
    const char* name;
    const char* beta;
    bool implied;
  };
  // expected verdicts worked out by hand from the ratios and the minimal polynomials
  const std::vector<Row> rows{
      {cantor(), "middle-thirds", "2", true},
      {cantor(), "middle-thirds", "3", false},
      {make({{"1/2", "0"}, {"1/2", "1/2"}}), "halves", "golden", true},
      {cantor(), "middle-thirds", "golden", true},
      {make({{"1/4", "0"}, {"1/4", "3/4"}}), "quarters", "2", false},
      {two_three(), "{x/2, x/3+2/3}", "2", true},
      {make({{"1/phi^2", "0"}, {"1/phi^2", "1 - 1/phi^2"}}), "golden cantor", "golden", false},
      {make({{"1/phi^2", "0"}, {"1/phi^2", "1 - 1/phi^2"}}), "golden cantor", "silver", true},
  };
  std::size_t agree = 0;
  for (const auto& r : rows) {
    const auto v = spectrum_obstruction(build_model(r.ifs), BetaBase::parse(r.beta));
    const bool match = v.normality_implied == r.implied;
    agree += match ? 1 : 0;
    std::printf("      %-16s beta=%-7s %s%s\n", r.name, r.beta, v.to_string().c_str(), match ? "" : "  <- unexpected");
  }
  return {agree == rows.size() && rows.size() >= kSpectrumRows,
          fmt("%.0f/%.0f verdicts as expected", static_cast<double>(agree), static_cast<double>(rows.size()))};
}

FieldElement random_element(const FieldPtr& f, int degree, Stream& rng) {
  std::vector<mpq_class> c;
  for (int k = 0; k < degree; ++k) {
    mpz_class num(static_cast<long>(rng.below(2000001)) - 1000000);
    c.emplace_back(num, mpz_class(static_cast<long>(rng.below(999999)) + 1));
    c.back().canonicalize();
  }
  FieldElement x(f, c);
  return x - FieldElement(mpq_class(x.floor()));
}

Outcome reconstruction() {
  struct Family {
    const char* beta;
    const char* field_of;  // generator of the input field; empty for rationals
    int degree;
  };
  const std::vector<Family> families{
      {"2", "", 1},       {"5/2", "", 1},        {"golden", "golden", 2},
      {"x^3 - x^2 - x - 1", "tribonacci", 3}, {"golden", "sqrt2", 2}, {"silver", "sqrt3", 2}};
  Stream rng(900);
  std::size_t done = 0, certified = 0, undecidable = 0, silent = 0, interval = 0;
  double worst = 0;
  for (std::size_t k = 0; k < kOrbitInputs; ++k) {
    const Family& fam = families[k % families.size()];
    const BetaBase b = BetaBase::parse(fam.beta);
    const FieldElement x = fam.degree == 1
                               ? random_element(FieldElement(0).field_ptr(), 1, rng)
                               : random_element(parse_exact(fam.field_of).field_ptr(), fam.degree, rng);
    OrbitRecord r;
    try {
      r = beta_orbit(b, RealPoint::of(x), kOrbitDigits, {true});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OrbitUndecidable) {
        ++undecidable;
        continue;
      }
      throw;
    }
    ++done;
    interval += r.exact ? 0 : 1;
    const Precision p = static_cast<Precision>(std::ceil(kOrbitDigits * b.log2())) + 2 * kReconstructionBits;
    const BigReal beta = b.value().enclosure(p);
    BigReal acc = r.exact ? r.orbit_exact.back().enclosure(p) : r.orbit_enclosures.back().with_precision(p);
    if (acc.lower_q() < 0 || acc.upper_q() >= 1) ++silent;
    for (std::size_t i = r.digits.size(); i-- > 0;) {
      if (r.digits[i] < 0 || r.digits[i] >= b.alphabet_size()) ++silent;
      acc = (acc + BigReal::from_int(r.digits[i], p)) / beta;
    }
    const BigReal xe = x.enclosure(p);
    const mpq_class err = std::max(abs(mpq_class(acc.upper_q() - xe.lower_q())), abs(mpq_class(xe.upper_q() - acc.lower_q())));
    const double rel = x.is_zero() ? err.get_d() : mpq_class(err / abs(xe.lower_q())).get_d();
    worst = std::max(worst, rel);
    if (rel < std::ldexp(1.0, -kReconstructionBits)) ++certified;
    else ++silent;
  }
  const bool ok = silent == 0 && certified == done && done + undecidable == kOrbitInputs;
  return {ok, fmt("%.0f/%.0f reconstructed (worst rel %.1e < 2^-64, %.0f interval path)", static_cast<double>(certified),
                  static_cast<double>(kOrbitInputs), worst, static_cast<double>(interval)) +
                  fmt(", %.0f reported undecidable, %.0f silent", static_cast<double>(undecidable),
                      static_cast<double>(silent))};
}

}  // namespace

int main() {
  criterion(1, "golden Parry density", 1, parry_golden);
  criterion(2, "disintegration reproduces mu", 30, disintegration_ks);
  criterion(3, "shift identity of windows", 120, shift_identity);
  criterion(4, "extended chain", 1, chain_checks);
  criterion(5, "Cantor digit frequencies", 120, cantor_digits);
  criterion(6, "golden discrepancy of Cantor pts", 300, golden_discrepancy);
  criterion(7, "scenery self-consistency", 300, scenery_consistency);
  criterion(8, "spectrum verdict table", 1, spectrum_table);
  criterion(9, "beta-orbit reconstruction", 60, reconstruction);
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
