#include "ssn/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ssn/error.hpp"
#include "ssn/rng.hpp"

namespace ssn {

SimilarityMap::SimilarityMap(FieldElement ratio, FieldElement translation)
    : s(std::move(ratio)), t(std::move(translation)) {
  if (s.is_zero() || s.abs() >= FieldElement(1)) {
    throw Error(ErrorKind::Precondition, "similarity ratio must satisfy 0 < |s| < 1, got " + s.to_string());
  }
  sd = s.to_double();
  td = t.to_double();
}

Interval image(const SimilarityMap& f, const Interval& j) {
  FieldElement a = f(j.lo);
  FieldElement b = f(j.hi);
  if (f.s.sign() < 0) std::swap(a, b);
  return {a, b};
}

std::string word_string(const Word& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w[k] + 1);
  }
  return s + ")";
}

SimilarityIFS::SimilarityIFS(std::vector<SimilarityMap> maps, std::vector<mpq_class> weights)
    : maps_(std::move(maps)), weights_(std::move(weights)) {
  if (maps_.empty()) throw Error(ErrorKind::Precondition, "an IFS needs at least one map");
  if (weights_.size() != maps_.size()) throw Error(ErrorKind::Precondition, "one weight per map required");
  mpq_class total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw Error(ErrorKind::Precondition, "weights must be strictly positive");
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::Precondition, "weights must sum to 1, got " + total.get_str());
  for (std::size_t k = 0; k < maps_.size(); ++k) words_.push_back({static_cast<int>(k)});
}

void SimilarityIFS::set_words(std::vector<Word> words) {
  if (words.size() != maps_.size()) throw Error(ErrorKind::Precondition, "one word per map required");
  words_ = std::move(words);
}

std::vector<double> SimilarityIFS::weights_double() const {
  std::vector<double> w;
  for (const auto& v : weights_) w.push_back(v.get_d());
  return w;
}

bool SimilarityIFS::has_infinite_attractor() const {
  const FieldElement x0 = maps_[0].fixed_point();
  for (std::size_t k = 1; k < maps_.size(); ++k)
    if (maps_[k].fixed_point() != x0) return true;
  return false;
}

double SimilarityIFS::max_abs_ratio() const {
  double m = 0;
  for (const auto& f : maps_) m = std::max(m, std::abs(f.sd));
  return m;
}

namespace {

// Candidate hull when map i realises the minimum and map j the maximum.
Interval solve_hull(const SimilarityMap& fi, const SimilarityMap& fj) {
  const FieldElement one(1);
  const bool pi = fi.s.sign() > 0;
  const bool pj = fj.s.sign() > 0;
  if (pi && pj) return {fi.t / (one - fi.s), fj.t / (one - fj.s)};
  if (!pi && !pj) {
    const FieldElement a = (fi.s * fj.t + fi.t) / (one - fi.s * fj.s);
    return {a, fj.s * a + fj.t};
  }
  if (pi) {
    const FieldElement a = fi.t / (one - fi.s);
    return {a, fj.s * a + fj.t};
  }
  const FieldElement b = fj.t / (one - fj.s);
  return {fi.s * b + fi.t, b};
}

bool is_hull(const SimilarityIFS& ifs, const Interval& j) {
  if (j.hi < j.lo) return false;
  FieldElement lo = image(ifs.maps()[0], j).lo;
  FieldElement hi = image(ifs.maps()[0], j).hi;
  for (std::size_t k = 1; k < ifs.size(); ++k) {
    const Interval im = image(ifs.maps()[k], j);
    if (im.lo < lo) lo = im.lo;
    if (im.hi > hi) hi = im.hi;
  }
  return lo == j.lo && hi == j.hi;
}

}  // namespace

Interval attractor_hull(const SimilarityIFS& ifs) {
  const auto& f = ifs.maps();
  // Floating fixed-point iteration picks the likely extremal maps.
  double lo = 0;
  double hi = 0;
  for (int it = 0; it < 2000; ++it) {
    double nlo = INFINITY;
    double nhi = -INFINITY;
    for (const auto& m : f) {
      const double a = m.apply(lo);
      const double b = m.apply(hi);
      nlo = std::min({nlo, a, b});
      nhi = std::max({nhi, a, b});
    }
    lo = nlo;
    hi = nhi;
  }
  std::vector<std::size_t> lo_cand;
  std::vector<std::size_t> hi_cand;
  const double tol = 1e-9 * (1 + std::abs(hi - lo));
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double a = f[k].apply(lo);
    const double b = f[k].apply(hi);
    if (std::min(a, b) <= lo + tol) lo_cand.push_back(k);
    if (std::max(a, b) >= hi - tol) hi_cand.push_back(k);
  }
  for (std::size_t i : lo_cand)
    for (std::size_t j : hi_cand) {
      Interval cand = solve_hull(f[i], f[j]);
      if (is_hull(ifs, cand)) return cand;
    }
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      Interval cand = solve_hull(f[i], f[j]);
      if (is_hull(ifs, cand)) return cand;
    }
  throw Error(ErrorKind::Precondition, "attractor hull not found");
}

SimilarityIFS iterate_ifs(const SimilarityIFS& ifs, int m, std::size_t cap) {
  if (m < 1) throw Error(ErrorKind::Precondition, "iteration depth must be >= 1");
  const std::size_t n = ifs.size();
  double total = std::pow(static_cast<double>(n), m);
  if (total > static_cast<double>(cap)) {
    throw Error(ErrorKind::SizeCap, "Phi^" + std::to_string(m) + " has " + std::to_string(static_cast<long double>(total)) +
                                        " maps; cap is " + std::to_string(cap));
  }
  std::vector<SimilarityMap> maps = ifs.maps();
  std::vector<mpq_class> weights = ifs.weights();
  std::vector<Word> words = ifs.words();
  for (int level = 1; level < m; ++level) {
    std::vector<SimilarityMap> nm;
    std::vector<mpq_class> nw;
    std::vector<Word> nwords;
    // Prefix order keeps the list lexicographic: outer map first.
    for (std::size_t a = 0; a < n; ++a) {
      const SimilarityMap& f = ifs.maps()[a];
      for (std::size_t k = 0; k < maps.size(); ++k) {
        nm.emplace_back(f.s * maps[k].s, f.s * maps[k].t + f.t);
        nw.push_back(ifs.weights()[a] * weights[k]);
        Word w = ifs.words()[a];
        w.insert(w.end(), words[k].begin(), words[k].end());
        nwords.push_back(std::move(w));
      }
    }
    maps = std::move(nm);
    weights = std::move(nw);
    words = std::move(nwords);
  }
  SimilarityIFS out(std::move(maps), std::move(weights));
  out.set_words(std::move(words));
  return out;
}

SeparatedPair find_separated_pair(const SimilarityIFS& ifs, int max_m, std::size_t cap) {
  if (!ifs.has_infinite_attractor()) {
    throw Error(ErrorKind::DegenerateInput, "attractor is finite: all maps share one fixed point");
  }
  const Interval hull = attractor_hull(ifs);
  int reached = 0;
  for (int m = 1; m <= max_m; ++m) {
    if (std::pow(static_cast<double>(ifs.size()), m) > static_cast<double>(cap)) break;
    reached = m;
    const SimilarityIFS it = iterate_ifs(ifs, m, cap);
    const auto& maps = it.maps();
    std::vector<Interval> hulls;
    hulls.reserve(maps.size());
    for (const auto& f : maps) hulls.push_back(image(f, hull));
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < maps.size(); ++k) groups[maps[k].s.key()].push_back(k);
    for (std::size_t a = 0; a < maps.size(); ++a) {
      const auto& g = groups[maps[a].s.key()];
      for (std::size_t b : g) {
        if (b <= a) continue;
        if (hulls[a].disjoint_from(hulls[b])) {
          return {m, it.words()[a], it.words()[b], a, b};
        }
      }
    }
  }
  throw Error(ErrorKind::SeparationExhausted, "no separated pair up to M = " + std::to_string(reached));
}

namespace {

std::vector<double> cumulative(const SimilarityIFS& ifs) {
  std::vector<double> c;
  double acc = 0;
  for (const auto& w : ifs.weights()) {
    acc += w.get_d();
    c.push_back(acc);
  }
  c.back() = 1.0;
  return c;
}

int draw(const std::vector<double>& cum, double u) {
  return static_cast<int>(std::upper_bound(cum.begin(), cum.end() - 1, u) - cum.begin());
}

}  // namespace

Word sample_word(const SimilarityIFS& ifs, int depth, std::uint64_t seed, std::size_t index) {
  const auto cum = cumulative(ifs);
  Stream st(seed, index);
  Word w(static_cast<std::size_t>(depth));
  for (auto& c : w) c = draw(cum, st.uniform());
  return w;
}

MeasureSample sample_measure(const SimilarityIFS& ifs, std::size_t count, int depth, std::uint64_t seed) {
  if (depth < 1) throw Error(ErrorKind::Precondition, "depth must be >= 1");
  const Interval hull = attractor_hull(ifs);
  const double x0 = hull.midpoint().to_double();
  const double diam = hull.length().to_double();
  const auto cum = cumulative(ifs);
  const auto& maps = ifs.maps();
  MeasureSample out;
  out.points.resize(count);
  double scale = std::abs(x0);
  for (const auto& f : maps) scale = std::max(scale, std::abs(f.td));
  for (std::size_t i = 0; i < count; ++i) {
    Stream st(seed, i);
    double val = 0;
    double prod = 1;
    for (int k = 0; k < depth; ++k) {
      const SimilarityMap& f = maps[static_cast<std::size_t>(draw(cum, st.uniform()))];
      val += prod * f.td;
      prod *= f.sd;
    }
    out.points[i] = val + prod * x0;
  }
  const double rounding = 4e-16 * (depth + 2) * (scale + 1) / std::max(1e-300, 1 - ifs.max_abs_ratio());
  out.error_bound = diam * std::pow(ifs.max_abs_ratio(), depth) + rounding;
  return out;
}

std::vector<FieldElement> sample_measure_exact(const SimilarityIFS& ifs, std::size_t count, int depth,
                                               std::uint64_t seed) {
  if (depth < 1) throw Error(ErrorKind::Precondition, "depth must be >= 1");
  const FieldElement x0 = attractor_hull(ifs).midpoint();
  std::vector<FieldElement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Word w = sample_word(ifs, depth, seed, i);
    FieldElement x = x0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = ifs.maps()[static_cast<std::size_t>(*it)](x);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ssn
