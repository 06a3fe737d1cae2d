#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ssn/algebraic.hpp"

namespace ssn {

/// f(x) = s x + t with 0 < |s| < 1.
struct SimilarityMap {
  FieldElement s;
  FieldElement t;

  SimilarityMap(FieldElement ratio, FieldElement translation);

  FieldElement operator()(const FieldElement& x) const { return s * x + t; }
  double apply(double x) const { return sd * x + td; }
  FieldElement fixed_point() const { return t / (FieldElement(1) - s); }

  double sd;
  double td;
};

/// Closed interval with exact endpoints.
struct Interval {
  FieldElement lo;
  FieldElement hi;

  FieldElement length() const { return hi - lo; }
  FieldElement midpoint() const { return (lo + hi) / FieldElement(2); }
  bool disjoint_from(const Interval& other) const { return hi < other.lo || other.hi < lo; }
};

Interval image(const SimilarityMap& f, const Interval& j);

using Word = std::vector<int>;  // 0-based map indices, outermost first
std::string word_string(const Word& w);  // 1-based, e.g. "(1,2)"

/// Maps with exact rational weights. Words record the composition history
/// for iterated systems.
class SimilarityIFS {
 public:
  SimilarityIFS(std::vector<SimilarityMap> maps, std::vector<mpq_class> weights);

  std::size_t size() const { return maps_.size(); }
  const std::vector<SimilarityMap>& maps() const { return maps_; }
  const std::vector<mpq_class>& weights() const { return weights_; }
  const std::vector<Word>& words() const { return words_; }
  std::vector<double> weights_double() const;

  /// At least two maps with distinct fixed points.
  bool has_infinite_attractor() const;
  double max_abs_ratio() const;

  void set_words(std::vector<Word> words);

 private:
  std::vector<SimilarityMap> maps_;
  std::vector<mpq_class> weights_;
  std::vector<Word> words_;
};

/// Convex hull of the attractor, exact.
Interval attractor_hull(const SimilarityIFS& ifs);

inline constexpr std::size_t kDefaultMapCap = std::size_t{1} << 16;

/// Phi^M in lexicographic word order with product weights.
SimilarityIFS iterate_ifs(const SimilarityIFS& ifs, int m, std::size_t cap = kDefaultMapCap);

struct SeparatedPair {
  int m = 0;
  Word i;
  Word j;
  std::size_t index_i = 0;  // positions in iterate_ifs(ifs, m)
  std::size_t index_j = 0;
};

inline constexpr int kDefaultMaxM = 8;

/// Least M, then lexicographically least (I, J) with equal exact ratios and
/// strictly disjoint hull images.
SeparatedPair find_separated_pair(const SimilarityIFS& ifs, int max_m = kDefaultMaxM,
                                  std::size_t cap = kDefaultMapCap);

struct MeasureSample {
  std::vector<double> points;
  double error_bound = 0;  // distance to a true mu-distributed point
};

/// Forward composition of `depth` i.i.d. maps applied to the hull midpoint.
MeasureSample sample_measure(const SimilarityIFS& ifs, std::size_t count, int depth, std::uint64_t seed);

/// The same words as sample_measure, evaluated exactly.
std::vector<FieldElement> sample_measure_exact(const SimilarityIFS& ifs, std::size_t count, int depth,
                                               std::uint64_t seed);

/// Word drawn for point `index` of sample_measure.
Word sample_word(const SimilarityIFS& ifs, int depth, std::uint64_t seed, std::size_t index);

}  // namespace ssn
