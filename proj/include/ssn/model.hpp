#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssn/ifs.hpp"

namespace ssn {

/// Homogeneous IFS {r x + t_u} with weights p_u.
struct IndexIFS {
  FieldElement r;
  std::vector<FieldElement> t;
  std::vector<mpq_class> p;
  std::string label;

  std::size_t size() const { return t.size(); }

  // floating copies
  double rd = 0;
  std::vector<double> td;
  std::vector<double> pcum;

  void refresh();
};

class Model {
 public:
  Model(std::vector<IndexIFS> indices, std::vector<mpq_class> q);

  std::size_t size() const { return idx_.size(); }
  const IndexIFS& index(std::size_t i) const { return idx_[i]; }
  const std::vector<IndexIFS>& indices() const { return idx_; }
  const std::vector<mpq_class>& q() const { return q_; }
  const std::vector<double>& qcum() const { return qcum_; }

  /// Hull of the attractor of the union of all maps; contains every Y^(omega).
  const Interval& hull() const { return hull_; }
  double hull_lo() const { return hull_lo_; }
  double hull_hi() const { return hull_hi_; }
  double diam() const { return hull_hi_ - hull_lo_; }
  double max_abs_ratio() const;
  bool orientation_preserving() const;

  /// Smallest depth with max|r|^d diam < 1e-12.
  int default_depth() const;

  /// Translations multiplied by c.
  Model scaled(const FieldElement& c) const;

  // Provenance from build_model.
  int m = 1;
  Word pair_i;
  Word pair_j;

 private:
  std::vector<IndexIFS> idx_;
  std::vector<mpq_class> q_;
  std::vector<double> qcum_;
  Interval hull_;
  double hull_lo_ = 0;
  double hull_hi_ = 0;
};

Model build_model(const SimilarityIFS& ifs, int max_m = kDefaultMaxM);

struct SscResult {
  bool vacuous = false;  // every index is a singleton
  std::optional<FieldElement> min_gap;
  std::size_t witness = 0;  // index attaining the minimum
  std::string to_string() const;
};

/// Throws ErrorKind::SscViolated with the offending index when two images meet.
SscResult verify_ssc(const Model& m);

/// Symbol sequence omega in I^N: an optional explicit prefix followed by an
/// i.i.d. q-stream keyed by the seed. Shifting is O(1).
class Omega {
 public:
  Omega(const Model& m, std::uint64_t seed, std::vector<int> prefix = {});

  int operator[](std::size_t k) const;
  Omega shifted(std::size_t n = 1) const;
  std::vector<int> prefix(std::size_t n) const;
  std::uint64_t seed() const { return seed_; }
  std::size_t offset() const { return offset_; }

 private:
  std::vector<double> qcum_;
  std::uint64_t seed_;
  std::vector<int> fixed_;
  std::size_t offset_ = 0;
};

struct CodedPoint {
  std::vector<int> omega;
  std::vector<int> digits;
  double value = 0;
  double error = 0;  // |Pi_omega(u) - value| for every infinite extension
};

/// Index of the digit drawn from a uniform u under weights p.
int draw_digit(const std::vector<double>& cum, double u);

/// Coding map truncated after the given prefix, centred in the tail hull.
CodedPoint code_point(const Model& m, const std::vector<int>& omega, const std::vector<int>& digits);
FieldElement code_point_exact(const Model& m, const std::vector<int>& omega, const std::vector<int>& digits);

std::vector<CodedPoint> sample_eta(const Model& m, const Omega& omega, std::size_t count, int depth,
                                   std::uint64_t seed);
/// Values only, same draws as sample_eta.
std::vector<double> sample_eta_values(const Model& m, const Omega& omega, std::size_t count, int depth,
                                      std::uint64_t seed);

/// omega fresh per point, then digits from the product measure.
std::vector<double> sample_disintegration(const Model& m, std::size_t count, int depth, std::uint64_t seed);
std::vector<FieldElement> sample_disintegration_exact(const Model& m, std::size_t count, int depth,
                                                      std::uint64_t seed);

/// prod_k max_u p_u^(omega_k): bound on any atom of eta^(omega).
mpq_class atom_mass_bound(const Model& m, const std::vector<int>& omega_prefix);

}  // namespace ssn
