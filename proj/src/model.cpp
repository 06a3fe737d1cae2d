#include "ssn/model.hpp"

#include <algorithm>
#include <cmath>

#include "ssn/error.hpp"
#include "ssn/rng.hpp"

namespace ssn {

namespace {
constexpr std::uint64_t kOmegaLabel = 0x6f6d656761ULL;   // "omega"
constexpr std::uint64_t kDigitLabel = 0x6469676974ULL;   // "digit"

std::vector<double> cumulative(const std::vector<mpq_class>& w) {
  std::vector<double> c;
  mpq_class acc = 0;
  for (const auto& v : w) {
    acc += v;
    c.push_back(acc.get_d());
  }
  if (!c.empty()) c.back() = 1.0;
  return c;
}
}  // namespace

void IndexIFS::refresh() {
  if (t.empty() || t.size() != p.size()) throw Error(ErrorKind::Precondition, "index IFS needs one weight per map");
  if (r.is_zero() || r.abs() >= FieldElement(1)) throw Error(ErrorKind::Precondition, "ratio must satisfy 0 < |r| < 1");
  mpq_class total = 0;
  for (const auto& v : p) {
    if (v <= 0) throw Error(ErrorKind::Precondition, "weights must be strictly positive");
    total += v;
  }
  if (total != 1) throw Error(ErrorKind::Precondition, "weights of index " + label + " must sum to 1");
  rd = r.to_double();
  td.clear();
  for (const auto& v : t) td.push_back(v.to_double());
  pcum = cumulative(p);
}

Model::Model(std::vector<IndexIFS> indices, std::vector<mpq_class> q) : idx_(std::move(indices)), q_(std::move(q)) {
  if (idx_.empty() || idx_.size() != q_.size()) throw Error(ErrorKind::Precondition, "one selection weight per index");
  mpq_class total = 0;
  for (const auto& v : q_) {
    if (v <= 0) throw Error(ErrorKind::Precondition, "selection weights must be strictly positive");
    total += v;
  }
  if (total != 1) throw Error(ErrorKind::Precondition, "selection weights must sum to 1");
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i].label.empty()) idx_[i].label = std::to_string(i);
    idx_[i].refresh();
  }
  qcum_ = cumulative(q_);
  std::vector<SimilarityMap> maps;
  for (const auto& f : idx_)
    for (const auto& t : f.t) maps.emplace_back(f.r, t);
  std::vector<mpq_class> w(maps.size(), mpq_class(1, static_cast<long>(maps.size())));
  hull_ = attractor_hull(SimilarityIFS(std::move(maps), std::move(w)));
  hull_lo_ = hull_.lo.to_double();
  hull_hi_ = hull_.hi.to_double();
}

double Model::max_abs_ratio() const {
  double m = 0;
  for (const auto& f : idx_) m = std::max(m, std::abs(f.rd));
  return m;
}

bool Model::orientation_preserving() const {
  for (const auto& f : idx_)
    if (f.r.sign() < 0) return false;
  return true;
}

int Model::default_depth() const {
  const double r = max_abs_ratio();
  const double d = std::max(diam(), 1e-300);
  int depth = 1;
  while (std::pow(r, depth) * d >= 1e-12) ++depth;
  return depth;
}

Model Model::scaled(const FieldElement& c) const {
  std::vector<IndexIFS> idx = idx_;
  for (auto& f : idx)
    for (auto& t : f.t) t = t * c;
  Model out(std::move(idx), q_);
  out.m = m;
  out.pair_i = pair_i;
  out.pair_j = pair_j;
  return out;
}

Model build_model(const SimilarityIFS& ifs, int max_m) {
  const SeparatedPair pair = find_separated_pair(ifs, max_m);
  const SimilarityIFS it = pair.m > 1 ? iterate_ifs(ifs, pair.m) : ifs;
  const auto& maps = it.maps();
  const auto& w = it.weights();
  std::vector<IndexIFS> idx;
  std::vector<mpq_class> q;

  IndexIFS zero;
  zero.r = maps[pair.index_i].s;
  zero.t = {maps[pair.index_i].t, maps[pair.index_j].t};
  const mpq_class q0 = w[pair.index_i] + w[pair.index_j];
  zero.p = {w[pair.index_i] / q0, w[pair.index_j] / q0};
  zero.label = "0";
  idx.push_back(std::move(zero));
  q.push_back(q0);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (k == pair.index_i || k == pair.index_j) continue;
    IndexIFS single;
    single.r = maps[k].s;
    single.t = {maps[k].t};
    single.p = {mpq_class(1)};
    single.label = word_string(it.words()[k]);
    idx.push_back(std::move(single));
    q.push_back(w[k]);
  }
  Model model(std::move(idx), std::move(q));
  model.m = pair.m;
  model.pair_i = pair.i;
  model.pair_j = pair.j;
  return model;
}

std::string SscResult::to_string() const {
  if (vacuous) return "vacuously separated";
  return "min gap " + min_gap->to_string() + " at index " + std::to_string(witness);
}

SscResult verify_ssc(const Model& m) {
  SscResult res;
  res.vacuous = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const IndexIFS& f = m.index(i);
    if (f.size() < 2) continue;
    res.vacuous = false;
    std::vector<Interval> ims;
    for (const auto& t : f.t) ims.push_back(image(SimilarityMap(f.r, t), m.hull()));
    std::sort(ims.begin(), ims.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    FieldElement reach = ims[0].hi;
    for (std::size_t k = 1; k < ims.size(); ++k) {
      const FieldElement gap = ims[k].lo - reach;
      if (gap.sign() <= 0) {
        throw Error(ErrorKind::SscViolated, "hull images of index " + f.label + " intersect");
      }
      if (!res.min_gap || gap < *res.min_gap) {
        res.min_gap = gap;
        res.witness = i;
      }
      if (ims[k].hi > reach) reach = ims[k].hi;
    }
  }
  return res;
}

Omega::Omega(const Model& m, std::uint64_t seed, std::vector<int> prefix)
    : qcum_(m.qcum()), seed_(seed), fixed_(std::move(prefix)) {
  for (int s : fixed_)
    if (s < 0 || static_cast<std::size_t>(s) >= m.size()) throw Error(ErrorKind::Precondition, "omega symbol out of range");
}

int Omega::operator[](std::size_t k) const {
  const std::size_t pos = offset_ + k;
  if (pos < fixed_.size()) return fixed_[pos];
  return draw_digit(qcum_, to_unit(hash_key(seed_, kOmegaLabel, pos)));
}

Omega Omega::shifted(std::size_t n) const {
  Omega o = *this;
  o.offset_ += n;
  return o;
}

std::vector<int> Omega::prefix(std::size_t n) const {
  std::vector<int> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = (*this)[k];
  return v;
}

int draw_digit(const std::vector<double>& cum, double u) {
  return static_cast<int>(std::upper_bound(cum.begin(), cum.end() - 1, u) - cum.begin());
}

CodedPoint code_point(const Model& m, const std::vector<int>& omega, const std::vector<int>& digits) {
  if (digits.size() > omega.size()) throw Error(ErrorKind::Precondition, "omega prefix shorter than digit word");
  CodedPoint c;
  c.omega = omega;
  c.digits = digits;
  double prod = 1;
  double val = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(omega[k]));
    val += prod * f.td[static_cast<std::size_t>(digits[k])];
    prod *= f.rd;
  }
  const double mid = 0.5 * (m.hull_lo() + m.hull_hi());
  c.value = val + prod * mid;
  c.error = std::abs(prod) * m.diam() / 2 + 4e-16 * static_cast<double>(digits.size() + 2) * (std::abs(val) + m.diam() + std::abs(mid));
  return c;
}

FieldElement code_point_exact(const Model& m, const std::vector<int>& omega, const std::vector<int>& digits) {
  if (digits.size() > omega.size()) throw Error(ErrorKind::Precondition, "omega prefix shorter than digit word");
  FieldElement x = m.hull().midpoint();
  for (std::size_t k = digits.size(); k-- > 0;) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(omega[k]));
    x = f.r * x + f.t[static_cast<std::size_t>(digits[k])];
  }
  return x;
}

namespace {

std::vector<int> draw_digits(const Model& m, const Omega& omega, int depth, std::uint64_t seed, std::size_t point) {
  std::vector<int> u(static_cast<std::size_t>(depth));
  const std::uint64_t key = hash_key(seed, kDigitLabel, point);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(omega[k]));
    u[k] = f.size() == 1 ? 0 : draw_digit(f.pcum, to_unit(hash_key(key, k)));
  }
  return u;
}

// Continues with random digits below `depth` until the remaining tail is
// below double resolution, so the floating value samples eta exactly.
double extended_value(const Model& m, const Omega& omega, const std::vector<int>& u, std::uint64_t key) {
  double prod = 1;
  double val = 0;
  std::size_t k = 0;
  for (; k < u.size(); ++k) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(omega[k]));
    val += prod * f.td[static_cast<std::size_t>(u[k])];
    prod *= f.rd;
  }
  const double scale = std::abs(m.hull_lo()) + std::abs(m.hull_hi()) + m.diam();
  for (; std::abs(prod) * m.diam() > 0x1.0p-60 * scale && k < u.size() + 400; ++k) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(omega[k]));
    const int d = f.size() == 1 ? 0 : draw_digit(f.pcum, to_unit(hash_key(key, k)));
    val += prod * f.td[static_cast<std::size_t>(d)];
    prod *= f.rd;
  }
  return val + prod * 0.5 * (m.hull_lo() + m.hull_hi());
}

}  // namespace

std::vector<CodedPoint> sample_eta(const Model& m, const Omega& omega, std::size_t count, int depth,
                                   std::uint64_t seed) {
  if (depth < 0) throw Error(ErrorKind::Precondition, "depth must be >= 0");
  const std::vector<int> w = omega.prefix(static_cast<std::size_t>(depth));
  std::vector<CodedPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t key = hash_key(seed, kDigitLabel, i);
    CodedPoint c = code_point(m, w, draw_digits(m, omega, depth, seed, i));
    c.value = extended_value(m, omega, c.digits, key);
    c.error *= 2;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<double> sample_eta_values(const Model& m, const Omega& omega, std::size_t count, int depth,
                                      std::uint64_t seed) {
  if (depth < 0) throw Error(ErrorKind::Precondition, "depth must be >= 0");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = extended_value(m, omega, draw_digits(m, omega, depth, seed, i), hash_key(seed, kDigitLabel, i));
  }
  return out;
}

std::vector<double> sample_disintegration(const Model& m, std::size_t count, int depth, std::uint64_t seed) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Omega omega(m, hash_key(seed, kOmegaLabel, i));
    out[i] = extended_value(m, omega, draw_digits(m, omega, depth, seed, i), hash_key(seed, kDigitLabel, i));
  }
  return out;
}

std::vector<FieldElement> sample_disintegration_exact(const Model& m, std::size_t count, int depth,
                                                      std::uint64_t seed) {
  std::vector<FieldElement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Omega omega(m, hash_key(seed, kOmegaLabel, i));
    out.push_back(code_point_exact(m, omega.prefix(static_cast<std::size_t>(depth)), draw_digits(m, omega, depth, seed, i)));
  }
  return out;
}

mpq_class atom_mass_bound(const Model& m, const std::vector<int>& omega_prefix) {
  mpq_class bound = 1;
  for (int s : omega_prefix) {
    const IndexIFS& f = m.index(static_cast<std::size_t>(s));
    bound *= *std::max_element(f.p.begin(), f.p.end());
  }
  return bound;
}

}  // namespace ssn
