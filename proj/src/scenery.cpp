#include "ssn/scenery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include "ssn/error.hpp"
#include "ssn/parallel.hpp"
#include "ssn/rng.hpp"

namespace ssn {

namespace {
constexpr std::uint64_t kUDigitLabel = 0x7564696769ULL;
constexpr std::uint64_t kJitterLabel = 0x6a69747465ULL;
constexpr std::uint64_t kTailLabel = 0x7461696cULL;
constexpr std::uint64_t kSuspLabel = 0x73757370ULL;
constexpr std::uint64_t kQLabel = 0x51ULL;
}  // namespace

// ---------------------------------------------------------------------------
// Windows

double WindowMeasure::total() const {
  double s = 0;
  for (double b : bins) s += b;
  return s;
}

WindowMeasure bin_window(const std::vector<double>& values, const std::vector<double>& weights, int half_bins) {
  if (half_bins < 1) throw Error(ErrorKind::Precondition, "half_bins must be positive");
  if (!weights.empty() && weights.size() != values.size()) throw Error(ErrorKind::Precondition, "weights size mismatch");
  WindowMeasure w;
  w.half_bins = half_bins;
  w.bins.assign(2 * static_cast<std::size_t>(half_bins), 0.0);
  double total = 0;
  double sq = 0;
  const long last = 2L * half_bins - 1;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    const double wt = weights.empty() ? 1.0 : weights[k];
    if (!(std::abs(v) <= 1.0) || wt <= 0) continue;
    // by magnitude, so that tiny negatives stay left of 0
    const long off = std::min(static_cast<long>(std::abs(v) * half_bins), static_cast<long>(half_bins) - 1);
    const long b = std::clamp(v < 0 ? half_bins - 1 - off : half_bins + off, 0L, last);
    w.bins[static_cast<std::size_t>(b)] += wt;
    total += wt;
    sq += wt * wt;
  }
  if (total <= 0) throw Error(ErrorKind::EmptyWindow, "no mass in [-1,1]");
  for (double& b : w.bins) b /= total;
  w.effective_samples = total * total / sq;
  return w;
}

WindowMeasure point_mass_window(int half_bins) { return bin_window({0.0}, {1.0}, half_bins); }

WindowMeasure reflect(const WindowMeasure& w) {
  WindowMeasure r = w;
  std::reverse(r.bins.begin(), r.bins.end());
  return r;
}

double l1_distance(const WindowMeasure& a, const WindowMeasure& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::MismatchedBinning, "bin counts differ");
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a.bins[k] - b.bins[k]);
  return s;
}

double ks_distance(const WindowMeasure& a, const WindowMeasure& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::MismatchedBinning, "bin counts differ");
  double ca = 0, cb = 0, d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ca += a.bins[k];
    cb += b.bins[k];
    d = std::max(d, std::abs(ca - cb));
  }
  return d;
}

WindowMeasure center_and_window(const std::vector<double>& points, const std::vector<double>& weights, double focus,
                                double t, int half_bins) {
  const double scale = std::exp(t);
  if (!std::isfinite(scale)) throw Error(ErrorKind::Precondition, "window scale overflows");
  std::vector<double> v(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) v[k] = (points[k] - focus) * scale;
  return bin_window(v, weights, half_bins);
}

GapRescale rescale_model_for_gap(const Model& m, const mpq_class& margin) {
  if (margin < 0) throw Error(ErrorKind::Precondition, "margin must be nonnegative");
  const SscResult ssc = verify_ssc(m);
  if (ssc.vacuous) return GapRescale{m, FieldElement(1), std::nullopt};
  const FieldElement target(mpq_class(2) + margin);
  const FieldElement& g = *ssc.min_gap;
  if (g >= target) return GapRescale{m, FieldElement(1), g};
  const FieldElement c = target / g;
  return GapRescale{m.scaled(c), c, g * c};
}

// ---------------------------------------------------------------------------
// Scene states

SceneState::SceneState(Omega omega, std::uint64_t digit_seed, std::vector<int> digit_prefix, int a)
    : omega_(std::move(omega)), seed_(digit_seed), prefix_(std::move(digit_prefix)), a_(a & 1) {}

SceneState SceneState::random(const Model& m, std::uint64_t seed, bool with_orientation) {
  const int a = with_orientation ? static_cast<int>(hash_key(seed, 3) & 1) : 0;
  return SceneState(Omega(m, hash_key(seed, 1)), hash_key(seed, 2), {}, a);
}

int SceneState::digit(const Model& m, std::size_t k) const {
  const std::size_t pos = offset_ + k;
  const IndexIFS& f = m.index(static_cast<std::size_t>(omega_[k]));
  if (pos < prefix_.size()) {
    const int d = prefix_[pos];
    if (d < 0 || static_cast<std::size_t>(d) >= f.size()) throw Error(ErrorKind::Precondition, "digit out of range");
    return d;
  }
  return draw_digit(f.pcum, to_unit(hash_key(seed_, kUDigitLabel, pos)));
}

SceneState SceneState::shifted(const Model& m) const {
  SceneState s = *this;
  if (m.index(static_cast<std::size_t>(omega_[0])).rd < 0) s.a_ ^= 1;
  s.omega_ = omega_.shifted(1);
  s.offset_ = offset_ + 1;
  return s;
}

double SceneState::roof(const Model& m) const {
  return -std::log(std::abs(m.index(static_cast<std::size_t>(omega_[0])).rd));
}

// ---------------------------------------------------------------------------
// Direct window sampling

WindowMeasure scenery_window(const Model& m, const SceneState& s, double t, const WindowOptions& opt,
                             std::uint64_t seed) {
  if (opt.samples == 0) throw Error(ErrorKind::Precondition, "no samples requested");
  const double rho = opt.half_width * std::exp(-t);
  if (!(rho > 0)) throw Error(ErrorKind::Precondition, "window radius underflows");
  const double lo = m.hull_lo();
  const double hi = m.hull_hi();
  const double diam = m.diam();
  const double mid = 0.5 * (lo + hi);
  const double stop = rho * 0x1.0p-45;

  // path of the focus: symbols, digits and products P_k = r_{omega_0} ... r_{omega_{k-1}}
  std::vector<const IndexIFS*> idx;
  std::vector<int> ud;
  std::vector<double> prod{1.0};
  while (std::abs(prod.back()) * diam > stop) {
    if (idx.size() > 8192) throw Error(ErrorKind::Precondition, "window below double precision");
    const std::size_t k = idx.size();
    idx.push_back(&m.index(static_cast<std::size_t>(s.omega()[k])));
    ud.push_back(s.digit(m, k));
    prod.push_back(prod.back() * idx.back()->rd);
  }
  const std::size_t depth = idx.size();
  // xs[k] = Pi_{sigma^k omega}(sigma^k u)
  std::vector<double> xs(depth + 1, mid);
  for (std::size_t k = depth; k-- > 0;) xs[k] = idx[k]->td[static_cast<std::size_t>(ud[k])] + idx[k]->rd * xs[k + 1];

  const double sign = s.a() ? -1.0 : 1.0;
  const double n = static_cast<double>(opt.samples);
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(opt.samples);
  weights.reserve(opt.samples);
  std::vector<double> zs;
  std::vector<double> ps;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    double U = (static_cast<double>(i) + to_unit(hash_key(seed, kJitterLabel, i))) / n;
    double resolution = 1.0 / n;  // width of the stratum in the current coordinate
    const std::uint64_t tail = hash_key(seed, kTailLabel, i);
    double d = 0;  // y - x accumulated over decided digits
    double weight = 1;
    for (std::size_t k = 0; k < depth && weight > 0; ++k) {
      const IndexIFS& f = *idx[k];
      const double P = prod[k];
      const double Pn = prod[k + 1];
      const double tu = f.td[static_cast<std::size_t>(ud[k])];
      const double a0 = Pn * (lo - xs[k + 1]);
      const double a1 = Pn * (hi - xs[k + 1]);
      const double clo = std::min(a0, a1);
      const double chi = std::max(a0, a1);
      zs.clear();
      ps.clear();
      double Z = 0;
      for (std::size_t v = 0; v < f.size(); ++v) {
        const double base = d + P * (f.td[v] - tu);
        const double p = f.pcum[v] - (v ? f.pcum[v - 1] : 0.0);
        const bool hit = base + chi >= -rho && base + clo <= rho;
        ps.push_back(hit ? p : 0.0);
        Z += hit ? p : 0.0;
      }
      if (Z <= 0) {
        weight = 0;
        break;
      }
      double target;
      if (resolution < 1e-12) {
        target = to_unit(hash_key(tail, k)) * Z;
      } else {
        target = U * Z;
      }
      std::size_t v = 0;
      double below = 0;
      while (v + 1 < ps.size() && (ps[v] == 0 || below + ps[v] <= target)) {
        below += ps[v];
        ++v;
      }
      while (ps[v] == 0) --v;  // rounding at the top end
      if (resolution >= 1e-12) {
        U = std::clamp((target - below) / ps[v], 0.0, std::nextafter(1.0, 0.0));
        resolution *= Z / ps[v];
      }
      weight *= Z;
      d += P * (f.td[v] - tu);
    }
    // y and x agree to the working depth; go deeper so the sign of y - x is right
    double P = prod[depth];
    for (std::size_t k = depth; weight > 0 && d == 0 && k < depth + 2000 && std::abs(P) > 1e-290; ++k) {
      const IndexIFS& f = m.index(static_cast<std::size_t>(s.omega()[k]));
      const int v = draw_digit(f.pcum, to_unit(hash_key(tail, k)));
      d += P * (f.td[static_cast<std::size_t>(v)] - f.td[static_cast<std::size_t>(s.digit(m, k))]);
      P *= f.rd;
    }
    if (weight > 0 && std::abs(d) <= rho) {
      values.push_back(sign * d / rho);
      weights.push_back(weight);
    }
  }
  WindowMeasure w = bin_window(values, weights, opt.half_bins);
  w.zero_in_support = true;
  return w;
}

SceneryOrbit scenery_orbit(const Model& m, const SceneState& start, double T, double dt, const WindowOptions& opt,
                           std::uint64_t seed, int threads) {
  if (!(dt > 0) || !(T > 0)) throw Error(ErrorKind::Precondition, "T and dt must be positive");
  SceneryOrbit orbit{start, {}, {}, FieldElement(1), 0};
  std::vector<SceneState> states;
  std::vector<double> local;
  SceneState cur = start;
  double acc = 0;
  for (std::size_t j = 0;; ++j) {
    const double t = static_cast<double>(j) * dt;
    if (t >= T) break;
    for (double r = cur.roof(m); acc + r <= t; r = cur.roof(m)) {
      acc += r;
      cur = cur.shifted(m);
      ++orbit.shifts;
    }
    orbit.times.push_back(t);
    states.push_back(cur);
    local.push_back(t - acc);
  }
  orbit.windows.resize(states.size());
  parallel_for(states.size(), static_cast<unsigned>(threads), [&](std::size_t j) {
    orbit.windows[j] = scenery_window(m, states[j], local[j], opt, hash_key(seed, j));
  });
  return orbit;
}

// ---------------------------------------------------------------------------
// Markov chain

mpq_class ExtendedChain::a_marginal(int a) const {
  mpq_class s = 0;
  for (std::size_t k = 0; k < states.size(); ++k)
    if (states[k].a == a) s += stationary[k];
  return s;
}

bool ExtendedChain::stationary_exact() const {
  for (std::size_t c = 0; c < size(); ++c) {
    mpq_class s = 0;
    for (std::size_t r = 0; r < size(); ++r) s += stationary[r] * transition[r][c];
    if (s != stationary[c]) return false;
  }
  return true;
}

ExtendedChain build_extended_chain(const Model& m) {
  ExtendedChain ch;
  ch.with_orientation = !m.orientation_preserving();
  const int layers = ch.with_orientation ? 2 : 1;
  for (int a = 0; a < layers; ++a)
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t u = 0; u < m.index(i).size(); ++u) ch.states.push_back({i, static_cast<int>(u), a});

  const std::size_t n = ch.states.size();
  const mpq_class share = ch.with_orientation ? mpq_class(1, 2) : mpq_class(1);
  ch.transition.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& s = ch.states[r];
    const bool flips = m.index(s.i).r.sign() < 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& s2 = ch.states[c];
      if ((s2.a != s.a) != flips) continue;
      ch.transition[r][c] = m.q()[s2.i] * m.index(s2.i).p[static_cast<std::size_t>(s2.u)];
    }
  }
  for (const auto& s : ch.states) {
    ch.stationary.push_back(share * m.q()[s.i] * m.index(s.i).p[static_cast<std::size_t>(s.u)]);
    ch.roof.push_back(-std::log(std::abs(m.index(s.i).rd)));
  }
  for (const auto& row : ch.transition) {
    mpq_class s = 0;
    for (const auto& x : row) s += x;
    if (s != 1) throw Error(ErrorKind::Precondition, "transition rows must sum to 1");
  }
  if (!ch.stationary_exact()) throw Error(ErrorKind::Precondition, "stationary vector check failed");

  // shortest positive path lengths
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<int> dist(n, -1);
    std::deque<std::size_t> queue;
    for (std::size_t c = 0; c < n; ++c)
      if (ch.transition[src][c] != 0) {
        dist[c] = 1;
        queue.push_back(c);
      }
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t c = 0; c < n; ++c)
        if (ch.transition[v][c] != 0 && dist[c] < 0) {
          dist[c] = dist[v] + 1;
          queue.push_back(c);
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (dist[c] < 0) {
        throw Error(ErrorKind::ReducibleChain,
                    "state " + std::to_string(src) + " cannot reach state " + std::to_string(c));
      }
      ch.diameter = std::max(ch.diameter, dist[c]);
    }
  }

  for (std::size_t k = 0; k < n; ++k) ch.expected_roof += ch.stationary[k].get_d() * ch.roof[k];
  double acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += ch.stationary[k].get_d() * ch.roof[k] / ch.expected_roof;
    ch.roof_weighted_cdf.push_back(acc);
  }
  ch.roof_weighted_cdf.back() = 1.0;
  return ch;
}

std::vector<SuspensionPoint> sample_suspension(const ExtendedChain& chain, std::size_t n, std::uint64_t seed) {
  std::vector<SuspensionPoint> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = to_unit(hash_key(seed, kSuspLabel, 2 * j));
    const auto it = std::upper_bound(chain.roof_weighted_cdf.begin(), chain.roof_weighted_cdf.end(), u);
    const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(it - chain.roof_weighted_cdf.begin()),
                                                chain.size() - 1);
    out[j].state = s;
    out[j].t = to_unit(hash_key(seed, kSuspLabel, 2 * j + 1)) * chain.roof[s];
  }
  return out;
}

std::vector<WindowMeasure> sample_Q(const Model& m, const ExtendedChain& chain, std::size_t n,
                                    const WindowOptions& opt, std::uint64_t seed, int threads) {
  const auto base = sample_suspension(chain, n, seed);
  std::vector<WindowMeasure> out(n);
  parallel_for(n, static_cast<unsigned>(threads), [&](std::size_t j) {
    const ChainState& cs = chain.states[base[j].state];
    const std::uint64_t key = hash_key(seed, kQLabel, j);
    const SceneState s(Omega(m, hash_key(key, 1), {static_cast<int>(cs.i)}), hash_key(key, 2), {cs.u}, cs.a);
    out[j] = scenery_window(m, s, base[j].t, opt, hash_key(key, 3));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Functional panel

const std::array<std::string, kPanelSize>& panel_names() {
  static const std::array<std::string, kPanelSize> names = [] {
    std::array<std::string, kPanelSize> n;
    std::size_t k = 0;
    n[k++] = "mean";
    n[k++] = "second_moment";
    n[k++] = "abs_moment";
    n[k++] = "third_moment";
    for (int e = 1; e <= 8; ++e) n[k++] = "central_mass_2^-" + std::to_string(e);
    n[k++] = "left_mass";
    for (int e = 1; e <= 6; ++e) n[k++] = "right_mass_2^-" + std::to_string(e);
    for (int c = 1; c <= 5; ++c) n[k++] = "symmetry_defect_" + std::to_string(1 << c);
    for (int f = 1; f <= 4; ++f) n[k++] = "cos_" + std::to_string(f);
    for (int f = 1; f <= 4; ++f) n[k++] = "sin_" + std::to_string(f);
    return n;
  }();
  return names;
}

std::array<double, kPanelSize> evaluate_panel(const WindowMeasure& w) {
  std::array<double, kPanelSize> out{};
  const std::size_t nb = w.size();
  const double hb = w.half_bins;
  auto mid = [&](std::size_t k) { return -1.0 + (static_cast<double>(k) + 0.5) / hb; };
  std::size_t o = 0;
  double m1 = 0, m2 = 0, ma = 0, m3 = 0;
  for (std::size_t k = 0; k < nb; ++k) {
    const double x = mid(k);
    m1 += w.bins[k] * x;
    m2 += w.bins[k] * x * x;
    ma += w.bins[k] * std::abs(x);
    m3 += w.bins[k] * x * x * x;
  }
  out[o++] = m1;
  out[o++] = m2;
  out[o++] = ma;
  out[o++] = m3;
  for (int e = 1; e <= 8; ++e) {
    const double h = std::ldexp(1.0, -e);
    double s = 0;
    for (std::size_t k = 0; k < nb; ++k)
      if (std::abs(mid(k)) < h) s += w.bins[k];
    out[o++] = s;
  }
  {
    double s = 0;
    for (std::size_t k = 0; k < nb; ++k)
      if (mid(k) < 0) s += w.bins[k];
    out[o++] = s;
  }
  for (int e = 1; e <= 6; ++e) {
    const double h = std::ldexp(1.0, -e);
    double s = 0;
    for (std::size_t k = 0; k < nb; ++k)
      if (mid(k) > 0 && mid(k) < h) s += w.bins[k];
    out[o++] = s;
  }
  for (int c = 1; c <= 5; ++c) {
    const std::size_t cells = std::size_t{1} << c;  // per side
    std::vector<double> left(cells, 0.0), right(cells, 0.0);
    for (std::size_t k = 0; k < nb; ++k) {
      const double x = mid(k);
      const std::size_t cell = std::min(cells - 1, static_cast<std::size_t>(std::abs(x) * static_cast<double>(cells)));
      (x < 0 ? left : right)[cell] += w.bins[k];
    }
    double d = 0;
    for (std::size_t k = 0; k < cells; ++k) d += std::abs(left[k] - right[k]);
    out[o++] = 0.5 * d;
  }
  for (int f = 1; f <= 4; ++f) {
    double s = 0;
    for (std::size_t k = 0; k < nb; ++k) s += w.bins[k] * std::cos(std::numbers::pi * f * mid(k));
    out[o++] = s;
  }
  for (int f = 1; f <= 4; ++f) {
    double s = 0;
    for (std::size_t k = 0; k < nb; ++k) s += w.bins[k] * std::sin(std::numbers::pi * f * mid(k));
    out[o++] = s;
  }
  return out;
}

SceneryReport compare_scenery_to_Q(const std::vector<WindowMeasure>& orbit, const std::vector<WindowMeasure>& q) {
  if (orbit.empty() || q.empty()) throw Error(ErrorKind::Precondition, "empty window list");
  const std::size_t nb = orbit.front().size();
  for (const auto* list : {&orbit, &q})
    for (const auto& w : *list)
      if (w.size() != nb) throw Error(ErrorKind::MismatchedBinning, "bin counts differ");
  SceneryReport rep;
  for (const auto& w : orbit) {
    const auto v = evaluate_panel(w);
    for (int k = 0; k < kPanelSize; ++k) rep.orbit_average[k] += v[k];
  }
  for (const auto& w : q) {
    const auto v = evaluate_panel(w);
    for (int k = 0; k < kPanelSize; ++k) rep.q_average[k] += v[k];
  }
  for (int k = 0; k < kPanelSize; ++k) {
    rep.orbit_average[k] /= static_cast<double>(orbit.size());
    rep.q_average[k] /= static_cast<double>(q.size());
    rep.distance[k] = std::abs(rep.orbit_average[k] - rep.q_average[k]);
    if (rep.distance[k] > rep.max_distance) {
      rep.max_distance = rep.distance[k];
      rep.argmax = static_cast<std::size_t>(k);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Spectrum obstruction

std::string SpectrumVerdict::to_string() const {
  if (!normality_implied) return "Inconclusive(" + evidence + ")";
  return "NormalityImplied(j=" + std::to_string(j) + ", " + (relation.certified() ? "certified" : "bounded") + ")";
}

SpectrumVerdict spectrum_obstruction(const Model& m, const BetaBase& b, int search_bound) {
  if (!b.pisot()) throw Error(ErrorKind::NotPisot, b.spec() + " is not a Pisot number");
  std::optional<SpectrumVerdict> bounded;
  std::map<std::string, bool> tried;
  std::vector<std::string> related;
  for (std::size_t j = 0; j < m.size(); ++j) {
    FieldElement r = m.index(j).r;
    if (r.sign() < 0) r = -r;
    if (!tried.emplace(r.key(), true).second) continue;
    const Relation rel = multiplicative_relation(r, b.value(), search_bound);
    if (rel.dependent()) {
      related.push_back("|r_" + std::to_string(j) + "| = " + r.to_string() + ": " + ssn::to_string(rel));
      continue;
    }
    SpectrumVerdict v;
    v.normality_implied = true;
    v.j = j;
    v.ratio = r;
    v.relation = rel;
    v.evidence = "alpha = k/log(beta), k != 0, with 2 alpha log|r_j| in Z would give |r_j| ~ beta; " + r.to_string() +
                 " vs " + b.value().to_string() + ": " + ssn::to_string(rel);
    if (rel.certified()) return v;
    if (!bounded) bounded = v;
  }
  if (bounded) return *bounded;
  SpectrumVerdict v;
  v.evidence = "all ratios ~ beta";
  for (const auto& s : related) v.evidence += "; " + s;
  return v;
}

}  // namespace ssn
