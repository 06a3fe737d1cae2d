#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ssn/beta.hpp"
#include "ssn/model.hpp"
#include "ssn/relation.hpp"

namespace ssn {

inline constexpr int kDefaultHalfBins = 256;

/// Probability measure on [-1,1] held as 2B equal-width bins.
struct WindowMeasure {
  int half_bins = kDefaultHalfBins;
  std::vector<double> bins;
  bool zero_in_support = true;
  double effective_samples = 0;

  std::size_t size() const { return bins.size(); }
  double total() const;
  /// Left edge of bin k.
  double edge(std::size_t k) const { return -1.0 + static_cast<double>(k) / half_bins; }
};

/// Normalised histogram of weighted values in [-1,1]. Throws EmptyWindow on zero mass.
WindowMeasure bin_window(const std::vector<double>& values, const std::vector<double>& weights,
                         int half_bins = kDefaultHalfBins);
WindowMeasure point_mass_window(int half_bins = kDefaultHalfBins);
/// E -> -E. An involution on bins.
WindowMeasure reflect(const WindowMeasure& w);
double l1_distance(const WindowMeasure& a, const WindowMeasure& b);
double ks_distance(const WindowMeasure& a, const WindowMeasure& b);

/// Translate by -focus, scale by e^t, condition on [-1,1]. Empty weights mean equal weights.
WindowMeasure center_and_window(const std::vector<double>& points, const std::vector<double>& weights, double focus,
                                double t, int half_bins = kDefaultHalfBins);

struct GapRescale {
  Model model;
  FieldElement factor;
  std::optional<FieldElement> gap;  // after rescaling; empty when every index is a singleton
};

/// Multiplies all translations by c = (2 + margin)/gap, or leaves them when the gap already exceeds 2 + margin.
GapRescale rescale_model_for_gap(const Model& m, const mpq_class& margin = mpq_class(1, 2));

/// A point (omega, u, a) of the extended base. u is an infinite digit
/// sequence: an optional prefix, then digits drawn from p^(omega_k).
class SceneState {
 public:
  SceneState(Omega omega, std::uint64_t digit_seed, std::vector<int> digit_prefix = {}, int a = 0);

  /// Random start: omega from q, u from the product weights, a uniform when `with_orientation`.
  static SceneState random(const Model& m, std::uint64_t seed, bool with_orientation);

  const Omega& omega() const { return omega_; }
  int a() const { return a_; }
  int digit(const Model& m, std::size_t k) const;
  /// M' : shift omega and u, flip a when r_{omega_1} < 0.
  SceneState shifted(const Model& m) const;
  SceneState with_a(int a) const {
    SceneState s = *this;
    s.a_ = a & 1;
    return s;
  }
  /// -log |r_{omega_1}|
  double roof(const Model& m) const;

 private:
  Omega omega_;
  std::uint64_t seed_;
  std::vector<int> prefix_;
  std::size_t offset_ = 0;
  int a_ = 0;
};

struct WindowOptions {
  int half_bins = kDefaultHalfBins;
  std::size_t samples = 4096;
  /// Conditioning interval [-h, h]; 1 with a gap-rescaled model, t0 otherwise.
  double half_width = 1.0;
};

/// Window of S_t eta_{omega,u,a}, sampled directly from eta^(omega)
/// conditioned on the window by stratified descent through the cylinders.
WindowMeasure scenery_window(const Model& m, const SceneState& s, double t, const WindowOptions& opt,
                             std::uint64_t seed);

struct SceneryOrbit {
  SceneState start;
  std::vector<double> times;
  std::vector<WindowMeasure> windows;
  FieldElement gap_rescale{1};
  std::size_t shifts = 0;  // base steps replayed
};

/// Windows at 0, dt, ..., < T. Each time t is reached by applying M' while
/// the accumulated roof stays <= t, then zooming by the remainder.
SceneryOrbit scenery_orbit(const Model& m, const SceneState& start, double T, double dt, const WindowOptions& opt,
                           std::uint64_t seed, int threads = 1);

struct ChainState {
  std::size_t i = 0;
  int u = 0;
  int a = 0;
};

struct ExtendedChain {
  bool with_orientation = false;
  std::vector<ChainState> states;
  std::vector<std::vector<mpq_class>> transition;
  std::vector<mpq_class> stationary;
  std::vector<double> roof;
  int diameter = 0;
  double expected_roof = 0;
  std::vector<double> roof_weighted_cdf;

  std::size_t size() const { return states.size(); }
  mpq_class a_marginal(int a) const;
  /// pi P == pi, exactly.
  bool stationary_exact() const;
};

/// Throws ReducibleChain when some state cannot reach another.
ExtendedChain build_extended_chain(const Model& m);

struct SuspensionPoint {
  std::size_t state = 0;
  double t = 0;
};

/// Base state from the roof-weighted stationary law, t uniform on [0, roof).
std::vector<SuspensionPoint> sample_suspension(const ExtendedChain& chain, std::size_t n, std::uint64_t seed);

std::vector<WindowMeasure> sample_Q(const Model& m, const ExtendedChain& chain, std::size_t n,
                                    const WindowOptions& opt, std::uint64_t seed, int threads = 1);

inline constexpr int kPanelSize = 32;
inline constexpr const char* kPanelVersion = "panel-v1";

const std::array<std::string, kPanelSize>& panel_names();
std::array<double, kPanelSize> evaluate_panel(const WindowMeasure& w);

struct SceneryReport {
  std::string panel_version = kPanelVersion;
  std::array<double, kPanelSize> orbit_average{};
  std::array<double, kPanelSize> q_average{};
  std::array<double, kPanelSize> distance{};
  double max_distance = 0;
  std::size_t argmax = 0;
};

/// Throws MismatchedBinning when the bin counts differ.
SceneryReport compare_scenery_to_Q(const std::vector<WindowMeasure>& orbit, const std::vector<WindowMeasure>& q);

struct SpectrumVerdict {
  bool normality_implied = false;
  std::size_t j = 0;
  FieldElement ratio{0};
  Relation relation;
  std::string evidence;
  std::string to_string() const;
};

/// Searches for an index with |r_j| not multiplicatively related to beta.
/// Throws NotPisot unless beta is Pisot.
SpectrumVerdict spectrum_obstruction(const Model& m, const BetaBase& b, int search_bound = kDefaultSearchBound);

}  // namespace ssn
