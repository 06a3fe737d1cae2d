#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

struct AffineMap {
  double s;
  double t;
};

/// CDF of the self-similar measure of increasing maps, as the fixed point of
/// F = sum_i p_i F(f_i^{-1}(.)) on a uniform grid over [lo, hi].
class SelfSimilarCdf {
 public:
  SelfSimilarCdf(std::vector<AffineMap> maps, std::vector<double> p, double lo, double hi, int bins = 10000)
      : lo_(lo), hi_(hi), f_(static_cast<std::size_t>(bins) + 1) {
    for (std::size_t k = 0; k < f_.size(); ++k) f_[k] = static_cast<double>(k) / bins;
    for (int it = 0; it < 400; ++it) {
      std::vector<double> g(f_.size());
      for (std::size_t k = 0; k < f_.size(); ++k) {
        const double x = lo_ + (hi_ - lo_) * static_cast<double>(k) / bins;
        double acc = 0;
        for (std::size_t i = 0; i < maps.size(); ++i) acc += p[i] * (*this)((x - maps[i].t) / maps[i].s);
        g[k] = acc;
      }
      f_ = std::move(g);
    }
  }

  double operator()(double x) const {
    if (x <= lo_) return 0;
    if (x >= hi_) return 1;
    const double u = (x - lo_) / (hi_ - lo_) * static_cast<double>(f_.size() - 1);
    const std::size_t k = std::min(static_cast<std::size_t>(u), f_.size() - 2);
    const double w = u - static_cast<double>(k);
    return f_[k] * (1 - w) + f_[k + 1] * w;
  }

 private:
  double lo_;
  double hi_;
  std::vector<double> f_;
};

/// Invariant density of T(x) = beta x mod 1 from the Ulam discretisation of
/// the transfer operator on `bins` cells, by power iteration.
inline std::vector<double> ulam_density(double beta, int bins) {
  const int n = bins;
  std::vector<double> h(static_cast<std::size_t>(n), 1.0);
  // cell k maps onto [beta*k/n, beta*(k+1)/n) mod 1; split mass by overlap
  for (int it = 0; it < 3000; ++it) {
    std::vector<double> g(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
      double a = beta * k / n;
      const double b = beta * (k + 1) / n;
      const double span = b - a;
      const double mass = h[static_cast<std::size_t>(k)] / n;
      while (a < b - 1e-15) {
        const double cell_end = (std::floor(a * n + 1e-12) + 1) / n;
        const double e = std::min(b, cell_end);
        double frac = a - std::floor(a);
        int c = static_cast<int>(frac * n + 1e-9);
        if (c >= n) c = n - 1;
        g[static_cast<std::size_t>(c)] += mass * (e - a) / span * n;
        a = e;
      }
    }
    h = std::move(g);
  }
  return h;
}

}  // namespace oracle
