#include "ssn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ssn/error.hpp"

namespace ssn {

namespace {

constexpr Precision kMaxPrecision = Precision{1} << 16;
constexpr int kMaxFactorDegree = 16;

// ---- real roots -----------------------------------------------------------

mpq_class nonroot_split(const IntPolynomial& p, const mpq_class& a, const mpq_class& b) {
  mpq_class m = (a + b) / 2;
  mpq_class step = (b - a) / 1024;
  for (int j = 1; sign_at(p, m) == 0; ++j) m = (a + b) / 2 + step * j;
  return m;
}

// ---- complex boxes --------------------------------------------------------

struct CBox {
  BigReal re;
  BigReal im;
};

CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
CBox operator*(const CBox& a, const CBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CBox operator/(const CBox& a, const CBox& b) {
  BigReal den = b.re.square() + b.im.square();
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
BigReal modulus(const CBox& z) { return (z.re.square() + z.im.square()).sqrt(); }

CBox point(const mpq_class& re, const mpq_class& im, Precision bits) {
  return {BigReal::from_mpq(re, bits), BigReal::from_mpq(im, bits)};
}

CBox eval_box(const IntPolynomial& p, const CBox& z) {
  const Precision bits = z.re.precision();
  CBox acc{BigReal(bits), BigReal(bits)};
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + BigReal::from_mpz(*it, bits);
  }
  return acc;
}

// Aberth iteration in long double for starting values.
std::vector<std::complex<long double>> aberth_start(const IntPolynomial& p) {
  using C = std::complex<long double>;
  const int n = p.degree();
  std::vector<long double> a;
  for (const auto& c : p.coefficients()) a.push_back(static_cast<long double>(c.get_d()));
  auto eval = [&](const C& z, C& pz, C& dz) {
    pz = 0;
    dz = 0;
    for (int i = n; i >= 0; --i) {
      dz = dz * z + pz;
      pz = pz * z + a[static_cast<std::size_t>(i)];
    }
  };
  long double radius = std::pow(std::abs(a[0] / a[static_cast<std::size_t>(n)]), 1.0L / n);
  if (!(radius > 0) || !std::isfinite(radius)) radius = 1;
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const long double ang = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      C pz, dz;
      eval(z[static_cast<std::size_t>(i)], pz, dz);
      if (std::abs(pz) == 0) continue;
      C ratio = pz / dz;
      C sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      C w = ratio / (1.0L - ratio * sum);
      z[static_cast<std::size_t>(i)] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

struct DiscSet {
  std::vector<RootDisc> discs;
  bool isolated = false;
};

mpq_class to_q(long double v) { return mpq_class(static_cast<double>(v)); }

// Weierstrass refinement at `bits` followed by Gerschgorin certification.
DiscSet certified_discs(const IntPolynomial& p, std::vector<std::pair<mpq_class, mpq_class>>& z,
                        Precision bits) {
  const int n = p.degree();
  const BigReal lead = BigReal::from_mpz(p.leading(), bits);
  auto weierstrass = [&](std::size_t i, const std::vector<CBox>& pts) {
    CBox den{lead, BigReal(bits)};
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) den = den * (pts[i] - pts[j]);
    return eval_box(p, pts[i]) / den;
  };
  // Durand-Kerner sweeps on midpoints.
  for (int sweep = 0; sweep < 200; ++sweep) {
    std::vector<CBox> pts;
    for (const auto& [re, im] : z) pts.push_back(point(re, im, bits));
    double worst = 0;
    try {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CBox w = weierstrass(i, pts);
        z[i].first = (pts[i].re - w.re).mid_q();
        z[i].second = (pts[i].im - w.im).mid_q();
        worst = std::max(worst, modulus(w).upper());
      }
    } catch (const Error&) {
      break;  // coincident approximations; certification below will fail
    }
    if (worst < std::ldexp(1.0, -static_cast<int>(std::min<Precision>(bits, 1000)) + 8)) break;
  }
  DiscSet out;
  std::vector<CBox> pts;
  for (const auto& [re, im] : z) pts.push_back(point(re, im, bits));
  try {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CBox w = weierstrass(i, pts);
      CBox centre = pts[i] - w;
      mpq_class mre = centre.re.mid_q();
      mpq_class mim = centre.im.mid_q();
      BigReal box_r = modulus(centre - point(mre, mim, bits));
      BigReal rad = modulus(w) * BigReal::from_int(n - 1, bits) + box_r;
      out.discs.push_back({mre, mim, rad.upper_q()});
    }
  } catch (const Error&) {
    return out;
  }
  out.isolated = true;
  for (std::size_t i = 0; i < out.discs.size() && out.isolated; ++i) {
    for (std::size_t j = i + 1; j < out.discs.size(); ++j) {
      const auto& a = out.discs[i];
      const auto& b = out.discs[j];
      mpq_class dre = a.re - b.re;
      mpq_class dim = a.im - b.im;
      mpq_class rs = a.radius + b.radius;
      if (dre * dre + dim * dim <= rs * rs) {
        out.isolated = false;
        break;
      }
    }
  }
  return out;
}

bool certainly_nonreal(const RootDisc& d) { return abs(d.im) > d.radius; }

}  // namespace

BigReal RootDisc::modulus_enclosure(Precision bits) const {
  BigReal c = (BigReal::from_mpq(re, bits).square() + BigReal::from_mpq(im, bits).square()).sqrt();
  BigReal r = BigReal::from_mpq(radius, bits);
  BigReal lo = c - r;
  BigReal hi = c + r;
  mpq_class l = lo.lower_q();
  if (l < 0) l = 0;
  return BigReal::from_bounds(l, hi.upper_q(), bits);
}

std::vector<RealRootInterval> isolate_real_root_intervals(const IntPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::Precondition, "zero polynomial");
  if (!is_squarefree(p)) throw Error(ErrorKind::RepeatedRoots, to_string(p));
  std::vector<RealRootInterval> out;
  if (p.degree() == 0) return out;
  const RatPolynomial q = to_rational(p);
  const SturmSequence sturm(q);
  const mpq_class bound = cauchy_bound(q);
  struct Piece {
    mpq_class a, b;
    int count;
  };
  std::vector<Piece> work{{-bound, bound, sturm.count(-bound, bound)}};
  while (!work.empty()) {
    Piece w = work.back();
    work.pop_back();
    if (w.count == 0) continue;
    if (w.count == 1) {
      if (sign_at(p, w.b) == 0) {
        out.push_back({w.b, w.b});
      } else {
        out.push_back({w.a, w.b});
      }
      continue;
    }
    mpq_class m = nonroot_split(p, w.a, w.b);
    work.push_back({w.a, m, sturm.count(w.a, m)});
    work.push_back({m, w.b, sturm.count(m, w.b)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

RealRootInterval refine_root(const IntPolynomial& p, RealRootInterval root, Precision bits) {
  mpq_class target(1);
  target /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(bits));
  while (!root.is_exact() && root.hi - root.lo > target) {
    const int slo = sign_at(p, root.lo);
    mpq_class m = (root.lo + root.hi) / 2;
    const int sm = sign_at(p, m);
    if (sm == 0) {
      root.lo = root.hi = m;
    } else if (sm == slo) {
      root.lo = m;
    } else {
      root.hi = m;
    }
  }
  return root;
}

RootIsolation isolate_real_roots(const IntPolynomial& p, Precision bits) {
  if (p.is_zero()) throw Error(ErrorKind::Precondition, "isolate_real_roots of the zero polynomial");
  RootIsolation out;
  for (const auto& r : isolate_real_root_intervals(p)) out.real_roots.push_back(refine_root(p, r, bits));
  const int n = p.degree();
  if (n == 0) return out;
  const int real_count = static_cast<int>(out.real_roots.size());

  std::vector<std::pair<mpq_class, mpq_class>> z;
  for (const auto& c : aberth_start(p)) z.emplace_back(to_q(c.real()), to_q(c.imag()));

  for (Precision prec = bits; prec <= kMaxPrecision; prec *= 2) {
    DiscSet ds = certified_discs(p, z, prec);
    if (!ds.isolated) continue;
    int nonreal = 0;
    for (const auto& d : ds.discs) nonreal += certainly_nonreal(d) ? 1 : 0;
    if (nonreal != n - real_count) continue;
    out.discs = ds.discs;
    out.precision_used = prec;
    for (const auto& d : ds.discs) {
      if (certainly_nonreal(d) && d.im > 0) out.complex_pairs.push_back({d, d.modulus_enclosure(prec)});
    }
    std::sort(out.complex_pairs.begin(), out.complex_pairs.end(),
              [](const auto& a, const auto& b) { return a.modulus.mid() < b.modulus.mid(); });
    return out;
  }
  throw Error(ErrorKind::PrecisionExhausted, "root discs did not separate for " + to_string(p));
}

namespace {

// Real quadratic or linear factor with interval coefficients (low first).
using IntervalPoly = std::vector<BigReal>;

IntervalPoly multiply(const IntervalPoly& a, const IntervalPoly& b, Precision bits) {
  IntervalPoly r(a.size() + b.size() - 1, BigReal(bits));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

std::vector<mpz_class> positive_divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  if (v > mpz_class("1000000000000")) throw Error(ErrorKind::Unsupported, "leading coefficient too large to factor");
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::optional<IntPolynomial> find_factor(const IntPolynomial& poly) {
  const IntPolynomial p = primitive_part(poly);
  const int n = p.degree();
  if (n <= 1) return std::nullopt;
  if (n > kMaxFactorDegree) throw Error(ErrorKind::Unsupported, "irreducibility test limited to degree 16");
  if (!is_squarefree(p)) {
    RatPolynomial g = gcd(to_rational(p), to_rational(p).derivative());
    return primitive_part(g);
  }
  const RatPolynomial pq = to_rational(p);
  const auto divisors = positive_divisors(p.leading());

  for (Precision prec = kDefaultPrecision; prec <= kMaxPrecision; prec *= 2) {
    RootIsolation iso = isolate_real_roots(p, prec);
    const Precision bits = iso.precision_used;
    struct Unit {
      IntervalPoly factor;
      int degree;
    };
    std::vector<Unit> units;
    for (const auto& r : iso.real_roots) {
      units.push_back({{-r.enclosure(bits), BigReal::from_int(1, bits)}, 1});
    }
    for (const auto& pair : iso.complex_pairs) {
      const auto& d = pair.disc;
      BigReal re = BigReal::from_bounds(d.re - d.radius, d.re + d.radius, bits);
      BigReal im = BigReal::from_bounds(d.im - d.radius, d.im + d.radius, bits);
      units.push_back({{re.square() + im.square(), -(re * BigReal::from_int(2, bits)), BigReal::from_int(1, bits)}, 2});
    }
    bool ambiguous = false;
    const std::size_t count = units.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
      int deg = 0;
      for (std::size_t u = 0; u < count; ++u)
        if (mask & (std::uint64_t{1} << u)) deg += units[u].degree;
      if (deg > n / 2) continue;
      IntervalPoly prod{BigReal::from_int(1, bits)};
      for (std::size_t u = 0; u < count; ++u)
        if (mask & (std::uint64_t{1} << u)) prod = multiply(prod, units[u].factor, bits);
      for (const auto& b : divisors) {
        const BigReal scale = BigReal::from_mpz(b, bits);
        std::vector<mpz_class> coeffs;
        bool rejected = false;
        for (const auto& c : prod) {
          BigReal v = c * scale;
          mpz_class lo;
          mpz_class hi;
          mpq_class lq = v.lower_q();
          mpq_class hq = v.upper_q();
          mpz_cdiv_q(lo.get_mpz_t(), lq.get_num_mpz_t(), lq.get_den_mpz_t());
          mpz_fdiv_q(hi.get_mpz_t(), hq.get_num_mpz_t(), hq.get_den_mpz_t());
          if (lo > hi) {
            rejected = true;
            break;
          }
          if (lo != hi) {
            ambiguous = true;
            rejected = true;
            break;
          }
          coeffs.push_back(lo);
        }
        if (rejected) continue;
        IntPolynomial g(coeffs);
        if (g.degree() >= 1 && divides(to_rational(g), pq)) return primitive_part(g);
      }
    }
    if (!ambiguous) return std::nullopt;
  }
  throw Error(ErrorKind::PrecisionExhausted, "irreducibility test did not resolve");
}

bool is_irreducible(const IntPolynomial& p) { return !find_factor(p).has_value(); }

bool is_self_reciprocal(const IntPolynomial& p) {
  const IntPolynomial r = reversed(p);
  return r == p || r == -p;
}

}  // namespace ssn
