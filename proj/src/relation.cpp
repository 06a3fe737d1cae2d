#include "ssn/relation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ssn/error.hpp"

namespace ssn {

namespace {

// Pairwise coprime base generated by the inputs, all entries > 1.
std::vector<mpz_class> coprime_base(std::vector<mpz_class> xs) {
  std::vector<mpz_class> base;
  for (auto& x : xs)
    if (x > 1) base.push_back(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < base.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        mpz_class g = gcd(base[i], base[j]);
        if (g == 1) continue;
        std::vector<mpz_class> next;
        for (std::size_t k = 0; k < base.size(); ++k)
          if (k != i && k != j) next.push_back(base[k]);
        for (mpz_class v : {mpz_class(base[i] / g), mpz_class(base[j] / g), g})
          if (v > 1) next.push_back(v);
        base = std::move(next);
        changed = true;
      }
    }
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

std::vector<long> exponents(const mpq_class& x, const std::vector<mpz_class>& base) {
  std::vector<long> e(base.size(), 0);
  mpz_class num = abs(x.get_num());
  mpz_class den = x.get_den();
  for (std::size_t i = 0; i < base.size(); ++i) {
    while (mpz_divisible_p(num.get_mpz_t(), base[i].get_mpz_t())) {
      num /= base[i];
      ++e[i];
    }
    while (mpz_divisible_p(den.get_mpz_t(), base[i].get_mpz_t())) {
      den /= base[i];
      --e[i];
    }
  }
  return e;
}

Relation dependent(long p, long q, std::string evidence) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const long g = std::gcd(std::labs(p), q);
  Relation r;
  r.kind = Relation::Kind::Dependent;
  r.p = p / g;
  r.q = q / g;
  r.evidence = std::move(evidence);
  return r;
}

Relation certified(std::string evidence) {
  Relation r;
  r.kind = Relation::Kind::IndependentCertified;
  r.evidence = std::move(evidence);
  return r;
}

// |a|^q = |b|^p for positive rationals, via exponent vectors over a coprime base.
Relation rational_relation(const mpq_class& a, const mpq_class& b) {
  const auto base = coprime_base({abs(a.get_num()), a.get_den(), abs(b.get_num()), b.get_den()});
  const auto ea = exponents(a, base);
  const auto eb = exponents(b, base);
  std::size_t k = 0;
  while (k < eb.size() && eb[k] == 0) ++k;
  // p/q = ea_k / eb_k
  long p = ea[k];
  long q = eb[k];
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (p == 0) return certified("coprime factorisation: exponent vectors not proportional");
  const long g = std::gcd(std::labs(p), q);
  p /= g;
  q /= g;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (q * ea[i] != p * eb[i]) return certified("coprime factorisation: exponent vectors not proportional");
  }
  return dependent(p, q, "exact factorisation over a coprime base");
}

std::optional<mpq_class> norm_abs(const FieldElement& x) {
  const RatPolynomial m = x.minimal_polynomial();
  mpq_class c = m.coeff(0);
  return abs(c);
}

bool same_algebraic(const FieldElement& x, const FieldElement& y) {
  if (x.is_rational() || y.is_rational()) {
    return x.is_rational() && y.is_rational() && x.coefficients()[0] == y.coefficients()[0];
  }
  const AlgebraicNumber ax = x.to_algebraic();
  const AlgebraicNumber ay = y.to_algebraic();
  if (!(ax.min_poly() == ay.min_poly())) return false;
  const RealRootInterval i = ax.isolation();
  const RealRootInterval j = ay.isolation();
  const mpq_class lo = std::max(i.lo, j.lo);
  const mpq_class hi = std::min(i.hi, j.hi);
  if (lo > hi) return false;
  if (sign_at(ax.min_poly(), lo) == 0) return true;
  return SturmSequence(to_rational(ax.min_poly())).count(lo, hi) >= 1;
}

}  // namespace

std::string to_string(const Relation& r) {
  switch (r.kind) {
    case Relation::Kind::Dependent:
      return "Dependent(" + std::to_string(r.p) + ", " + std::to_string(r.q) + ")";
    case Relation::Kind::IndependentCertified:
      return "IndependentCertified";
    case Relation::Kind::IndependentUpTo:
      return "IndependentUpTo(" + std::to_string(r.bound) + ")";
  }
  return "?";
}

FieldElement as_field_element(const AlgebraicNumber& x) {
  if (auto q = x.rational_value()) return FieldElement(*q);
  return FieldElement::generator(NumberField::make(x, "theta"));
}

Relation multiplicative_relation(const AlgebraicNumber& a, const AlgebraicNumber& b, long search_bound) {
  return multiplicative_relation(as_field_element(a), as_field_element(b), search_bound);
}

Relation multiplicative_relation(const FieldElement& a0, const FieldElement& b0, long search_bound) {
  if (search_bound < 1) throw Error(ErrorKind::Precondition, "search bound must be positive");
  if (a0.is_zero() || b0.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero has no multiplicative relation");
  const FieldElement a = a0.abs();
  const FieldElement b = b0.abs();
  if (a == FieldElement(1) || b == FieldElement(1)) {
    throw Error(ErrorKind::DegenerateInput, "modulus 1 is multiplicatively degenerate");
  }

  if (a.is_rational() && b.is_rational()) return rational_relation(*a.as_rational(), *b.as_rational());

  if (a.is_rational() || b.is_rational()) {
    const bool swap = b.is_rational();
    const FieldElement& r = swap ? b : a;
    const FieldElement& x = swap ? a : b;
    // Some power of x is rational iff its minimal polynomial is x^d - c.
    const RatPolynomial m = x.minimal_polynomial();
    const int d = m.degree();
    for (int k = 1; k < d; ++k) {
      if (m.coeff(k) != 0) return certified("no power of " + x.to_string() + " is rational (minimal polynomial not binomial)");
    }
    const mpq_class c = -m.coeff(0);
    // r^q' = c^p'  <=>  r^q' = x^(d p')
    Relation base = rational_relation(*r.as_rational(), c);
    if (!base.dependent()) {
      base.evidence = x.to_string() + "^" + std::to_string(d) + " = " + c.get_str() + "; " + base.evidence;
      return base;
    }
    long p = base.p * d;
    long q = base.q;
    if (swap) std::swap(p, q);
    return dependent(p, q, "power of " + x.to_string() + " is rational: " + base.evidence);
  }

  // Norm obstruction: a relation forces |N(a)|^(q e) = |N(b)|^(p e') with e, e' > 0.
  const mpq_class na = *norm_abs(a);
  const mpq_class nb = *norm_abs(b);
  if ((na == 1) != (nb == 1)) return certified("exactly one of the norms is a unit");
  if (na != 1 && !rational_relation(na, nb).dependent()) return certified("norms are multiplicatively independent");

  const Precision bits = 192;
  const BigReal la = a.enclosure(bits).log();
  const BigReal lb = b.enclosure(bits).log();
  bool same_field = true;
  try {
    common_field(a.field_ptr(), b.field_ptr());
  } catch (const Error&) {
    same_field = false;
  }
  for (long q = 1; q <= search_bound; ++q) {
    const BigReal target = BigReal::from_int(q, bits) * la / lb;
    const double centre = target.mid();
    for (long p = static_cast<long>(std::floor(centre)) - 1; p <= static_cast<long>(std::ceil(centre)) + 1; ++p) {
      if (p == 0 || std::labs(p) > search_bound || std::gcd(std::labs(p), q) != 1) continue;
      if (!(BigReal::from_int(q, bits) * la - BigReal::from_int(p, bits) * lb).contains_zero()) continue;
      const FieldElement lhs = a.pow(q);
      const FieldElement rhs = b.pow(p);
      const bool equal = same_field ? lhs == rhs : same_algebraic(lhs, rhs);
      if (equal) return dependent(p, q, "exact comparison of |a|^" + std::to_string(q) + " and |b|^" + std::to_string(p));
    }
  }
  Relation r;
  r.kind = Relation::Kind::IndependentUpTo;
  r.bound = search_bound;
  r.evidence = "no relation with |p|, |q| <= " + std::to_string(search_bound);
  return r;
}

}  // namespace ssn
