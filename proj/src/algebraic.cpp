#include "ssn/algebraic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ssn/error.hpp"

namespace ssn {

// ---------------------------------------------------------------------------
// AlgebraicNumber

struct AlgebraicNumber::Cache {
  std::mutex mutex;
  RealRootInterval iso;
};

namespace {

mpq_class pow2(long e) {
  mpq_class r(1);
  if (e >= 0) {
    r = mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(e));
  } else {
    r = mpq_class(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

// Bisection keeps the root: the sign at `lo` is never zero on entry.
void bisect_once(const IntPolynomial& p, RealRootInterval& iso) {
  const mpq_class m = (iso.lo + iso.hi) / 2;
  const int sm = sign_at(p, m);
  if (sm == 0) {
    iso.lo = iso.hi = m;
  } else if (sm == sign_at(p, iso.lo)) {
    iso.lo = m;
  } else {
    iso.hi = m;
  }
}

void refine_to(const IntPolynomial& p, RealRootInterval& iso, const mpq_class& target, Precision bits) {
  while (!iso.is_exact() && iso.hi - iso.lo > target && iso.hi - iso.lo > pow2(-48)) bisect_once(p, iso);
  if (iso.is_exact() || iso.hi - iso.lo <= target) return;

  const Precision prec = bits + 64;
  const IntPolynomial dp = p.derivative();
  mpq_class c = (iso.lo + iso.hi) / 2;
  const double target_d = target.get_d();
  for (int it = 0; it < 200; ++it) {
    BigReal x = BigReal::from_mpq(c, prec);
    BigReal fx = eval_enclosure(p, x);
    BigReal dfx = eval_enclosure(dp, x);
    if (dfx.contains_zero()) break;
    BigReal step = fx / dfx;
    c = (x - step).mid_q();
    if (std::abs(step.mid()) < target_d / 16 || step.upper() - step.lower() > std::abs(step.mid()) * 4) break;
  }
  const mpq_class eps = target / 4;
  const mpq_class lo = c - eps;
  const mpq_class hi = c + eps;
  if (lo >= iso.lo && hi <= iso.hi) {
    const int sl = sign_at(p, lo);
    const int sh = sign_at(p, hi);
    if (sl == 0) {
      iso.lo = iso.hi = lo;
      return;
    }
    if (sh == 0) {
      iso.lo = iso.hi = hi;
      return;
    }
    if (sl != sh) {
      iso.lo = lo;
      iso.hi = hi;
      return;
    }
  }
  while (!iso.is_exact() && iso.hi - iso.lo > target) bisect_once(p, iso);
}

}  // namespace

AlgebraicNumber AlgebraicNumber::from_rational(const mpq_class& value) {
  AlgebraicNumber a;
  a.poly_ = IntPolynomial({-value.get_num(), value.get_den()});
  a.cache_ = std::make_shared<Cache>();
  a.cache_->iso = {value, value};
  return a;
}

AlgebraicNumber AlgebraicNumber::from_isolation(const IntPolynomial& min_poly, const RealRootInterval& root) {
  const IntPolynomial p = primitive_part(min_poly);
  if (p.degree() == 1) return from_rational(mpq_class(-p.coeff(0), p.coeff(1)));
  AlgebraicNumber a;
  a.poly_ = p;
  a.cache_ = std::make_shared<Cache>();
  a.cache_->iso = root;
  return a;
}

AlgebraicNumber AlgebraicNumber::real_root(const IntPolynomial& poly, std::size_t index) {
  const IntPolynomial p = primitive_part(poly);
  if (p.degree() < 1) throw Error(ErrorKind::Precondition, "minimal polynomial must have degree >= 1");
  if (auto f = find_factor(p)) {
    throw Error(ErrorKind::Reducible, to_string(p) + " has factor " + to_string(*f));
  }
  const auto roots = isolate_real_root_intervals(p);
  if (index >= roots.size()) {
    throw Error(ErrorKind::Precondition, to_string(p) + " has only " + std::to_string(roots.size()) + " real roots");
  }
  return from_isolation(p, roots[index]);
}

AlgebraicNumber AlgebraicNumber::largest_real_root(const IntPolynomial& poly) {
  const IntPolynomial p = primitive_part(poly);
  if (p.degree() < 1) throw Error(ErrorKind::Precondition, "minimal polynomial must have degree >= 1");
  const auto roots = isolate_real_root_intervals(p);
  if (roots.empty()) throw Error(ErrorKind::Precondition, to_string(p) + " has no real roots");
  return real_root(p, roots.size() - 1);
}

std::optional<mpq_class> AlgebraicNumber::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return mpq_class(-poly_.coeff(0), poly_.coeff(1));
}

RealRootInterval AlgebraicNumber::isolation() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->iso;
}

BigReal AlgebraicNumber::enclosure(Precision bits) const {
  std::lock_guard lock(cache_->mutex);
  RealRootInterval& iso = cache_->iso;
  const mpq_class mag = std::max(abs(iso.lo), abs(iso.hi));
  const long mag_bits = mag > 1 ? static_cast<long>(mpz_sizeinbase(mpz_class(mag.get_num() / mag.get_den()).get_mpz_t(), 2)) : 0;
  const mpq_class target = pow2(-bits + mag_bits - 1);
  if (!iso.is_exact() && iso.hi - iso.lo > target) refine_to(poly_, iso, target, bits + mag_bits);
  return BigReal::from_bounds(iso.lo, iso.hi, bits + mag_bits + 8);
}

int AlgebraicNumber::compare(const mpq_class& q) const {
  std::lock_guard lock(cache_->mutex);
  const RealRootInterval& iso = cache_->iso;
  if (iso.is_exact()) return cmp(iso.lo, q) > 0 ? 1 : (cmp(iso.lo, q) < 0 ? -1 : 0);
  if (q < iso.lo) return 1;
  if (q > iso.hi) return -1;
  const int sq = sign_at(poly_, q);
  if (sq == 0) return 0;  // only reachable for rational roots, excluded by irreducibility
  return sq == sign_at(poly_, iso.lo) ? 1 : -1;
}

std::string AlgebraicNumber::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (auto q = rational_value()) {
    os << q->get_str();
  } else {
    os << "root of " << to_string(poly_) << " near " << enclosure(64).mid();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(AlgebraicNumber generator, std::string name)
    : generator_(std::move(generator)), name_(std::move(name)), degree_(generator_.degree()) {
  modulus_ = monic(to_rational(generator_.min_poly()));
  if (degree_ == 1) return;
  // theta^d = -sum_{k<d} m_k theta^k, then shift repeatedly.
  std::vector<mpq_class> cur(static_cast<std::size_t>(degree_));
  for (int k = 0; k < degree_; ++k) cur[static_cast<std::size_t>(k)] = -modulus_.coeff(k);
  reductions_.push_back(cur);
  for (int e = degree_ + 1; e <= 2 * degree_ - 2; ++e) {
    std::vector<mpq_class> next(static_cast<std::size_t>(degree_), mpq_class(0));
    const mpq_class top = cur.back();
    for (int k = degree_ - 1; k >= 1; --k) next[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)];
    for (int k = 0; k < degree_; ++k) next[static_cast<std::size_t>(k)] += top * reductions_[0][static_cast<std::size_t>(k)];
    reductions_.push_back(next);
    cur = next;
  }
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q(new NumberField(AlgebraicNumber::from_rational(0), ""));
  return q;
}

FieldPtr NumberField::make(const AlgebraicNumber& generator, std::string name) {
  if (generator.degree() == 1) return rationals();
  return FieldPtr(new NumberField(generator, std::move(name)));
}

FieldPtr NumberField::named(const std::string& raw) {
  static std::mutex mutex;
  static std::map<std::string, FieldPtr> registry;
  const std::string name = raw == "golden" ? "phi" : raw;
  std::lock_guard lock(mutex);
  if (auto it = registry.find(name); it != registry.end()) return it->second;
  std::string poly;
  if (name == "phi") poly = "x^2 - x - 1";
  else if (name == "silver") poly = "x^2 - 2x - 1";
  else if (name == "tribonacci") poly = "x^3 - x^2 - x - 1";
  else if (name == "plastic") poly = "x^3 - x - 1";
  else if (name.rfind("sqrt", 0) == 0 && name.size() > 4 &&
           name.find_first_not_of("0123456789", 4) == std::string::npos) {
    const mpz_class n(name.substr(4));
    if (n < 2 || mpz_perfect_square_p(n.get_mpz_t())) return nullptr;
    poly = "x^2 - " + n.get_str();
  } else {
    return nullptr;
  }
  FieldPtr f = make(AlgebraicNumber::largest_real_root(primitive_part(parse_polynomial(poly))), name);
  registry.emplace(name, f);
  return f;
}

bool NumberField::same_as(const NumberField& other) const {
  if (this == &other) return true;
  if (degree_ != other.degree_) return false;
  if (degree_ == 1) return true;
  if (!(generator_.min_poly() == other.generator_.min_poly())) return false;
  const RealRootInterval a = generator_.isolation();
  const RealRootInterval b = other.generator_.isolation();
  const mpq_class lo = std::max(a.lo, b.lo);
  const mpq_class hi = std::min(a.hi, b.hi);
  if (lo > hi) return false;
  if (sign_at(generator_.min_poly(), lo) == 0) return true;
  return SturmSequence(to_rational(generator_.min_poly())).count(lo, hi) >= 1;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b || b->is_rational()) return a;
  if (a->is_rational()) return b;
  if (a->same_as(*b)) return a;
  throw Error(ErrorKind::IncompatibleFields, "Q(" + a->name() + ") vs Q(" + b->name() + ")");
}

FieldElement promote(const FieldElement& x, const FieldPtr& field) {
  if (x.field_ptr() == field) return x;
  if (x.is_rational()) {
    std::vector<mpq_class> c(static_cast<std::size_t>(field->degree()), mpq_class(0));
    c[0] = x.coefficients()[0];
    return FieldElement(field, std::move(c));
  }
  if (field->same_as(x.field())) return FieldElement(field, x.coefficients());
  throw Error(ErrorKind::IncompatibleFields, "cannot move an element of Q(" + x.field().name() + ") into Q(" + field->name() + ")");
}

FieldElement::FieldElement() : FieldElement(mpq_class(0)) {}
FieldElement::FieldElement(long value) : FieldElement(mpq_class(value)) {}
FieldElement::FieldElement(const mpq_class& value) : field_(NumberField::rationals()), c_{value} {}

FieldElement::FieldElement(FieldPtr field, std::vector<mpq_class> coefficients)
    : field_(std::move(field)), c_(std::move(coefficients)) {
  const auto d = static_cast<std::size_t>(field_->degree());
  if (c_.size() > d) throw Error(ErrorKind::Precondition, "too many coefficients for the field degree");
  c_.resize(d, mpq_class(0));
  for (auto& v : c_) v.canonicalize();
}

FieldElement FieldElement::generator(FieldPtr field) {
  if (field->is_rational()) return FieldElement();
  std::vector<mpq_class> c(static_cast<std::size_t>(field->degree()), mpq_class(0));
  c[1] = 1;
  return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<mpq_class> FieldElement::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

BigReal FieldElement::enclosure(Precision bits) const {
  if (is_rational()) return BigReal::from_mpq(c_[0], bits);
  long coef_bits = 0;
  for (const auto& v : c_) {
    if (v == 0) continue;
    const long b = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2)) + 1;
    coef_bits = std::max(coef_bits, b);
  }
  const double g = std::abs(field_->generator().to_double());
  const long gen_bits = g > 1 ? static_cast<long>(std::ceil(std::log2(g))) * field_->degree() : 0;
  const Precision work = bits + coef_bits + gen_bits + 16;
  const BigReal theta = field_->generator().enclosure(work).with_precision(work);
  BigReal acc(work);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * theta + BigReal::from_mpq(*it, work);
  return acc;
}

int FieldElement::sign() const {
  if (is_rational()) return sgn(c_[0]);
  if (is_zero()) return 0;
  for (Precision bits = 64; bits <= (Precision{1} << 22); bits *= 2) {
    const int s = enclosure(bits).sign();
    if (s != 0) return s;
  }
  throw Error(ErrorKind::PrecisionExhausted, "sign of " + to_string());
}

double FieldElement::to_double() const {
  if (is_rational()) return c_[0].get_d();
  return enclosure(64).mid();
}

mpz_class FieldElement::floor() const {
  if (is_rational()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), c_[0].get_num_mpz_t(), c_[0].get_den_mpz_t());
    return f;
  }
  // An irrational element is never an integer, so refinement terminates.
  for (Precision bits = 64; bits <= (Precision{1} << 22); bits *= 2) {
    if (auto f = enclosure(bits).floor()) return *f;
  }
  throw Error(ErrorKind::PrecisionExhausted, "floor of " + to_string());
}

FieldElement FieldElement::operator-() const {
  std::vector<mpq_class> c = c_;
  for (auto& v : c) v = -v;
  return FieldElement(field_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const FieldPtr f = common_field(a.field_, b.field_);
  FieldElement x = promote(a, f);
  const FieldElement y = promote(b, f);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const FieldPtr f = common_field(a.field_, b.field_);
  if (f->is_rational()) return FieldElement(a.c_[0] * b.c_[0]);
  const FieldElement x = promote(a, f);
  const FieldElement y = promote(b, f);
  const auto d = static_cast<std::size_t>(f->degree());
  std::vector<mpq_class> prod(2 * d - 1, mpq_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (x.c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += x.c_[i] * y.c_[j];
  }
  std::vector<mpq_class> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
  const auto& red = f->reductions();
  for (std::size_t e = d; e < prod.size(); ++e) {
    if (prod[e] == 0) continue;
    for (std::size_t k = 0; k < d; ++k) out[k] += prod[e] * red[e - d][k];
  }
  return FieldElement(f, std::move(out));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::Precondition, "inverse of zero");
  if (is_rational()) return FieldElement(1 / c_[0]);
  // Extended Euclid: s*A + t*M = 1 in Q[x].
  RatPolynomial r0 = field_->modulus();
  RatPolynomial r1(c_);
  RatPolynomial s0;
  RatPolynomial s1 = RatPolynomial::constant(1);
  while (r1.degree() > 0) {
    auto [q, r] = divmod(r0, r1);
    RatPolynomial s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const mpq_class inv = 1 / r1.leading();
  RatPolynomial s = divmod(s1.scaled(inv), field_->modulus()).second;
  return FieldElement(field_, s.coefficients());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = promote(FieldElement(1), field_);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

RatPolynomial FieldElement::minimal_polynomial() const {
  if (is_rational()) return RatPolynomial({-c_[0], mpq_class(1)});
  const int n = field_->degree();
  // Matrix of multiplication by this element in the power basis.
  std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n)));
  FieldElement basis = FieldElement::generator(field_).pow(0);
  const FieldElement theta = FieldElement::generator(field_);
  for (int j = 0; j < n; ++j) {
    const FieldElement col = *this * basis;
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.c_[static_cast<std::size_t>(i)];
    basis = basis * theta;
  }
  // Faddeev-LeVerrier.
  using Mat = std::vector<std::vector<mpq_class>>;
  auto mul = [n](const Mat& x, const Mat& y) {
    Mat r(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n), mpq_class(0)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return r;
  };
  std::vector<mpq_class> coeff(static_cast<std::size_t>(n) + 1, mpq_class(0));
  coeff[static_cast<std::size_t>(n)] = 1;
  Mat m(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n), mpq_class(0)));
  for (int k = 1; k <= n; ++k) {
    Mat am = mul(a, m);
    for (int i = 0; i < n; ++i) am[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += coeff[static_cast<std::size_t>(n - k + 1)];
    m = am;
    Mat t = mul(a, m);
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    coeff[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return squarefree_part(RatPolynomial(coeff));
}

AlgebraicNumber FieldElement::to_algebraic() const {
  if (is_rational()) return AlgebraicNumber::from_rational(c_[0]);
  const IntPolynomial p = primitive_part(minimal_polynomial());
  auto roots = isolate_real_root_intervals(p);
  for (Precision bits = 32;; bits *= 2) {
    const BigReal e = enclosure(bits);
    std::size_t hits = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      roots[i] = refine_root(p, roots[i], bits);
      const BigReal r = roots[i].enclosure(bits + 8);
      if (r.overlaps(e)) {
        ++hits;
        which = i;
      }
    }
    if (hits == 1) return AlgebraicNumber::from_isolation(p, roots[which]);
    if (bits > (Precision{1} << 20)) throw Error(ErrorKind::PrecisionExhausted, "cannot identify root");
  }
}

std::string FieldElement::to_string() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const mpq_class& v = c_[k];
    if (v == 0) continue;
    mpq_class mag = v < 0 ? mpq_class(-v) : v;
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << field_->name();
    if (k > 1) os << "^" << k;
  }
  return first ? "0" : os.str();
}

std::string FieldElement::key() const {
  std::string k = is_rational() ? std::string() : field_->name();
  for (const auto& v : c_) k += ":" + v.get_str();
  return is_rational() ? c_[0].get_str() : k;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExactParser {
 public:
  explicit ExactParser(const std::string& s) : s_(s) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "\"" + s_ + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    skip();
    FieldElement acc;
    if (accept('-')) {
      acc = -term();
    } else {
      accept('+');
      acc = term();
    }
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  FieldElement term() {
    FieldElement acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        FieldElement d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  FieldElement unary() {
    if (accept('-')) return -unary();
    return power();
  }

  FieldElement power() {
    FieldElement base = atom();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      long e = std::stol(s_.substr(start, pos_ - start));
      if (neg) {
        if (base.is_zero()) fail("zero to a negative power");
        e = -e;
      }
      return base.pow(e);
    }
    return base;
  }

  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class v(start == pos_ ? mpz_class(0) : mpz_class(s_.substr(start, pos_ - start)));
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        std::size_t fs = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ > fs) {
          mpz_class scale;
          mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - fs);
          v += mpq_class(mpz_class(s_.substr(fs, pos_ - fs)), scale);
          v.canonicalize();
        }
      }
      return FieldElement(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "sqrt") {
        if (!accept('(')) fail("sqrt expects '('");
        FieldElement arg = expr();
        if (!accept(')')) fail("missing ')'");
        auto q = arg.as_rational();
        if (!q || q->get_den() != 1 || *q < 0) fail("sqrt takes a non-negative integer");
        mpz_class root;
        if (mpz_perfect_square_p(q->get_num_mpz_t())) {
          mpz_sqrt(root.get_mpz_t(), q->get_num_mpz_t());
          return FieldElement(mpq_class(root));
        }
        return FieldElement::generator(NumberField::named("sqrt" + q->get_num().get_str()));
      }
      FieldPtr f = NumberField::named(name);
      if (!f) fail("unknown constant '" + name + "'");
      return FieldElement::generator(f);
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

FieldElement parse_exact(const std::string& text) { return ExactParser(text).parse(); }

// ---------------------------------------------------------------------------
// Pisot test

PisotReport pisot_report(const AlgebraicNumber& x) {
  if (x.compare(mpq_class(1)) <= 0) throw Error(ErrorKind::Precondition, "is_pisot requires x > 1");
  PisotReport rep;
  if (!x.is_algebraic_integer()) {
    rep.reason = "minimal polynomial " + to_string(x.min_poly()) + " is not monic";
    return rep;
  }
  if (x.degree() == 1) {
    rep.pisot = true;
    rep.reason = "integer >= 2";
    return rep;
  }
  if (auto f = find_factor(x.min_poly())) {
    throw Error(ErrorKind::Reducible, to_string(x.min_poly()));
  }
  const RealRootInterval self = x.isolation();
  for (Precision bits = kDefaultPrecision; bits <= (Precision{1} << 14); bits *= 2) {
    RootIsolation iso = isolate_real_roots(x.min_poly(), bits);
    rep.precision_used = iso.precision_used;
    rep.conjugate_moduli.clear();
    bool undecided = false;
    bool too_big = false;
    for (const auto& r : iso.real_roots) {
      if (r.lo <= self.hi && self.lo <= r.hi && x.compare(r.lo) >= 0 && x.compare(r.hi) <= 0) continue;
      BigReal m = r.enclosure(bits).abs();
      rep.conjugate_moduli.push_back(m);
      if (m.upper_q() < 1) continue;
      if (m.lower_q() > 1) too_big = true;
      else undecided = true;
    }
    for (const auto& c : iso.complex_pairs) {
      rep.conjugate_moduli.push_back(c.modulus);
      rep.conjugate_moduli.push_back(c.modulus);
      if (c.modulus.upper_q() < 1) continue;
      if (c.modulus.lower_q() > 1) too_big = true;
      else undecided = true;
    }
    if (too_big) {
      rep.reason = "a conjugate has modulus > 1";
      return rep;
    }
    if (!undecided) {
      rep.pisot = true;
      rep.reason = "all conjugates have modulus < 1";
      return rep;
    }
    // Conjugates on the unit circle force a self-reciprocal minimal polynomial.
    if (is_self_reciprocal(x.min_poly()) && x.degree() > 2) {
      rep.reason = "self-reciprocal minimal polynomial of degree > 2 (conjugate of modulus >= 1)";
      return rep;
    }
  }
  throw Error(ErrorKind::PrecisionExhausted, "Pisot test did not resolve");
}

bool is_pisot(const AlgebraicNumber& x) { return pisot_report(x).pisot; }

}  // namespace ssn
