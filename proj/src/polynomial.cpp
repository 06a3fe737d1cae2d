#include "ssn/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "ssn/error.hpp"

namespace ssn {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return RatPolynomial(std::move(c));
}

mpz_class content(const IntPolynomial& p) {
  mpz_class g = 0;
  for (const auto& v : p.coefficients()) g = gcd(g, v);
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  mpz_class g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<mpz_class> c;
  for (const auto& v : p.coefficients()) c.emplace_back(v / g);
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
  mpz_class den = 1;
  for (const auto& v : p.coefficients()) den = lcm(den, v.get_den());
  std::vector<mpz_class> c;
  for (const auto& v : p.coefficients()) {
    mpq_class s = v * den;
    c.push_back(s.get_num());
  }
  return primitive_part(IntPolynomial(std::move(c)));
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::Precondition, "polynomial division by zero");
  std::vector<mpq_class> rem = a.coefficients();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RatPolynomial(), a};
  std::vector<mpq_class> quo(static_cast<std::size_t>(da - db) + 1, mpq_class(0));
  const mpq_class& lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    mpq_class f = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeff(j);
  }
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

RatPolynomial monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading());
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial x = a;
  RatPolynomial y = b;
  while (!y.is_zero()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    // Keep intermediate sizes in check.
    y = r.is_zero() ? r : monic(r);
  }
  return monic(x);
}

RatPolynomial squarefree_part(const RatPolynomial& p) {
  if (p.degree() <= 0) return monic(p);
  RatPolynomial g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

bool is_squarefree(const IntPolynomial& p) {
  const RatPolynomial q = to_rational(p);
  if (q.degree() <= 0) return true;
  return gcd(q, q.derivative()).degree() == 0;
}

bool divides(const RatPolynomial& d, const RatPolynomial& p) {
  return divmod(p, d).second.is_zero();
}

IntPolynomial reversed(const IntPolynomial& p) {
  std::vector<mpz_class> c(p.coefficients().rbegin(), p.coefficients().rend());
  return IntPolynomial(std::move(c));
}

IntPolynomial negated_argument(const IntPolynomial& p) {
  std::vector<mpz_class> c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPolynomial(std::move(c));
}

int sign_at(const IntPolynomial& p, const mpq_class& x) {
  // Homogenised Horner on num/den keeps everything in Z.
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  mpz_class acc = 0;
  mpz_class den_pow = 1;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * num + (*it) * den_pow;
    den_pow *= den;
  }
  return sgn(acc);
}

BigReal eval_enclosure(const IntPolynomial& p, const BigReal& x) {
  BigReal acc(x.precision());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigReal::from_mpz(*it, x.precision());
  return acc;
}

BigReal eval_enclosure(const RatPolynomial& p, const BigReal& x) {
  BigReal acc(x.precision());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigReal::from_mpq(*it, x.precision());
  return acc;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  RatPolynomial parse() {
    RatPolynomial r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "polynomial \"" + s_ + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RatPolynomial expr() {
    RatPolynomial acc;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        ++pos_;
        sign = -1;
      } else if (!first) {
        break;
      }
      RatPolynomial t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
    }
    return acc;
  }

  RatPolynomial term() {
    RatPolynomial acc = power();
    while (true) {
      skip();
      if (peek('*')) {
        ++pos_;
        acc = acc * power();
      } else if (peek('/')) {
        ++pos_;
        RatPolynomial d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        acc = acc.scaled(1 / d.leading());
      } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(' ||
                                      std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
        acc = acc * power();  // implicit product, e.g. "3x"
      } else {
        break;
      }
    }
    return acc;
  }

  RatPolynomial power() {
    RatPolynomial base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      const long e = std::stol(s_.substr(start, pos_ - start));
      RatPolynomial r = RatPolynomial::constant(1);
      for (long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  RatPolynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      return RatPolynomial::monomial(1);
    }
    if (c == '(') {
      ++pos_;
      RatPolynomial r = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class v(mpz_class(s_.substr(start, pos_ - start)));
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
      return RatPolynomial::constant(v);
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

RatPolynomial parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

namespace {

template <typename C>
std::string format_poly(const Polynomial<C>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    C c = p.coeff(i);
    if (c == 0) continue;
    const bool neg = c < 0;
    C mag = neg ? C(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) {
      os << mag;
      if (i > 0) os << "*";
    }
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace

std::string to_string(const IntPolynomial& p) { return format_poly(p); }
std::string to_string(const RatPolynomial& p) { return format_poly(p); }

SturmSequence::SturmSequence(const RatPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::Precondition, "Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (chain_.back().degree() > 0) {
    auto r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern.
    mpq_class s = r.leading();
    if (s < 0) s = -s;
    chain_.push_back(r.scaled(-1 / s));
  }
}

int SturmSequence::variations(const mpq_class& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::variations_at_infinity(bool positive) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    if (!positive && (q.degree() % 2) == 1) s = -s;
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const mpq_class& a, const mpq_class& b) const {
  return variations(a) - variations(b);
}

int SturmSequence::count_all() const {
  return variations_at_infinity(false) - variations_at_infinity(true);
}

mpq_class cauchy_bound(const RatPolynomial& p) {
  mpq_class m = 0;
  const mpq_class lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    mpq_class r = abs(p.coeff(i)) / lead;
    if (r > m) m = r;
  }
  return 1 + m;
}

}  // namespace ssn
