#include "qsp/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qsp {

void ZPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::monomial(const mpz_class& coeff, int exp) {
  ZPoly p;
  if (coeff != 0) {
    p.c_.assign(exp + 1, mpz_class(0));
    p.c_[exp] = coeff;
  }
  return p;
}

int ZPoly::numTerms() const {
  int n = 0;
  for (const auto& x : c_)
    if (x != 0) ++n;
  return n;
}

int ZPoly::lowestExp() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return -1;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] += o.c_[i];
  }
  r.normalize();
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (isZero() || o.isZero()) return ZPoly();
  ZPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.normalize();
  return r;
}

ZPoly ZPoly::shiftUp(int k) const {
  if (isZero() || k == 0) return *this;
  ZPoly r;
  r.c_.assign(c_.size() + k, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
  return r;
}

mpz_class ZPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (!c_.empty() && lc() < 0) g = -g;
  return g;  // 0 for the zero polynomial
}

ZPoly ZPoly::divExactConst(const mpz_class& d) const {
  ZPoly r = *this;
  for (auto& x : r.c_) {
    mpz_class rem;
    mpz_fdiv_qr(x.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (rem != 0) throw std::logic_error("ZPoly::divExactConst: not divisible");
  }
  return r;
}

ZPoly ZPoly::divExact(const ZPoly& d) const {
  if (d.isZero()) throw std::logic_error("ZPoly::divExact: zero divisor");
  if (isZero()) return ZPoly();
  // Fraction-free: long division over Q, asserting exactness at the end.
  // Divisor monomial fast path.
  if (d.isMonomial()) {
    int k = d.lowestExp();
    ZPoly r;
    r.c_.assign(c_.size() - k, mpz_class(0));
    for (size_t i = k; i < c_.size(); ++i) {
      mpz_class rem;
      mpz_tdiv_qr(r.c_[i - k].get_mpz_t(), rem.get_mpz_t(), c_[i].get_mpz_t(),
                  d.lc().get_mpz_t());
      if (rem != 0) throw std::logic_error("ZPoly::divExact: not divisible");
      if (i < static_cast<size_t>(k) && c_[i] != 0)
        throw std::logic_error("ZPoly::divExact: not divisible");
    }
    for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
      if (c_[i] != 0) throw std::logic_error("ZPoly::divExact: not divisible");
    r.normalize();
    return r;
  }
  std::vector<mpq_class> rem(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) rem[i] = c_[i];
  int dd = d.degree();
  int qd = degree() - dd;
  if (qd < 0) throw std::logic_error("ZPoly::divExact: degree mismatch");
  std::vector<mpq_class> quo(qd + 1);
  for (int k = qd; k >= 0; --k) {
    mpq_class t = rem[k + dd] / mpq_class(d.lc());
    quo[k] = t;
    if (t != 0)
      for (int j = 0; j <= dd; ++j) rem[k + j] -= t * mpq_class(d.coeff(j));
  }
  for (const auto& x : rem)
    if (x != 0) throw std::logic_error("ZPoly::divExact: nonzero remainder");
  ZPoly r;
  r.c_.resize(qd + 1);
  for (int k = 0; k <= qd; ++k) {
    if (quo[k].get_den() != 1)
      throw std::logic_error("ZPoly::divExact: non-integral quotient");
    r.c_[k] = quo[k].get_num();
  }
  r.normalize();
  return r;
}

mpq_class ZPoly::eval(const mpq_class& x) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + mpq_class(*it);
  return r;
}

namespace {
// Primitive part (content removed, lc > 0).
ZPoly primitive(const ZPoly& p) {
  if (p.isZero()) return p;
  return p.divExactConst(p.content());
}

// Pseudo-remainder of a by b (deg a >= deg b assumed handled by caller).
ZPoly pseudoRem(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  int db = b.degree();
  while (!r.isZero() && r.degree() >= db) {
    int k = r.degree() - db;
    ZPoly t = ZPoly::monomial(r.lc(), k) * b;
    r = r * ZPoly(b.lc()) - t;
  }
  return r;
}
}  // namespace

ZPoly ZPoly::gcd(ZPoly a, ZPoly b) {
  if (a.isZero()) return primitive(b);
  if (b.isZero()) return primitive(a);
  // Monomial fast paths: gcd with a monomial is v^min(lowest exponents)
  // times the integer gcd of contents.
  if (a.isMonomial() || b.isMonomial()) {
    mpz_class g;
    mpz_class ca = a.content(), cb = b.content();
    if (ca < 0) ca = -ca;
    if (cb < 0) cb = -cb;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    int e = std::min(a.lowestExp(), b.lowestExp());
    return ZPoly::monomial(g, e);
  }
  mpz_class ca = a.content(), cb = b.content();
  if (ca < 0) ca = -ca;
  if (cb < 0) cb = -cb;
  mpz_class gi;
  mpz_gcd(gi.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = primitive(a);
  b = primitive(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.isZero()) {
    ZPoly r = primitive(pseudoRem(a, b));
    a = b;
    b = r;
  }
  return primitive(a) * ZPoly(gi);
}

Scalar::Scalar(ZPoly n, ZPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.isZero()) throw std::invalid_argument("Scalar: zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.isZero()) {
    den_ = ZPoly(1);
    return;
  }
  ZPoly g = ZPoly::gcd(num_, den_);
  if (g.degree() > 0 || g.lc() != 1) {
    num_ = num_.divExact(g);
    den_ = den_.divExact(g);
  }
  if (den_.lc() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Scalar Scalar::vpow(int k, const mpz_class& c) {
  if (c == 0) return Scalar();
  if (k >= 0) return Scalar(ZPoly::monomial(c, k), ZPoly(1));
  return Scalar(ZPoly(c), ZPoly::monomial(1, -k));
}

Scalar Scalar::rational(const mpz_class& p, const mpz_class& q) {
  return Scalar(ZPoly(p), ZPoly(q));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  Scalar r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  }
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (isZero() || o.isZero()) return Scalar();
  Scalar r;
  r.num_ = num_ * o.num_;
  r.den_ = den_ * o.den_;
  r.canonicalize();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
  if (isZero()) throw std::domain_error("Scalar::inverse of zero");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.lc() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

Scalar Scalar::pow(int k) const {
  if (k == 0) return Scalar(1);
  Scalar base = k > 0 ? *this : inverse();
  int e = k > 0 ? k : -k;
  Scalar r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base = (e >>= 1) ? base * base : base;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

mpq_class Scalar::specialize(const mpq_class& x) const {
  if (x == 0 || x == 1 || x == -1)
    throw std::domain_error("Scalar::specialize: v must avoid {0, 1, -1}");
  mpq_class d = den_.eval(x);
  if (d == 0) throw std::domain_error("Scalar::specialize: pole at v value");
  return num_.eval(x) / d;
}

namespace {
std::string polyStr(const ZPoly& p) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    mpz_class c = p.coeff(k);
    if (c == 0) continue;
    if (!first)
      os << (c > 0 ? "+" : "-");
    else if (c < 0)
      os << "-";
    first = false;
    mpz_class a = abs(c);
    if (k == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "v";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}
}  // namespace

std::string Scalar::str() const {
  if (den_ == ZPoly(1)) return polyStr(num_);
  std::string n = polyStr(num_);
  std::string d = polyStr(den_);
  if (num_.numTerms() > 1) n = "(" + n + ")";
  if (den_.numTerms() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

namespace {
// Laurent polynomial parser state: exponent -> coefficient.
struct LaurentAcc {
  std::vector<std::pair<int, mpz_class>> terms;
  void add(int e, const mpz_class& c) { terms.emplace_back(e, c); }
};

bool parseLaurent(const std::string& s, size_t& pos, LaurentAcc& acc);

bool parseUInt(const std::string& s, size_t& pos, mpz_class& out) {
  size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos == start) return false;
  out = mpz_class(s.substr(start, pos - start));
  return true;
}

bool parseTerm(const std::string& s, size_t& pos, int sign, LaurentAcc& acc) {
  mpz_class coeff = 1;
  bool haveCoeff = false;
  if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    if (!parseUInt(s, pos, coeff)) return false;
    haveCoeff = true;
  }
  if (pos < s.size() && s[pos] == '*') ++pos;
  int exp = 0;
  bool haveVar = false;
  if (pos < s.size() && (s[pos] == 'v' || s[pos] == 'q')) {
    char var = s[pos++];
    int e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      int esign = 1;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        if (s[pos] == '-') esign = -1;
        ++pos;
      }
      mpz_class eu;
      if (!parseUInt(s, pos, eu)) return false;
      if (!eu.fits_sint_p()) return false;
      e = esign * static_cast<int>(eu.get_si());
    }
    exp = (var == 'q') ? 2 * e : e;
    haveVar = true;
  }
  if (!haveCoeff && !haveVar) return false;
  acc.add(exp, sign * coeff);
  return true;
}

bool parseLaurent(const std::string& s, size_t& pos, LaurentAcc& acc) {
  int sign = 1;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') sign = -1;
    ++pos;
  }
  if (!parseTerm(s, pos, sign, acc)) return false;
  while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    sign = (s[pos] == '-') ? -1 : 1;
    ++pos;
    if (!parseTerm(s, pos, sign, acc)) return false;
  }
  return true;
}

// Converts accumulated Laurent terms into (poly, v^shift).
void laurentToPoly(const LaurentAcc& acc, ZPoly& p, int& shift) {
  int minExp = 0;
  for (const auto& [e, c] : acc.terms) minExp = std::min(minExp, e);
  shift = -minExp;
  int maxExp = 0;
  for (const auto& [e, c] : acc.terms) maxExp = std::max(maxExp, e + shift);
  p = ZPoly();
  p.raw().assign(maxExp + 1, mpz_class(0));
  for (const auto& [e, c] : acc.terms) p.raw()[e + shift] += c;
  p.normalize();
}
}  // namespace

std::optional<Scalar> Scalar::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) return std::nullopt;
  // Split at the top-level '/', allowing parenthesized halves.
  auto stripParens = [](std::string t) {
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')')
      t = t.substr(1, t.size() - 2);
    return t;
  };
  std::string numPart = s, denPart;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      numPart = s.substr(0, i);
      denPart = s.substr(i + 1);
      break;
    }
  }
  numPart = stripParens(numPart);
  denPart = stripParens(denPart);
  LaurentAcc na;
  size_t pos = 0;
  if (!parseLaurent(numPart, pos, na) || pos != numPart.size())
    return std::nullopt;
  ZPoly np;
  int nshift;
  laurentToPoly(na, np, nshift);
  ZPoly dp(1);
  int dshift = 0;
  if (!denPart.empty()) {
    LaurentAcc da;
    pos = 0;
    if (!parseLaurent(denPart, pos, da) || pos != denPart.size())
      return std::nullopt;
    laurentToPoly(da, dp, dshift);
    if (dp.isZero()) return std::nullopt;
  }
  // num/v^nshift over den/v^dshift  ==  num * v^dshift / (den * v^nshift)
  try {
    return Scalar(np.shiftUp(dshift), dp.shiftUp(nshift));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Scalar qint(long k) {
  // [k] = (q^k - q^-k)/(q - q^-1) = q^{k-1} + q^{k-3} + ... + q^{1-k}
  if (k == 0) return Scalar();
  if (k < 0) return -qint(-k);
  Scalar r;
  for (long j = 0; j < k; ++j) r += Scalar::qpow(static_cast<int>(k - 1 - 2 * j));
  return r;
}

Scalar qbinom(long n, long r) {
  if (r < 0 || r > n) return Scalar();
  Scalar num(1), den(1);
  for (long j = 1; j <= r; ++j) {
    num *= qint(n - r + j);
    den *= qint(j);
  }
  return num / den;
}

}  // namespace qsp
