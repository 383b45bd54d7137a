#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsp {

// Dense integer-coefficient polynomial in the base variable v.
// Invariant: no trailing zero coefficients (zero polynomial <=> c.empty()).
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(long k) { if (k != 0) c_.assign(1, mpz_class(k)); }
  explicit ZPoly(const mpz_class& k) { if (k != 0) c_.assign(1, k); }
  static ZPoly monomial(const mpz_class& coeff, int exp);

  bool isZero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const mpz_class& lc() const { return c_.back(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : mpz_class(0);
  }
  int numTerms() const;
  bool isMonomial() const { return numTerms() == 1; }
  int lowestExp() const;  // exponent of lowest nonzero term; -1 for 0

  ZPoly operator-() const;
  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }
  bool operator!=(const ZPoly& o) const { return c_ != o.c_; }

  ZPoly shiftUp(int k) const;  // multiply by v^k, k >= 0
  mpz_class content() const;   // gcd of coefficients, sign of lc
  ZPoly divExactConst(const mpz_class& d) const;
  // Exact division, asserts divisibility.
  ZPoly divExact(const ZPoly& d) const;
  mpq_class eval(const mpq_class& x) const;

  static ZPoly gcd(ZPoly a, ZPoly b);

  void normalize();
  std::vector<mpz_class>& raw() { return c_; }

 private:
  std::vector<mpz_class> c_;
};

// Element of Q(v), q = v^2. Canonical form: gcd(num, den) = 1 over Z[v]
// (content included), den has positive leading coefficient, den != 0.
class Scalar {
 public:
  Scalar() = default;                       // zero
  Scalar(long k) : num_(k), den_(1) {}      // NOLINT: implicit by design
  Scalar(ZPoly n, ZPoly d);
  explicit Scalar(const ZPoly& n) : num_(n), den_(ZPoly(1)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  // c * v^k, k may be negative.
  static Scalar vpow(int k, const mpz_class& c = 1);
  // c * q^k = c * v^(2k).
  static Scalar qpow(int k, const mpz_class& c = 1) { return vpow(2 * k, c); }
  static Scalar rational(const mpz_class& p, const mpz_class& q);

  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_ == den_; }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(int k) const;

  // Specialization v -> x. Throws if x in {0, 1, -1} (root-of-unity guard)
  // or if the denominator vanishes at x.
  mpq_class specialize(const mpq_class& x) const;

  // Sparse "c*v^k" textual form, e.g. "v^4-2*v^2+1" or "(v^2+1)/v".
  std::string str() const;
  // Accepts the config grammar: integer coefficients, 'v', 'q' (= v^2),
  // '^' with possibly negative exponents, '+'/'-'/'*', and at most one '/'
  // separating numerator and denominator. Returns nullopt on parse errors.
  static std::optional<Scalar> parse(const std::string& text);

 private:
  void canonicalize();
  ZPoly num_;          // zero polynomial for the zero scalar
  ZPoly den_{ZPoly(1)};
};

// [k] = (q^k - q^-k)/(q - q^-1)
Scalar qint(long k);
// [n choose r] Gaussian binomial
Scalar qbinom(long n, long r);

}  // namespace qsp
