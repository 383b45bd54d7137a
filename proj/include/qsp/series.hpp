#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsp/scalar.hpp"

namespace qsp {

// Truncated power series in z over a ring R, modes 0..order.
// R needs: default ctor (= zero), +, -, *, ==.
template <class R>
class TruncSeries {
 public:
  TruncSeries() : order_(0), c_(1) {}
  explicit TruncSeries(int order) : order_(order), c_(order + 1) {
    if (order < 0) throw std::invalid_argument("TruncSeries: order < 0");
  }
  TruncSeries(int order, std::vector<R> coeffs) : order_(order), c_(std::move(coeffs)) {
    c_.resize(order + 1);
  }
  static TruncSeries constant(int order, const R& c) {
    TruncSeries s(order);
    s.c_[0] = c;
    return s;
  }

  int order() const { return order_; }
  const R& operator[](int k) const { return c_.at(k); }
  R& operator[](int k) { return c_.at(k); }
  const std::vector<R>& coeffs() const { return c_; }

  TruncSeries truncated(int m) const {
    TruncSeries s(m);
    for (int k = 0; k <= std::min(m, order_); ++k) s.c_[k] = c_[k];
    return s;
  }

  TruncSeries operator-() const {
    TruncSeries s(order_);
    for (int k = 0; k <= order_; ++k) s.c_[k] = R() - c_[k];
    return s;
  }
  TruncSeries operator+(const TruncSeries& o) const {
    int m = std::min(order_, o.order_);
    TruncSeries s(m);
    for (int k = 0; k <= m; ++k) s.c_[k] = c_[k] + o.c_[k];
    return s;
  }
  TruncSeries operator-(const TruncSeries& o) const {
    int m = std::min(order_, o.order_);
    TruncSeries s(m);
    for (int k = 0; k <= m; ++k) s.c_[k] = c_[k] - o.c_[k];
    return s;
  }
  TruncSeries operator*(const TruncSeries& o) const {
    int m = std::min(order_, o.order_);
    TruncSeries s(m);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j) s.c_[i + j] = s.c_[i + j] + c_[i] * o.c_[j];
    return s;
  }
  bool operator==(const TruncSeries& o) const {
    if (order_ != o.order_) return false;
    for (int k = 0; k <= order_; ++k)
      if (!(c_[k] == o.c_[k])) return false;
    return true;
  }

  // z^k * this, dropping modes beyond the order.
  TruncSeries shifted(int k) const {
    TruncSeries s(order_);
    for (int j = 0; j + k <= order_; ++j)
      if (j + k >= 0) s.c_[j + k] = c_[j];
    return s;
  }

  // Substitution z -> a*z for a scalar-multipliable R.
  template <class S>
  TruncSeries scaledArg(const S& a) const {
    TruncSeries s(order_);
    S p = a;  // a^k
    s.c_[0] = c_[0];
    for (int k = 1; k <= order_; ++k) {
      s.c_[k] = c_[k] * p;
      p = p * a;
    }
    return s;
  }

  // Multiplicative inverse; `invUnit` inverts the constant term in R.
  TruncSeries inverse(const std::function<R(const R&)>& invUnit) const {
    TruncSeries s(order_);
    R u = invUnit(c_[0]);
    s.c_[0] = u;
    for (int k = 1; k <= order_; ++k) {
      R acc;  // zero
      for (int j = 1; j <= k; ++j) acc = acc + c_[j] * s.c_[k - j];
      s.c_[k] = R() - u * acc;
    }
    return s;
  }

 private:
  int order_;
  std::vector<R> c_;
};

using ScalarSeries = TruncSeries<Scalar>;

inline ScalarSeries inverseSeries(const ScalarSeries& s) {
  return s.inverse([](const Scalar& c) { return c.inverse(); });
}

// exp of a series with zero constant term; coefficients must commute
// pairwise (Scalar always does; callers with operator coefficients must
// guarantee it).
template <class R>
TruncSeries<R> seriesExpZeroConst(const TruncSeries<R>& s, const R& one) {
  if (!(s[0] == R()))
    throw std::invalid_argument("seriesExpZeroConst: nonzero constant term");
  int m = s.order();
  TruncSeries<R> r(m);
  r[0] = one;
  // exp(s) via f' = s' f: k f_k = sum_{j=1..k} j s_j f_{k-j}
  for (int k = 1; k <= m; ++k) {
    R acc;
    for (int j = 1; j <= k; ++j) acc = acc + s[j] * Scalar(j) * r[k - j];
    r[k] = acc * Scalar::rational(1, k);
  }
  return r;
}

// log of a series with constant term `one`; same commutativity caveat.
template <class R>
TruncSeries<R> seriesLogUnitConst(const TruncSeries<R>& s, const R& one) {
  if (!(s[0] == one))
    throw std::invalid_argument("seriesLogUnitConst: constant term != 1");
  int m = s.order();
  TruncSeries<R> r(m);
  // log(s): k s_k = sum_{j=1..k} j r_j s_{k-j}
  for (int k = 1; k <= m; ++k) {
    R acc = s[k] * Scalar(k);
    for (int j = 1; j < k; ++j) acc = acc - r[j] * Scalar(j) * s[k - j];
    r[k] = acc * Scalar::rational(1, k);
  }
  return r;
}

// Laurent window [lo..hi] of z-modes over R; used for the assemblies whose
// intermediate expressions carry z^-1 and z^-2 terms.
template <class R>
class LSeries {
 public:
  LSeries() : lo_(0) {}
  LSeries(int lo, int hi) : lo_(lo), c_(hi - lo + 1) {
    if (hi < lo) throw std::invalid_argument("LSeries: empty window");
  }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  bool inWindow(int k) const { return k >= lo() && k <= hi(); }
  const R& at(int k) const { return c_.at(k - lo_); }
  R& at(int k) { return c_.at(k - lo_); }

  LSeries operator+(const LSeries& o) const {
    LSeries s(std::max(lo(), o.lo()), std::min(hi(), o.hi()));
    for (int k = s.lo(); k <= s.hi(); ++k) s.at(k) = at(k) + o.at(k);
    return s;
  }
  LSeries operator-(const LSeries& o) const {
    LSeries s(std::max(lo(), o.lo()), std::min(hi(), o.hi()));
    for (int k = s.lo(); k <= s.hi(); ++k) s.at(k) = at(k) - o.at(k);
    return s;
  }

  // Product, keeping only the window where every contribution is known:
  // mode k needs all splits k = a + b with a, b in the factors' windows.
  LSeries operator*(const LSeries& o) const {
    LSeries s(lo() + o.lo(), hi() + o.lo() < lo() + o.hi() ? hi() + o.lo()
                                                           : lo() + o.hi());
    for (int k = s.lo(); k <= s.hi(); ++k) {
      R acc;
      for (int a = lo(); a <= hi(); ++a) {
        int b = k - a;
        if (b < o.lo() || b > o.hi()) continue;
        acc = acc + at(a) * o.at(b);
      }
      s.at(k) = acc;
    }
    return s;
  }

  LSeries shifted(int d) const {
    LSeries s = *this;
    s.lo_ += d;
    return s;
  }

  template <class S>
  LSeries scaled(const S& a) const {
    LSeries s = *this;
    for (auto& x : s.c_) x = x * a;
    return s;
  }

 private:
  int lo_;
  std::vector<R> c_;
};

// Pade fit: find (Nm, Dn), deg Nm <= p, deg Dn <= d, Dn(0) = 1, with
// Nm/Dn = s mod z^{p+d+1}. Returns nullopt when the linear system for the
// denominator is inconsistent.
std::optional<std::pair<std::vector<Scalar>, std::vector<Scalar>>> fitRational(
    const ScalarSeries& s, int p, int d);

}  // namespace qsp
