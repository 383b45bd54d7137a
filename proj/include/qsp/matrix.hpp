#pragma once

#include <stdexcept>
#include <vector>

#include "qsp/scalar.hpp"

namespace qsp {

// Dense matrix over Q(v).
class Mat {
 public:
  Mat() : n_(0) {}
  explicit Mat(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Mat scalarMat(int n, const Scalar& c) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  int dim() const { return n_; }
  Scalar& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  const Scalar& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * n_ + c];
  }

  bool isZero() const {
    for (const auto& x : a_)
      if (!x.isZero()) return false;
    return true;
  }
  bool isDiagonal() const {
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (r != c && !(*this)(r, c).isZero()) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    check(o);
    Mat m(n_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    check(o);
    Mat m(n_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
  }
  Mat operator-() const {
    Mat m(n_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
  }
  Mat operator*(const Mat& o) const {
    check(o);
    Mat m(n_);
    for (int r = 0; r < n_; ++r)
      for (int k = 0; k < n_; ++k) {
        const Scalar& x = (*this)(r, k);
        if (x.isZero()) continue;
        for (int c = 0; c < n_; ++c) {
          const Scalar& y = o(k, c);
          if (y.isZero()) continue;
          m(r, c) += x * y;
        }
      }
    return m;
  }
  Mat operator*(const Scalar& c) const {
    Mat m(n_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
    return m;
  }
  bool operator==(const Mat& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  // Gauss-Jordan inverse; throws on singular input.
  Mat inverse() const;

  // Kronecker product (this acts on the first tensor factor).
  Mat kron(const Mat& o) const;

 private:
  void check(const Mat& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Mat: dimension mismatch");
  }
  int n_;
  std::vector<Scalar> a_;
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
// [a, b]_c = ab - c ba
inline Mat qcomm(const Mat& a, const Mat& b, const Scalar& c) {
  return a * b - b * a * c;
}

// Characteristic polynomial over Q of an exact rational matrix
// (Faddeev-LeVerrier); coefficients returned from degree 0 upward.
std::vector<mpq_class> charPolyQ(const std::vector<std::vector<mpq_class>>& m);

}  // namespace qsp
