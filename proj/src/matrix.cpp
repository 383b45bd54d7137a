#include "qsp/matrix.hpp"

#include "qsp/series.hpp"

namespace qsp {

Mat Mat::inverse() const {
  int n = n_;
  Mat a = *this;
  Mat inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).isZero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("Mat::inverse: singular matrix");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    Scalar d = a(col, col).inverse();
    for (int c = 0; c < n; ++c) {
      a(col, c) *= d;
      inv(col, c) *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).isZero()) continue;
      Scalar f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Mat Mat::kron(const Mat& o) const {
  Mat m(n_ * o.n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      if ((*this)(r, c).isZero()) continue;
      for (int s = 0; s < o.n_; ++s)
        for (int t = 0; t < o.n_; ++t) {
          if (o(s, t).isZero()) continue;
          m(r * o.n_ + s, c * o.n_ + t) = (*this)(r, c) * o(s, t);
        }
    }
  return m;
}

std::vector<mpq_class> charPolyQ(const std::vector<std::vector<mpq_class>>& m) {
  int n = static_cast<int>(m.size());
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(M_1),
  // M_{k+1} = A (M_k + c_{n-k} I), c_{n-k-1} = -tr(M_{k+1})/(k+1).
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> mk(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i) mk[i] = m[i];
  for (int k = 1; k <= n; ++k) {
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / k;
    if (k == n) break;
    for (int i = 0; i < n; ++i) mk[i][i] += c[n - k];
    std::vector<std::vector<mpq_class>> next(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (m[i][l] == 0) continue;
        for (int j = 0; j < n; ++j) next[i][j] += m[i][l] * mk[l][j];
      }
    mk = std::move(next);
  }
  return c;
}

std::optional<std::pair<std::vector<Scalar>, std::vector<Scalar>>> fitRational(
    const ScalarSeries& s, int p, int d) {
  if (p + d + 1 > s.order() + 1)
    throw std::invalid_argument("fitRational: series order too small");
  // Unknown denominator D = 1 + d_1 z + ... + d_d z^d from the linear system
  // sum_j D_j s_{k-j} = 0 for k = p+1 .. p+d, then N = (D*s) mod z^{p+1}.
  int n = d;
  std::vector<std::vector<Scalar>> A(n, std::vector<Scalar>(n + 1));
  for (int row = 0; row < n; ++row) {
    int k = p + 1 + row;
    for (int j = 1; j <= d; ++j)
      A[row][j - 1] = (k - j >= 0) ? s[k - j] : Scalar();
    A[row][n] = -s[k];
  }
  // Gaussian elimination with free variables set to zero; afterwards verify.
  std::vector<int> pivotCol(n, -1);
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int rr = r; rr < n; ++rr)
      if (!A[rr][c].isZero()) {
        piv = rr;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[r]);
    Scalar inv = A[r][c].inverse();
    for (int cc = c; cc <= n; ++cc) A[r][cc] *= inv;
    for (int rr = 0; rr < n; ++rr) {
      if (rr == r || A[rr][c].isZero()) continue;
      Scalar f = A[rr][c];
      for (int cc = c; cc <= n; ++cc) A[rr][cc] -= f * A[r][cc];
    }
    pivotCol[r] = c;
    ++r;
  }
  for (int rr = r; rr < n; ++rr)
    if (!A[rr][n].isZero()) return std::nullopt;
  std::vector<Scalar> den(d + 1);
  den[0] = Scalar(1);
  for (int rr = 0; rr < r; ++rr) den[pivotCol[rr] + 1] = A[rr][n];
  ScalarSeries denS(s.order());
  for (int j = 0; j <= d; ++j) denS[j] = den[j];
  ScalarSeries prod = denS * s;
  std::vector<Scalar> num(p + 1);
  for (int j = 0; j <= p; ++j) num[j] = prod[j];
  // The defect rows may still be violated when rank < d; verify the congruence.
  for (int k = p + 1; k <= p + d && k <= s.order(); ++k)
    if (!prod[k].isZero()) return std::nullopt;
  while (num.size() > 1 && num.back().isZero()) num.pop_back();
  std::vector<Scalar> denTrim = den;
  while (denTrim.size() > 1 && denTrim.back().isZero()) denTrim.pop_back();
  return std::make_pair(num, denTrim);
}

}  // namespace qsp
