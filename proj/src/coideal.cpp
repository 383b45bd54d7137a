#include "qsp/coideal.hpp"

#include <sstream>
#include <stdexcept>

namespace qsp {

namespace {
Scalar rho() { return Scalar::qpow(1) - Scalar::qpow(-1); }

Mat serreMat(const Mat& x, const Mat& y, int aij, int dim) {
  switch (aij) {
    case -2:
      return x * x * x * y - x * x * y * x * qint(3) + x * y * x * x * qint(3) -
             y * x * x * x;
    case -1:
      return x * x * y - x * y * x * qint(2) + y * x * x;
    case 0:
      return x * y - y * x;
    default:
      return Mat(dim);
  }
}
}  // namespace

CoidealRep::CoidealRep(RepPtr V, int M, Options opt)
    : V_(std::move(V)), M_(M), opt_(opt) {
  const Rep& R = *V_;
  int N = R.d.N();
  C_ = R.par.C();
  B_.reserve(N + 1);
  for (int i = 0; i <= N; ++i) B_.push_back(atomImage(R, Atom::B(i)));
  am1_.assign(N + 1, std::nullopt);
  h1_.assign(N + 1, std::nullopt);
  a_.assign(N, {});
  for (auto& row : a_) row.assign(M_ + 3, std::nullopt);
  thg_.assign(N + 1, std::nullopt);
  // Consistency of the central value: (-q)^{N-1} K_delta must evaluate to C.
  Mat kdelta = Mat::identity(R.dim);
  for (int i = 0; i <= N; ++i) kdelta = kdelta * KK(i);
  Scalar sign((N - 1) % 2 == 0 ? 1 : -1);
  if (kdelta * (Scalar::qpow(N - 1) * sign) != Mat::scalarMat(R.dim, C_))
    throw std::runtime_error("CoidealRep: (-q)^{N-1} K_delta disagrees with C");
  if (opt_.kolbGate) {
    RelationReport rep = verifyKolb(*this);
    if (!rep.pass)
      throw std::runtime_error("CoidealRep: Kolb gate failed: " + rep.json());
  }
}

const LoopData& CoidealRep::loop() const {
  if (!loop_) loop_.emplace(V_, M_ + 1);
  return *loop_;
}

Mat CoidealRep::KK(int i, int e) const {
  return atomImage(*V_, Atom::K(KFam::KK, i, e));
}

RelationReport verifyKolb(const CoidealRep& cr) {
  const Rep& V = cr.rep();
  int N = V.d.N();
  RelationReport rep;
  Scalar q = Scalar::qpow(1);
  // K-commutation: K_i B_j = q^{-a_ij + a_tau(i),j} B_j K_i.
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      int e = -V.d.a(i, j) + V.d.a(V.d.tau(i), j);
      Mat diff = cr.KK(i) * cr.B(j) - cr.B(j) * cr.KK(i) * Scalar::qpow(e);
      if (!diff.isZero())
        rep.fail("KK-B i=" + std::to_string(i) + " j=" + std::to_string(j), diff);
    }
  // Serre cases.
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      int aij = V.d.a(i, j);
      Mat S = serreMat(cr.B(i), cr.B(j), aij, V.dim);
      Mat rhs(V.dim);
      int t = V.d.tau(i);
      if (aij == -2) {
        rhs = cr.KK(i) * commutator(cr.B(i), cr.B(j)) *
              (-(q.inverse() * qint(2) * qint(2)));
      } else if (t != i && j == t) {
        if (V.d.aTau(i) == 0) {
          rhs = (cr.KK(t) - cr.KK(i)) * rho().inverse();
        } else {
          rhs = (cr.KK(i) * cr.B(i) + cr.B(i) * cr.KK(t)) * (-(q * qint(2)));
        }
      } else if (t == i && aij == -1) {
        rhs = cr.B(j) * cr.KK(i) * (-q.inverse());
      }
      Mat diff = S - rhs;
      if (!diff.isZero())
        rep.fail("kolb-serre i=" + std::to_string(i) + " j=" + std::to_string(j),
                 diff);
    }
  return rep;
}

void CoidealRep::buildAminus1(int i) {
  const Rep& V = *V_;
  auto img = [&](const Atom& a) { return atomImage(V, a); };
  BProgPtr prog = bracketProgram(V.d, ProgKey::AMinus1, i);
  am1_[i] = evalProgramMat(prog, V.dim, img);
}

const Mat& CoidealRep::Aminus1(int i) {
  if (!am1_[i]) buildAminus1(i);
  return *am1_[i];
}

const Mat& CoidealRep::TthetaInvB0() {
  if (!tthetaB0_) {
    auto img = [&](const Atom& a) { return atomImage(*V_, a); };
    tthetaB0_ = evalProgramMat(bracketProgram(V_->d, ProgKey::TthetaInvB0), V_->dim,
                               img);
  }
  return *tthetaB0_;
}

const Mat& CoidealRep::H1(int i) {
  if (h1_[i]) return *h1_[i];
  const Rep& V = *V_;
  int t = V.d.tau(i);
  int at = V.d.aTau(i);
  Scalar q = Scalar::qpow(1);
  Mat h(V.dim);
  if (at == 0) {
    // H_{i,1} = C K_tau(i)^-1 [A_{i,0}, A_{tau(i),-1}]
    h = KK(t, -1) * commutator(B_[i], Aminus1(t)) * C_;
  } else if (at == 2) {
    // H_{n,1} = -C K_n^-1 [A_{n,0}, A_{n,-1}]_{q^2}
    h = KK(i, -1) * qcomm(B_[i], Aminus1(i), Scalar::qpow(2)) * (-C_);
  } else {
    // H_{i,1} = q C K_tau(i)^-1 [A_{i,0}, A_{tau(i),-1}]_{q^-1}
    //           + o(i) q T^-1_{theta_n}(B_0) K_i
    h = KK(t, -1) * qcomm(B_[i], Aminus1(t), q.inverse()) * (q * C_) +
        TthetaInvB0() * KK(i) * (q * Scalar(V.d.o(i)));
  }
  h1_[i] = h;
  return *h1_[i];
}

const Mat& CoidealRep::A(int i, int r) {
  if (r < -1 || r > M_ + 1) throw std::out_of_range("CoidealRep::A: mode range");
  auto& slot = a_[i - 1][r + 1];
  if (slot) return *slot;
  if (r == -1) {
    slot = Aminus1(i);
  } else if (r == 0) {
    slot = B_[i];
  } else {
    // From [H_{i,1}, A_{i,r}] = [2] A_{i,r+1} - [a_tau(i),i] C A_{i,r-1}.
    slot = (commutator(H1(i), A(i, r - 1)) +
            A(i, r - 2) * (qint(V_->d.a(V_->d.tau(i), i)) * C_)) *
           qint(2).inverse();
  }
  return *slot;
}

LSeries<Mat> CoidealRep::Aseries(int i) {
  LSeries<Mat> s(0, M_);
  for (int r = 0; r <= M_; ++r) s.at(r) = A(i, r);
  return s;
}

namespace {
// (1 - C z^2)^{-1} acting on a matrix Laurent window by convolution.
LSeries<Mat> geomCz2(const LSeries<Mat>& x, const Scalar& C, int lo, int hi,
                     int dim) {
  LSeries<Mat> out(lo, hi);
  for (int m = lo; m <= hi; ++m) {
    Mat acc(dim);
    Scalar ck(1);
    for (int k = 0; m - 2 * k >= x.lo(); ++k) {
      if (m - 2 * k <= x.hi()) acc = acc + x.at(m - 2 * k) * ck;
      ck *= C;
    }
    out.at(m) = acc;
  }
  return out;
}
}  // namespace

void CoidealRep::buildTheta(int i) {
  const Rep& V = *V_;
  int dim = V.dim;
  int t = V.d.tau(i);
  int at = V.d.aTau(i);
  Scalar q = Scalar::qpow(1);
  Scalar r = rho();
  // The ladder must reach M+1 so every window below is fully known.
  LSeries<Mat> As(0, M_ + 1);
  for (int k = 0; k <= M_ + 1; ++k) As.at(k) = A(i, k);
  LSeries<Mat> th(0, M_);
  if (at == 0) {
    for (int m = 0; m <= M_; ++m) {
      Mat x = KK(t, -1) * commutator(As.at(m), A(t, 0)) * r;
      if (m == 0) x = x + KK(i) * KK(t, -1);
      th.at(m) = x;
    }
  } else if (at == 2) {
    // inner = z^-1 [A_{i,-1}, A_i(z)]_{q^-2} - q^-2 [A_{i,0}, A_i(z)]_{q^2}
    LSeries<Mat> inner(-1, M_);
    for (int m = -1; m <= M_; ++m) {
      Mat x = qcomm(Aminus1(i), As.at(m + 1), Scalar::qpow(-2));
      if (m >= 0)
        x = x - qcomm(B_[i], As.at(m), Scalar::qpow(2)) * Scalar::qpow(-2);
      inner.at(m) = x;
    }
    // z^2 * inner, then (1 - C z^2)^{-1}, then the constant 1 and prefactor.
    LSeries<Mat> shifted = inner.shifted(2);  // window 1..M+2
    LSeries<Mat> conv = geomCz2(shifted, C_, 0, M_, dim);
    for (int m = 0; m <= M_; ++m) {
      Mat x = KK(i, -1) * conv.at(m) * (Scalar::qpow(2) * r * C_);
      if (m == 0) x = x + Mat::identity(dim);
      th.at(m) = x;
    }
  } else {
    // inner = z^-1 [A_{tau(i),-1}, A_i(z)]_q - q [A_{tau(i),0}, A_i(z)]_{q^-1}
    //   - o(i) q C^-1 K_tau(i) T^-1_{theta_n}(B_0) K_i z^-1
    //   - rho^-1 (C^-1 K_tau(i) z^-2 - K_i)
    LSeries<Mat> inner(-2, M_);
    for (int m = -2; m <= M_; ++m) {
      Mat x(dim);
      if (m + 1 >= 0) x = x + qcomm(Aminus1(t), As.at(m + 1), q);
      if (m >= 0) x = x - qcomm(B_[t], As.at(m), q.inverse()) * q;
      if (m == -1 && !opt_.dropThetaB0Term)
        x = x - KK(t) * TthetaInvB0() * KK(i) * (Scalar(V.d.o(i)) * q / C_);
      if (m == -2) x = x - KK(t) * (r.inverse() / C_);
      if (m == 0) x = x + KK(i) * r.inverse();
      inner.at(m) = x;
    }
    LSeries<Mat> shifted = inner.shifted(2);  // window 0..M+2
    LSeries<Mat> conv = geomCz2(shifted, C_, 0, M_, dim);
    for (int m = 0; m <= M_; ++m) th.at(m) = KK(t, -1) * conv.at(m) * (-(r * C_));
  }
  // Theta-grave has constant term 1 (rho Theta_{i,0}).
  if (th.at(0) != Mat::identity(dim))
    throw std::runtime_error("Theta-grave: constant term is not 1 at i=" +
                             std::to_string(i));
  thg_[i] = th;
  if (at == 0) {
    // Mode cross-check from the A-A relation: Theta_{i,m} =
    // K_tau(i)^-1 [A_{i,m}, A_{tau(i),0}] for m >= 1.
    LSeries<Mat> thPlain = theta(i);
    for (int m = 1; m <= M_; ++m) {
      Mat want = KK(t, -1) * commutator(A(i, m), A(t, 0));
      if (thPlain.at(m) != want)
        throw std::runtime_error("Theta mode cross-check failed at i=" +
                                 std::to_string(i) + " m=" + std::to_string(m));
    }
  }
}

const LSeries<Mat>& CoidealRep::thetaGrave(int i) {
  if (!thg_[i]) buildTheta(i);
  return *thg_[i];
}

LSeries<Mat> CoidealRep::theta(int i) {
  const LSeries<Mat>& th = thetaGrave(i);
  // Theta(z) = Theta-grave(z) (1 - C z^2) / (rho (1 - q^{-a} C z^2)).
  int at = V_->d.aTau(i);
  ScalarSeries numer(M_), denom(M_);
  numer[0] = Scalar(1);
  if (M_ >= 2) numer[2] = -C_;
  denom[0] = rho();
  if (M_ >= 2) denom[2] = -(rho() * Scalar::qpow(-at) * C_);
  ScalarSeries fac = numer * inverseSeries(denom);
  LSeries<Mat> out(0, M_);
  for (int m = 0; m <= M_; ++m) {
    Mat acc(V_->dim);
    for (int k = 0; k <= m; ++k) acc = acc + th.at(m - k) * fac[k];
    out.at(m) = acc;
  }
  return out;
}

namespace {
// One step of a braid-operator composition: a relative generator (possibly
// inverted) or a diagram rotation.
struct ChainStep {
  bool isAut = false;
  int index = 0;  // generator index, or rotation power
  bool inverse = false;
};

// Evaluates compositions T_{c_m} o ... o T_{c_0} (the LAST list entry is
// the outermost operator) of relative braid operators on a representation,
// one level at a time with memoized atom images. Keeps everything at matrix
// size, so long words cost polynomial work instead of the free-algebra
// expansion. Inverse steps use the sigma-conjugate images; the one letter
// without a closed form (the doubly adjacent a = -1 subcase) is obtained by
// solving its defining linear equation exactly.
class BraidChainEval {
 public:
  BraidChainEval(const Rep& V, std::vector<ChainStep> chain)
      : V_(V), br_(V.d, 1u << 30), chain_(std::move(chain)) {
    memo_.resize(chain_.size() + 1);
  }

  Mat image(size_t k, const Atom& a) {
    if (k == chain_.size()) return atomImage(V_, a);
    auto& m = memo_[k];
    auto it = m.find(a);
    if (it != m.end()) return it->second;
    Mat out = compute(k, a);
    m.emplace(a, out);
    return out;
  }

 private:
  Mat evalThrough(size_t k, const NCPoly& p) {
    Mat acc(V_.dim);
    for (const auto& [w, c] : p.terms()) {
      Mat t = Mat::scalarMat(V_.dim, c);
      for (const auto& at : w) t = t * image(k, at);
      acc = acc + t;
    }
    return acc;
  }

  Mat compute(size_t k, const Atom& a) {
    const ChainStep& st = chain_[k];
    if (st.isAut) {
      int p = st.inverse ? -st.index : st.index;
      return evalThrough(k + 1, br_.applyAut(p, NCPoly::atom(a)));
    }
    if (a.kind == AtomKind::KMono) {
      NCPoly img = st.inverse
                       ? br_.sigma(br_.applyGen(st.index,
                                                br_.sigma(NCPoly::atom(a))))
                       : br_.applyGen(st.index, NCPoly::atom(a));
      return evalThrough(k + 1, img);
    }
    if (a.kind != AtomKind::B)
      throw std::invalid_argument("braid chain: non-coideal letter");
    if (!st.inverse) return evalThrough(k + 1, br_.genImageB(st.index, a.index));
    auto closed = br_.genImageBInverse(st.index, a.index);
    if (closed) return evalThrough(k + 1, *closed);
    return solveImplicit(k, st.index, a.index);
  }

  // pi_k(B_j) from pi_k(T_g(B_j)) = pi_{k+1}(B_j): the image polynomial is
  // linear in B_j, all other atoms already have pi_k values.
  Mat solveImplicit(size_t k, int g, int j) {
    int dim = V_.dim;
    NCPoly G = br_.genImageB(g, j);
    Mat rhs = image(k + 1, Atom::B(j));
    // Assemble sum coeff * A X B = rhs with the hole at the B_j slot.
    int n2 = dim * dim;
    std::vector<std::vector<Scalar>> sys(n2, std::vector<Scalar>(n2 + 1));
    for (const auto& [w, c] : G.terms()) {
      Mat left = Mat::scalarMat(dim, c);
      int holes = 0;
      Mat right = Mat::identity(dim);
      bool afterHole = false;
      for (const auto& at : w) {
        if (at.kind == AtomKind::B && at.index == j) {
          ++holes;
          afterHole = true;
          continue;
        }
        Mat m = image(k, at);
        if (afterHole)
          right = right * m;
        else
          left = left * m;
      }
      if (holes != 1)
        throw std::logic_error("braid chain: image not linear in the letter");
      // vec(A X B)_{(r,c)} = sum_{p,q} A(r,p) B(q,c) X(p,q)
      for (int r = 0; r < dim; ++r)
        for (int c2 = 0; c2 < dim; ++c2)
          for (int p = 0; p < dim; ++p) {
            if (left(r, p).isZero()) continue;
            for (int q2 = 0; q2 < dim; ++q2)
              sys[r * dim + c2][p * dim + q2] += left(r, p) * right(q2, c2);
          }
    }
    for (int r = 0; r < dim; ++r)
      for (int c2 = 0; c2 < dim; ++c2) sys[r * dim + c2][n2] = rhs(r, c2);
    // Gaussian elimination; a rank defect means the implicit image is not
    // determined on this module, which we report rather than guess.
    std::vector<int> pivotOfCol(n2, -1);
    int row = 0;
    for (int col = 0; col < n2 && row < n2; ++col) {
      int piv = -1;
      for (int rr = row; rr < n2; ++rr)
        if (!sys[rr][col].isZero()) {
          piv = rr;
          break;
        }
      if (piv < 0) continue;
      std::swap(sys[piv], sys[row]);
      Scalar inv = sys[row][col].inverse();
      for (int cc = col; cc <= n2; ++cc) sys[row][cc] *= inv;
      for (int rr = 0; rr < n2; ++rr) {
        if (rr == row || sys[rr][col].isZero()) continue;
        Scalar f = sys[rr][col];
        for (int cc = col; cc <= n2; ++cc) sys[rr][cc] -= f * sys[row][cc];
      }
      pivotOfCol[col] = row;
      ++row;
    }
    for (int rr = row; rr < n2; ++rr)
      if (!sys[rr][n2].isZero())
        throw std::runtime_error("braid chain: inconsistent inverse system");
    if (row < n2)
      throw std::runtime_error(
          "braid chain: inverse image underdetermined on this module");
    Mat X(dim);
    for (int col = 0; col < n2; ++col)
      X(col / dim, col % dim) = sys[pivotOfCol[col]][n2];
    return X;
  }

  const Rep& V_;
  RelativeBraid br_;
  std::vector<ChainStep> chain_;
  std::vector<std::map<Atom, Mat>> memo_;
};

// Chain for T_w^power, listed innermost-first as BraidChainEval expects.
// T_w = T_aut T_{i_1} ... T_{i_k}, so a positive power lists the letters
// right to left with the rotation last; the inverse reverses that.
std::vector<ChainStep> wordPowerChain(const RelWeylWord& w, int power) {
  std::vector<ChainStep> chain;
  int reps = power >= 0 ? power : -power;
  for (int t = 0; t < reps; ++t) {
    if (power > 0) {
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        chain.push_back({false, *it, false});
      if (w.autPow) chain.push_back({true, w.autPow, false});
    } else {
      if (w.autPow) chain.push_back({true, w.autPow, true});
      for (int letter : w.letters) chain.push_back({false, letter, true});
    }
  }
  return chain;
}
}  // namespace

void CoidealRep::gateInverses() {
  if (inversesGated_) return;
  const Rep& V = *V_;
  if (V.d.N() == 1) {
    // No braid images at a(i,j) = -2; oracleA rejects r > 0 downstream.
    inversesGated_ = true;
    return;
  }
  RelativeBraid br(V.d);
  auto img = [&](const Atom& a) { return atomImage(V, a); };
  for (int g : V.d.orbitReps()) {
    for (int j = 0; j <= V.d.N(); ++j) {
      auto inv = br.genImageBInverse(g, j);
      if (!inv) continue;  // implicit images are definitional solutions
      NCPoly back = br.applyGen(g, *inv);
      if (evalNCPolyMat(back, V.dim, img) != B_[j])
        throw std::runtime_error("inverse braid gate failed at generator " +
                                 std::to_string(g) + ", letter B_" +
                                 std::to_string(j));
    }
  }
  inversesGated_ = true;
}

Mat CoidealRep::oracleA(int i, int r) {
  if (r < -2 || r > 2)
    throw std::out_of_range("oracleA: |r| <= 2 (expression-size budget)");
  const Rep& V = *V_;
  if (V.d.N() == 1 && r > 0)
    throw QspLimitError("oracleA: no inverse braid images at N = 1");
  if (r > 0) gateInverses();
  int rep = std::min(i, V.d.tau(i));
  FundamentalWords fw = fundamentalWeightWord(V.d, rep);
  BraidChainEval chain(V, wordPowerChain(fw.varpi, -r));
  Mat m = chain.image(0, Atom::B(i));
  if ((r % 2 != 0) && V.d.o(i) < 0) m = -m;
  return m;
}

Mat CoidealRep::tVarpiPrimeB(int i) {
  const Rep& V = *V_;
  int rep = std::min(i, V.d.tau(i));
  FundamentalWords fw = fundamentalWeightWord(V.d, rep);
  BraidChainEval chain(V, wordPowerChain(fw.varpiPrime, 1));
  return chain.image(0, Atom::B(i));
}

std::string CoidealRep::lwDump() {
  const Rep& V = *V_;
  std::ostringstream os;
  auto emitMat = [&](const Mat& m) {
    os << "[";
    bool first = true;
    for (int r = 0; r < V.dim; ++r)
      for (int c = 0; c < V.dim; ++c)
        if (!m(r, c).isZero()) {
          if (!first) os << ",";
          first = false;
          os << "[" << r << "," << c << ",\"" << m(r, c).str() << "\"]";
        }
    os << "]";
  };
  os << "{\"N\":" << V.d.N() << ",\"dim\":" << V.dim << ",\"order\":" << M_;
  os << ",\"B\":[";
  for (int i = 0; i <= V.d.N(); ++i) {
    if (i) os << ",";
    emitMat(B_[i]);
  }
  os << "],\"A\":[";
  for (int i = 1; i <= V.d.N(); ++i) {
    if (i > 1) os << ",";
    os << "[";
    for (int r = -1; r <= M_; ++r) {
      if (r > -1) os << ",";
      emitMat(A(i, r));
    }
    os << "]";
  }
  os << "],\"H1\":[";
  for (int i = 1; i <= V.d.N(); ++i) {
    if (i > 1) os << ",";
    emitMat(H1(i));
  }
  os << "],\"Theta\":[";
  for (int i = 1; i <= V.d.N(); ++i) {
    if (i > 1) os << ",";
    os << "[";
    for (int m = 0; m <= M_; ++m) {
      if (m) os << ",";
      emitMat(thetaGrave(i).at(m));
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace qsp
