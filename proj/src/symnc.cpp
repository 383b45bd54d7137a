#include "qsp/symnc.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qsp {

void KMono::add(KFam f, int idx, int exp) {
  if (exp == 0) return;
  for (auto it = e.begin(); it != e.end(); ++it) {
    if (std::get<0>(*it) == f && std::get<1>(*it) == idx) {
      std::get<2>(*it) += exp;
      if (std::get<2>(*it) == 0) e.erase(it);
      return;
    }
  }
  e.emplace_back(f, idx, exp);
  std::sort(e.begin(), e.end());
}

KMono KMono::operator*(const KMono& o) const {
  KMono r = *this;
  for (const auto& [f, i, x] : o.e) r.add(f, i, x);
  return r;
}

KMono KMono::inverse() const {
  KMono r = *this;
  for (auto& [f, i, x] : r.e) x = -x;
  return r;
}

namespace {
Word normalizeWord(Word w) {
  Word out;
  for (auto& a : w) {
    if (a.kind == AtomKind::KMono) {
      if (!out.empty() && out.back().kind == AtomKind::KMono) {
        out.back().k = out.back().k * a.k;
        if (out.back().k.empty()) out.pop_back();
        continue;
      }
      if (a.k.empty()) continue;
    }
    out.push_back(std::move(a));
  }
  return out;
}
}  // namespace

NCPoly NCPoly::word(Word w, Scalar c) {
  NCPoly p;
  p.addTerm(std::move(w), c);
  return p;
}

void NCPoly::addTerm(Word w, const Scalar& c) {
  if (c.isZero()) return;
  Word n = normalizeWord(std::move(w));
  auto it = t_.find(n);
  if (it == t_.end()) {
    t_.emplace(std::move(n), c);
  } else {
    it->second += c;
    if (it->second.isZero()) t_.erase(it);
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.t_) r.addTerm(w, c);
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.t_) r.addTerm(w, -c);
  return r;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly r;
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.addTerm(std::move(w), c1 * c2);
    }
  return r;
}

NCPoly NCPoly::operator*(const Scalar& c) const {
  NCPoly r;
  if (c.isZero()) return r;
  for (const auto& [w, x] : t_) r.t_.emplace(w, x * c);
  return r;
}

namespace {
std::string atomStr(const Atom& a) {
  switch (a.kind) {
    case AtomKind::B: return "B" + std::to_string(a.index);
    case AtomKind::E: return "E" + std::to_string(a.index);
    case AtomKind::F: return "F" + std::to_string(a.index);
    case AtomKind::Y: return "y" + std::to_string(a.index);
    case AtomKind::KMono: {
      std::string s;
      for (const auto& [f, i, x] : a.k.e) {
        s += (f == KFam::KK ? "KK" : f == KFam::KA ? "Ka" : "Kb");
        s += std::to_string(i);
        if (x != 1) s += "^" + std::to_string(x);
        s += ".";
      }
      if (!s.empty()) s.pop_back();
      return s;
    }
  }
  return "?";
}
}  // namespace

std::string NCPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (const auto& a : w) os << "*" << atomStr(a);
  }
  return os.str();
}

NCPoly iterP(const std::vector<NCPoly>& ys) {
  if (ys.empty()) throw std::invalid_argument("iterP: empty list");
  NCPoly acc = ys.back();
  for (auto it = ys.rbegin() + 1; it != ys.rend(); ++it)
    acc = qbracket(*it, acc, Scalar::qpow(1));
  return acc;
}

NCPoly iterPprime(const std::vector<NCPoly>& ys) {
  if (ys.empty()) throw std::invalid_argument("iterPprime: empty list");
  NCPoly acc = ys.front();
  for (auto it = ys.begin() + 1; it != ys.end(); ++it)
    acc = qbracket(acc, *it, Scalar::qpow(1));
  return acc;
}

NCPoly boldP(const NCPoly& x, const NCPoly& y, const NCPoly& z,
             const std::vector<int>& mu) {
  Scalar q = Scalar::qpow(1);
  KMono m;
  for (int j : mu) m.add(KFam::KK, j, 1);
  return qbracket(x, qbracket(y, z, q), q) -
         NCPoly::atom(Atom::Kmono(m)) * z * q;
}

// ---------------------------------------------------------------------------

void CommutationSpec::declare(const Atom& a, const Atom& b) {
  if (a == b) return;
  pairs.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
}

bool CommutationSpec::commute(const Atom& a, const Atom& b) const {
  if (a == b) return true;
  auto p = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  return pairs.count(p) > 0;
}

CommutationSpec CommutationSpec::almostCommuting(int lo, int hi) {
  CommutationSpec s;
  for (int m = lo; m <= hi; ++m)
    for (int n = m + 2; n <= hi; ++n) s.declare(Atom::Y(m), Atom::Y(n));
  return s;
}

Word pcCanonicalWord(const Word& w, const CommutationSpec& comm) {
  Word rest = w;
  Word out;
  out.reserve(w.size());
  while (!rest.empty()) {
    // Positions whose letter commutes with everything before it can be
    // brought to the front; take the least such letter (earliest on ties).
    size_t best = rest.size();
    for (size_t p = 0; p < rest.size(); ++p) {
      bool movable = true;
      for (size_t j = 0; j < p && movable; ++j)
        movable = comm.commute(rest[j], rest[p]);
      if (movable && (best == rest.size() || rest[p] < rest[best])) best = p;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<long>(best));
  }
  return out;
}

NCPoly pcCanonical(const NCPoly& p, const CommutationSpec& comm) {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) r.addTerm(pcCanonicalWord(w, comm), c);
  return r;
}

bool pcEqual(const NCPoly& p, const NCPoly& r, const CommutationSpec& comm) {
  return pcCanonical(p - r, comm).isZero();
}

// ---------------------------------------------------------------------------

BProgPtr BProg::leafAtom(const Atom& a) {
  auto p = std::make_shared<BProg>();
  p->kind = Leaf;
  p->leaf = a;
  return p;
}
BProgPtr BProg::scale(const Scalar& c, BProgPtr x) {
  auto p = std::make_shared<BProg>();
  p->kind = Scale;
  p->scalar = c;
  p->child = {std::move(x)};
  return p;
}
BProgPtr BProg::sum(std::vector<BProgPtr> ps) {
  auto p = std::make_shared<BProg>();
  p->kind = Sum;
  p->child = std::move(ps);
  return p;
}
BProgPtr BProg::mul(std::vector<BProgPtr> ps) {
  auto p = std::make_shared<BProg>();
  p->kind = Mul;
  p->child = std::move(ps);
  return p;
}
BProgPtr BProg::qbr(const Scalar& c, BProgPtr x, BProgPtr y) {
  auto p = std::make_shared<BProg>();
  p->kind = QBr;
  p->scalar = c;
  p->child = {std::move(x), std::move(y)};
  return p;
}
BProgPtr BProg::pfold(std::vector<BProgPtr> ys) {
  if (ys.empty()) throw std::invalid_argument("pfold: empty list");
  auto p = std::make_shared<BProg>();
  p->kind = PFold;
  p->child = std::move(ys);
  return p;
}
BProgPtr BProg::ppfold(std::vector<BProgPtr> ys) {
  if (ys.empty()) throw std::invalid_argument("ppfold: empty list");
  auto p = std::make_shared<BProg>();
  p->kind = PPrimeFold;
  p->child = std::move(ys);
  return p;
}
BProgPtr BProg::boldp(std::vector<int> mu, BProgPtr x, BProgPtr y, BProgPtr z) {
  auto p = std::make_shared<BProg>();
  p->kind = BoldP;
  p->mu = std::move(mu);
  p->child = {std::move(x), std::move(y), std::move(z)};
  return p;
}

std::string BProg::sexpr() const {
  std::ostringstream os;
  switch (kind) {
    case Leaf:
      os << atomStr(leaf);
      break;
    case Scale:
      os << "(scale " << scalar.str() << " " << child[0]->sexpr() << ")";
      break;
    case Sum:
      os << "(+";
      for (const auto& c : child) os << " " << c->sexpr();
      os << ")";
      break;
    case Mul:
      os << "(*";
      for (const auto& c : child) os << " " << c->sexpr();
      os << ")";
      break;
    case QBr:
      os << "(qbr " << scalar.str() << " " << child[0]->sexpr() << " "
         << child[1]->sexpr() << ")";
      break;
    case PFold:
    case PPrimeFold:
      os << (kind == PFold ? "(P" : "(P'");
      for (const auto& c : child) os << " " << c->sexpr();
      os << ")";
      break;
    case BoldP:
      os << "(boldP (mu";
      for (int m : mu) os << " " << m;
      os << ") " << child[0]->sexpr() << " " << child[1]->sexpr() << " "
         << child[2]->sexpr() << ")";
      break;
  }
  return os.str();
}

namespace {
template <class T, class Alg>
T evalProg(const BProgPtr& p, Alg& alg) {
  switch (p->kind) {
    case BProg::Leaf:
      return alg.atom(p->leaf);
    case BProg::Scale:
      return evalProg<T>(p->child[0], alg) * p->scalar;
    case BProg::Sum: {
      T acc = evalProg<T>(p->child[0], alg);
      for (size_t k = 1; k < p->child.size(); ++k)
        acc = acc + evalProg<T>(p->child[k], alg);
      return acc;
    }
    case BProg::Mul: {
      T acc = evalProg<T>(p->child[0], alg);
      for (size_t k = 1; k < p->child.size(); ++k)
        acc = acc * evalProg<T>(p->child[k], alg);
      return acc;
    }
    case BProg::QBr: {
      T x = evalProg<T>(p->child[0], alg);
      T y = evalProg<T>(p->child[1], alg);
      return x * y - y * x * p->scalar;
    }
    case BProg::PFold: {
      T acc = evalProg<T>(p->child.back(), alg);
      Scalar q = Scalar::qpow(1);
      for (size_t k = p->child.size() - 1; k-- > 0;) {
        T y = evalProg<T>(p->child[k], alg);
        acc = y * acc - acc * y * q;
      }
      return acc;
    }
    case BProg::PPrimeFold: {
      T acc = evalProg<T>(p->child.front(), alg);
      Scalar q = Scalar::qpow(1);
      for (size_t k = 1; k < p->child.size(); ++k) {
        T y = evalProg<T>(p->child[k], alg);
        acc = acc * y - y * acc * q;
      }
      return acc;
    }
    case BProg::BoldP: {
      T x = evalProg<T>(p->child[0], alg);
      T y = evalProg<T>(p->child[1], alg);
      T z = evalProg<T>(p->child[2], alg);
      Scalar q = Scalar::qpow(1);
      T inner = y * z - z * y * q;
      KMono m;
      for (int j : p->mu) m.add(KFam::KK, j, 1);
      T kz = alg.atom(Atom::Kmono(m)) * z;
      return (x * inner - inner * x * q) - kz * q;
    }
  }
  throw std::logic_error("evalProg: bad node");
}

struct NCAlg {
  NCPoly atom(const Atom& a) { return NCPoly::atom(a); }
};

struct MatAlg {
  int dim;
  const std::function<Mat(const Atom&)>* img;
  Mat atom(const Atom& a) { return (*img)(a); }
};
}  // namespace

NCPoly evalProgramNC(const BProgPtr& p) {
  NCAlg alg;
  return evalProg<NCPoly>(p, alg);
}

Mat evalProgramMat(const BProgPtr& p, int dim,
                   const std::function<Mat(const Atom&)>& img) {
  MatAlg alg{dim, &img};
  return evalProg<Mat>(p, alg);
}

Mat evalNCPolyMat(const NCPoly& p, int dim,
                  const std::function<Mat(const Atom&)>& img) {
  Mat acc(dim);
  for (const auto& [w, c] : p.terms()) {
    Mat m = Mat::scalarMat(dim, c);
    for (const auto& a : w) m = m * img(a);
    acc = acc + m;
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {
// Descending run from..to (empty when from < to).
void appendDesc(std::vector<BProgPtr>& out, AtomKind kind, int from, int to) {
  for (int j = from; j >= to; --j)
    out.push_back(BProg::leafAtom(Atom{kind, j, {}}));
}
// Ascending run from..to (empty when from > to).
void appendAsc(std::vector<BProgPtr>& out, AtomKind kind, int from, int to) {
  for (int j = from; j <= to; ++j)
    out.push_back(BProg::leafAtom(Atom{kind, j, {}}));
}

// T_{varpi'_i}(B_i) as an explicit polynomial (the braid-compatibility
// lemmas); all four odd/even case families.
BProgPtr tOmegaPrimeB(const SatakeDiagram& d, int i) {
  int N = d.N(), n = d.n();
  auto B = [](int j) { return BProg::leafAtom(Atom::B(j)); };
  if (N == 1) return B(0);
  if (N == 2)
    return BProg::qbr(Scalar::qpow(1), B(i), B(0));
  if (d.odd()) {
    if (i == n) {
      BProgPtr x = B(0);
      for (int k = 1; k <= n - 1; ++k)
        x = BProg::boldp({2 * n - k}, B(2 * n - k), B(k), x);
      return x;
    }
    std::vector<BProgPtr> args;
    if (i < n) {
      appendDesc(args, AtomKind::B, i - 1, 1);
      appendAsc(args, AtomKind::B, i + 1, 2 * n - 1);
    } else {
      appendAsc(args, AtomKind::B, i + 1, 2 * n - 1);
      appendDesc(args, AtomKind::B, i - 1, 1);
    }
    args.push_back(B(0));
    return BProg::pfold(std::move(args));
  }
  // N = 2n even, n >= 2
  if (i == n || i == n + 1) {
    BProgPtr x = B(0);
    for (int k = 1; k <= n - 1; ++k)
      x = BProg::boldp({k}, B(k), B(2 * n + 1 - k), x);
    return BProg::pfold({B(i), x});
  }
  if (i < n) {
    std::vector<BProgPtr> inner;
    appendAsc(inner, AtomKind::B, n + 2, 2 * n);
    inner.push_back(B(0));
    BProgPtr core = BProg::boldp({n}, B(n), B(n + 1), BProg::pfold(std::move(inner)));
    std::vector<BProgPtr> args;
    appendDesc(args, AtomKind::B, i - 1, 1);
    appendAsc(args, AtomKind::B, i + 1, n - 1);
    args.push_back(core);
    return BProg::pfold(std::move(args));
  }
  // i > n + 1
  std::vector<BProgPtr> inner;
  appendDesc(inner, AtomKind::B, n - 1, 1);
  inner.push_back(B(0));
  BProgPtr core = BProg::boldp({n + 1}, B(n + 1), B(n), BProg::pfold(std::move(inner)));
  std::vector<BProgPtr> args;
  appendAsc(args, AtomKind::B, i + 1, 2 * n);
  appendDesc(args, AtomKind::B, i - 1, n + 2);
  args.push_back(core);
  return BProg::pfold(std::move(args));
}

// The Drinfeld-double polynomial T_{omega'_i}(x_i) for x in {F, E}; flat
// P-list (F_{i-1}..F_1, F_{i+1}..F_N, F_0). The E-side picks up the factor
// (-q^-1)^(N-1) from bracket reversal.
BProgPtr tOmegaPrimeFE(const SatakeDiagram& d, int i, AtomKind kind) {
  std::vector<BProgPtr> args;
  appendDesc(args, kind, i - 1, 1);
  appendAsc(args, kind, i + 1, d.N());
  args.push_back(BProg::leafAtom(Atom{kind, 0, {}}));
  BProgPtr p = BProg::pfold(std::move(args));
  if (kind == AtomKind::E)
    p = BProg::scale(Scalar::qpow(1 - d.N(), (d.N() % 2 == 0) ? -1 : 1), p);
  return p;
}
}  // namespace

BProgPtr bracketProgram(const SatakeDiagram& d, ProgKey key, int i) {
  int N = d.N(), n = d.n();
  switch (key) {
    case ProgKey::TomegaPrimeB:
      return tOmegaPrimeB(d, i);
    case ProgKey::TomegaPrimeF:
      return tOmegaPrimeFE(d, i, AtomKind::F);
    case ProgKey::TomegaPrimeE:
      return tOmegaPrimeFE(d, i, AtomKind::E);
    case ProgKey::TthetaInvB0: {
      if (d.odd())
        throw std::invalid_argument("TthetaInvB0: defined for even N only");
      if (n == 1) return BProg::leafAtom(Atom::B(0));
      std::vector<BProgPtr> xs, ys;
      appendAsc(xs, AtomKind::B, n + 2, N);
      appendDesc(ys, AtomKind::B, n - 1, 1);
      std::vector<int> mu;
      for (int j = n + 2; j <= N; ++j) mu.push_back(j);
      return BProg::boldp(std::move(mu), BProg::pfold(std::move(xs)),
                          BProg::pfold(std::move(ys)),
                          BProg::leafAtom(Atom::B(0)));
    }
    case ProgKey::AMinus1: {
      int t = d.tau(i);
      int at = d.aTau(i);
      int oi = d.o(i);
      KMono kdInv;
      for (int j = 0; j <= N; ++j) kdInv.add(KFam::KK, j, -1);
      if (at == 2) {
        // A_{i,-1} = o(i) C^-1 K_i T_{varpi'_i}(B_i), C = (-q)^{N-1} K_delta
        KMono m = kdInv;
        m.add(KFam::KK, i, 1);
        Scalar c = Scalar::qpow(1 - N, (N % 2 == 0) ? -1 : 1) * Scalar(oi);
        return BProg::scale(c, BProg::mul({BProg::leafAtom(Atom::Kmono(m)),
                                           tOmegaPrimeB(d, i)}));
      }
      if (at == 0) {
        KMono m = kdInv;
        m.add(KFam::KK, i, 1);
        Scalar c = Scalar::qpow(3 - N, -oi);
        return BProg::scale(c, BProg::mul({BProg::leafAtom(Atom::Kmono(m)),
                                           tOmegaPrimeB(d, t)}));
      }
      // at == -1: A_{i,-1} = -o(i) q^-N K_delta^-1 T_{varpi'_i}(B_i) K_i
      KMono ki;
      ki.add(KFam::KK, i, 1);
      Scalar c = Scalar::qpow(-N, -oi);
      return BProg::scale(c, BProg::mul({BProg::leafAtom(Atom::Kmono(kdInv)),
                                         tOmegaPrimeB(d, i),
                                         BProg::leafAtom(Atom::Kmono(ki))}));
    }
  }
  throw std::logic_error("bracketProgram: bad key");
}

// ---------------------------------------------------------------------------

NCPoly RelativeBraid::genImageB(int i, int j) const {
  const SatakeDiagram& d = *d_;
  int t = d.tau(i);
  int at = d.aTau(i);
  Scalar q = Scalar::qpow(1);
  auto B = [](int k) { return NCPoly::atom(Atom::B(k)); };
  auto K = [](int k, int e) { return NCPoly::atom(Atom::K(KFam::KK, k, e)); };
  if (at == 2) {
    if (j == i) return K(i, -1) * B(i);
    int a = d.a(i, j);
    if (a == 0) return B(j);
    if (a == -1) return qbracket(B(j), B(i), q);
    throw QspLimitError("braid image unavailable: a(i,j) = -2 (N = 1)");
  }
  if (at == 0) {
    if (j == i || j == t) return -(K(j, -1) * B(d.tau(j)));
    int aij = d.a(i, j), atj = d.a(t, j);
    if (aij == -1 && atj == 0) return qbracket(B(j), B(i), q);
    if (aij == 0 && atj == -1) return qbracket(B(j), B(t), q);
    if (aij == -1 && atj == -1)
      return qbracket(qbracket(B(j), B(i), q), B(t), q) - B(j) * K(i, 1) * q;
    return B(j);
  }
  // at == -1
  if (j == i || j == t) return B(j) * K(d.tau(j), -1) * Scalar::qpow(-2, -1);
  int aij = d.a(i, j), atj = d.a(t, j);
  if (aij == -1 && atj == 0)
    return qbracket(qbracket(B(j), B(i), q), B(t), q) - K(i, 1) * B(j);
  if (aij == 0 && atj == -1)
    return qbracket(qbracket(B(j), B(t), q), B(i), q) - K(t, 1) * B(j);
  if (aij == -1 && atj == -1) {
    NCPoly tti = qbracket(B(t), B(i), q);
    NCPoly inner = qbracket(qbracket(B(j), B(i), q), B(t), Scalar(1));
    return qbracket(inner, tti, Scalar(1)) * q -
           qbracket(B(j), qbracket(B(t), B(i), Scalar::qpow(3)), Scalar(1)) *
               NCPoly::atom(Atom::K(KFam::KK, i, 1)) -
           B(j) * K(i, 1) * K(t, 1) * q;
  }
  return B(j);
}

NCPoly RelativeBraid::genImageK(int i, int j) const {
  const SatakeDiagram& d = *d_;
  int t = d.tau(i);
  int at = d.aTau(i);
  int aij = d.a(i, j), atj = d.a(t, j);
  KMono m;
  m.add(KFam::KK, j, 1);
  Scalar c(1);
  if (at == 2) {
    m.add(KFam::KK, i, -aij);
  } else if (at == 0) {
    m.add(KFam::KK, i, -aij);
    m.add(KFam::KK, t, -atj);
    int e = -aij - atj;
    c = Scalar::qpow(e, (e % 2 == 0) ? 1 : -1);  // (-q)^e
  } else {
    int e = -aij - atj;
    m.add(KFam::KK, i, e);
    m.add(KFam::KK, t, e);
    c = Scalar::qpow(e);
  }
  return NCPoly::atom(Atom::Kmono(m)) * c;
}

NCPoly normalizeKTail(const SatakeDiagram& d, const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word letters;
    KMono tail;
    Scalar coeff = c;
    int qexp = 0;
    for (const auto& a : w) {
      if (a.kind == AtomKind::KMono) {
        tail = tail * a.k;
        continue;
      }
      if (a.kind != AtomKind::B)
        throw std::invalid_argument("normalizeKTail: non-coideal letter");
      // commute the accumulated tail past B_{a.index}
      for (const auto& [f, j, e] : tail.e) {
        if (f != KFam::KK)
          throw std::invalid_argument("normalizeKTail: non-coideal K letter");
        qexp += e * (d.a(d.tau(j), a.index) - d.a(j, a.index));
      }
      letters.push_back(a);
    }
    if (qexp != 0) coeff *= Scalar::qpow(qexp);
    if (!tail.empty()) letters.push_back(Atom::Kmono(tail));
    out.addTerm(std::move(letters), coeff);
  }
  return out;
}

NCPoly RelativeBraid::substitute(
    const NCPoly& p, const std::function<NCPoly(const Atom&)>& img) const {
  NCPoly acc;
  for (const auto& [w, c] : p.terms()) {
    NCPoly t = NCPoly::constant(c);
    for (const auto& a : w) {
      t = t * img(a);
      if (t.termCount() > cap_)
        throw QspLimitError("braid substitution exceeded the term cap");
      t = normalizeKTail(*d_, t);
    }
    acc = acc + t;
    if (acc.termCount() > cap_)
      throw QspLimitError("braid substitution exceeded the term cap");
  }
  return acc;
}

NCPoly RelativeBraid::applyGen(int i, const NCPoly& p) const {
  return substitute(p, [&](const Atom& a) -> NCPoly {
    switch (a.kind) {
      case AtomKind::B:
        return genImageB(i, a.index);
      case AtomKind::KMono: {
        NCPoly acc = NCPoly::constant(Scalar(1));
        for (const auto& [f, idx, e] : a.k.e) {
          if (f != KFam::KK)
            throw std::invalid_argument("braid: non-coideal K letter");
          NCPoly base = genImageK(i, idx);
          NCPoly img = NCPoly::constant(Scalar(1));
          // genImageK output is scalar * K-monomial, so powers invert cleanly.
          const auto& [w0, c0] = *base.terms().begin();
          KMono km = w0.empty() ? KMono{} : w0[0].k;
          Scalar cc = c0.pow(e);
          KMono kk;
          for (const auto& [ff, ii, xx] : km.e) kk.add(ff, ii, xx * e);
          img = NCPoly::atom(Atom::Kmono(kk)) * cc;
          acc = acc * img;
        }
        return acc;
      }
      default:
        throw std::invalid_argument("braid: letter outside coideal alphabet");
    }
  });
}

NCPoly RelativeBraid::applyAut(int p, const NCPoly& x) const {
  int m = d_->N() + 1;
  int s = ((p % m) + m) % m;
  if (s == 0) return x;
  return substitute(x, [&](const Atom& a) -> NCPoly {
    switch (a.kind) {
      case AtomKind::B:
        return NCPoly::atom(Atom::B((a.index + s) % m));
      case AtomKind::KMono: {
        KMono k;
        for (const auto& [f, idx, e] : a.k.e) {
          if (f != KFam::KK)
            throw std::invalid_argument("braid aut: non-coideal K letter");
          k.add(f, (idx + s) % m, e);
        }
        return NCPoly::atom(Atom::Kmono(k));
      }
      default:
        throw std::invalid_argument("braid aut: letter outside coideal alphabet");
    }
  });
}

NCPoly RelativeBraid::sigma(const NCPoly& p) const {
  NCPoly r;
  for (const auto& [w, c] : p.terms()) {
    Word rev;
    rev.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Atom a = *it;
      if (a.kind == AtomKind::KMono) {
        KMono k;
        for (const auto& [f, idx, e] : a.k.e) {
          if (f != KFam::KK)
            throw std::invalid_argument("sigma: non-coideal K letter");
          k.add(f, d_->tau(idx), e);
        }
        a.k = k;
      } else if (a.kind != AtomKind::B) {
        throw std::invalid_argument("sigma: letter outside coideal alphabet");
      }
      rev.push_back(std::move(a));
    }
    r.addTerm(std::move(rev), c);
  }
  return r;
}

NCPoly RelativeBraid::applyGenInverse(int i, const NCPoly& p) const {
  return sigma(applyGen(i, sigma(p)));
}

std::optional<NCPoly> RelativeBraid::genImageBInverse(int i, int j) const {
  if (d_->aTau(i) == -1 && d_->a(i, j) == -1 && d_->a(d_->tau(i), j) == -1)
    return std::nullopt;
  return sigma(genImageB(i, j));
}

NCPoly RelativeBraid::applyWordPower(const RelWeylWord& w, int power,
                                     const NCPoly& p) const {
  NCPoly acc = p;
  int reps = power >= 0 ? power : -power;
  for (int rep = 0; rep < reps; ++rep) {
    if (power > 0) {
      // T_w = T_aut T_{i_1} ... T_{i_k}: apply right-to-left.
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        acc = applyGen(*it, acc);
      acc = applyAut(w.autPow, acc);
    } else {
      acc = applyAut(-w.autPow, acc);
      for (int letter : w.letters) acc = applyGenInverse(letter, acc);
    }
  }
  return acc;
}

}  // namespace qsp
