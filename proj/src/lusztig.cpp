#include "qsp/lusztig.hpp"

#include <stdexcept>

namespace qsp {

namespace {
// t_{omega_i}(beta) = beta - (finite part of beta | omega_i) delta.
RootVector translationAct(const SatakeDiagram& d, int i, const RootVector& b) {
  int pair = b.c[i] - b.c[0];
  RootVector r = b;
  for (auto& x : r.c) x -= pair;
  return r;
}
}  // namespace

AffineWord translationWord(const SatakeDiagram& d, int i) {
  int m = d.N() + 1;
  // Track the action of the residual element w = t_{omega_i} s_{j_1} ...
  // on the simple roots; peel descents until only a diagram rotation is left.
  std::vector<RootVector> cols;  // images of the simple roots under w
  for (int j = 0; j < m; ++j)
    cols.push_back(translationAct(d, i, RootVector::simple(m, j)));
  AffineWord out;
  std::vector<int> suffix;
  auto isNeg = [](const RootVector& r) { return r.allNonpos() && !r.isZero(); };
  for (;;) {
    int desc = -1;
    for (int j = 0; j < m; ++j)
      if (isNeg(cols[j])) {
        desc = j;
        break;
      }
    if (desc < 0) break;
    suffix.push_back(desc);
    // w <- w s_desc: new column images are w(s_desc(alpha_j)).
    std::vector<RootVector> next;
    for (int j = 0; j < m; ++j) {
      RootVector sj = simpleReflect(d, desc, RootVector::simple(m, j));
      RootVector img(m);
      for (int k = 0; k < m; ++k)
        for (int t = 0; t < m; ++t) img.c[t] += sj.c[k] * cols[k].c[t];
      next.push_back(img);
    }
    cols = next;
  }
  // The residue must be a diagram rotation.
  int p = -1;
  for (int cand = 0; cand < m; ++cand) {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j)
      ok = (cols[j] == RootVector::simple(m, (j + cand) % m));
    if (ok) {
      p = cand;
      break;
    }
  }
  if (p < 0)
    throw std::logic_error("translationWord: residue is not a diagram rotation");
  out.autPow = p;
  out.letters.assign(suffix.rbegin(), suffix.rend());
  return out;
}

NCPoly lusztigGenImage(const SatakeDiagram& d, int j, const Atom& at) {
  Scalar q = Scalar::qpow(1);
  auto E = [](int k) { return NCPoly::atom(Atom::E(k)); };
  auto F = [](int k) { return NCPoly::atom(Atom::F(k)); };
  switch (at.kind) {
    case AtomKind::E: {
      int k = at.index;
      if (k == j) return -(F(j) * NCPoly::atom(Atom::K(KFam::KB, j, -1)));
      switch (d.a(j, k)) {
        case 0:
          return E(k);
        case -1:
          return qbracket(E(j), E(k), q.inverse());
        case -2:
          return E(j) * E(j) * E(k) * qint(2).inverse() -
                 E(j) * E(k) * E(j) * q.inverse() +
                 E(k) * E(j) * E(j) * (qint(2).inverse() * Scalar::qpow(-2));
        default:
          throw std::logic_error("lusztigGenImage: bad Cartan entry");
      }
    }
    case AtomKind::F: {
      int k = at.index;
      if (k == j) return -(NCPoly::atom(Atom::K(KFam::KA, j, -1)) * E(j));
      switch (d.a(j, k)) {
        case 0:
          return F(k);
        case -1:
          return qbracket(F(k), F(j), q);
        case -2:
          return F(k) * F(j) * F(j) * qint(2).inverse() -
                 F(j) * F(k) * F(j) * q +
                 F(j) * F(j) * F(k) * (qint(2).inverse() * Scalar::qpow(2));
        default:
          throw std::logic_error("lusztigGenImage: bad Cartan entry");
      }
    }
    case AtomKind::KMono: {
      KMono m;
      for (const auto& [f, idx, e] : at.k.e) {
        if (f == KFam::KK)
          throw std::invalid_argument("lusztigGenImage: coideal K letter");
        m.add(f, idx, e);
        m.add(f, j, -d.a(j, idx) * e);
      }
      return NCPoly::atom(Atom::Kmono(m));
    }
    default:
      throw std::invalid_argument("lusztigGenImage: unsupported letter");
  }
}

namespace {
NCPoly lusztigAut(const SatakeDiagram& d, int p, const NCPoly& x) {
  int m = d.N() + 1;
  int s = ((p % m) + m) % m;
  if (s == 0) return x;
  NCPoly r;
  for (const auto& [w, c] : x.terms()) {
    Word nw;
    nw.reserve(w.size());
    for (Atom a : w) {
      if (a.kind == AtomKind::KMono) {
        KMono k;
        for (const auto& [f, idx, e] : a.k.e) k.add(f, (idx + s) % m, e);
        a.k = k;
      } else {
        a.index = (a.index + s) % m;
      }
      nw.push_back(a);
    }
    r.addTerm(nw, c);
  }
  return r;
}

NCPoly applyGenUu(const SatakeDiagram& d, int j, const NCPoly& p) {
  NCPoly acc;
  for (const auto& [w, c] : p.terms()) {
    NCPoly t = NCPoly::constant(c);
    for (const auto& a : w) t = t * lusztigGenImage(d, j, a);
    acc = acc + t;
  }
  return acc;
}
}  // namespace

NCPoly lusztigApply(const SatakeDiagram& d, const AffineWord& w, const NCPoly& p) {
  NCPoly acc = p;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    acc = applyGenUu(d, *it, acc);
  return lusztigAut(d, w.autPow, acc);
}

}  // namespace qsp
