#include "qsp/rootdata.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsp {

SatakeDiagram::SatakeDiagram(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("SatakeDiagram: N must be >= 1");
}

int SatakeDiagram::tau(int i) const {
  if (i == 0) return 0;
  return N_ + 1 - i;
}

int SatakeDiagram::a(int i, int j) const {
  if (i == j) return 2;
  if (N_ == 1) return -2;
  int diff = (i - j) % (N_ + 1);
  if (diff < 0) diff += N_ + 1;
  return (diff == 1 || diff == N_) ? -1 : 0;
}

std::vector<int> SatakeDiagram::orbitReps() const {
  std::vector<int> r;
  for (int i = 0; i <= n(); ++i) r.push_back(i);
  return r;
}

std::vector<int> SatakeDiagram::orbitRepsFinite() const {
  std::vector<int> r;
  for (int i = 1; i <= n(); ++i) r.push_back(i);
  return r;
}

std::vector<int> relativeSimple(const SatakeDiagram& d, int i) {
  int t = d.tau(i);
  switch (d.a(i, t)) {
    case 2:
      return {i};
    case 0:
      return {i, t};
    case -1:
      return {i, t, i};
    default:
      throw std::logic_error("relativeSimple: unexpected a(i,tau(i))");
  }
}

std::vector<int> expandWord(const SatakeDiagram& d, const RelWeylWord& w) {
  std::vector<int> s;
  for (int r : w.letters) {
    auto e = relativeSimple(d, r);
    s.insert(s.end(), e.begin(), e.end());
  }
  return s;
}

RootVector simpleReflect(const SatakeDiagram& d, int j, const RootVector& b) {
  // s_j(b) = b - <b, alpha_j^vee> alpha_j, <alpha_i, alpha_j^vee> = a(j, i)
  int pairing = 0;
  for (int i = 0; i <= d.N(); ++i) pairing += d.a(j, i) * b.c[i];
  RootVector r = b;
  r.c[j] -= pairing;
  return r;
}

RootVector rotateRoot(const SatakeDiagram& d, int p, const RootVector& b) {
  int m = d.N() + 1;
  RootVector r(m);
  for (int i = 0; i < m; ++i) r.c[(i + p) % m] = b.c[i];
  return r;
}

RootVector weylAct(const SatakeDiagram& d, const RelWeylWord& w,
                   const RootVector& b) {
  auto s = expandWord(d, w);
  RootVector r = b;
  for (auto it = s.rbegin(); it != s.rend(); ++it) r = simpleReflect(d, *it, r);
  if (w.autPow % (d.N() + 1) != 0)
    r = rotateRoot(d, ((w.autPow % (d.N() + 1)) + d.N() + 1) % (d.N() + 1), r);
  return r;
}

long inversionCount(const SatakeDiagram& d, const RelWeylWord& w) {
  auto s = expandWord(d, w);
  int m = d.N() + 1;
  // Positive real roots: alpha + k delta with alpha finite, k >= 0, and
  // alpha > 0 when k = 0. Finite roots of A_N: sums alpha_a + .. + alpha_b.
  std::vector<RootVector> finitePos;
  for (int a = 1; a <= d.N(); ++a)
    for (int b = a; b <= d.N(); ++b) {
      RootVector r(m);
      for (int i = a; i <= b; ++i) r.c[i] = 1;
      finitePos.push_back(r);
    }
  auto act = [&](const RootVector& b) {
    RootVector r = b;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      r = simpleReflect(d, *it, r);
    return r;
  };
  long K = static_cast<long>(s.size()) + 2;
  long count = 0;
  bool sawAtMax = false;
  for (long k = 0; k <= K; ++k) {
    for (const auto& fp : finitePos) {
      for (int sign = 0; sign < 2; ++sign) {
        if (k == 0 && sign == 1) continue;
        RootVector beta(m);
        for (int i = 0; i < m; ++i)
          beta.c[i] = (sign ? -fp.c[i] : fp.c[i]) + static_cast<int>(k);
        RootVector img = act(beta);
        if (img.allNonpos() && !img.isZero()) {
          ++count;
          if (k == K) sawAtMax = true;
        }
      }
    }
  }
  if (sawAtMax)
    throw std::logic_error("inversionCount: root-height bound exceeded");
  return count;
}

namespace {
// [a,b] = r_a r_{a+1} .. r_b for a <= b, r_a r_{a-1} .. r_b for a > b.
void appendRange(std::vector<int>& w, int a, int b) {
  if (a <= b)
    for (int k = a; k <= b; ++k) w.push_back(k);
  else
    for (int k = a; k >= b; --k) w.push_back(k);
}

// Checks that the word acts as the translation by varpi_i, i.e.
// beta |-> beta - (beta | varpi_i) delta on the affine root lattice.
// (alpha_0 = delta - theta pairs to -<varpi_i, theta^vee>.)
bool actsAsTranslation(const SatakeDiagram& d, const RelWeylWord& w, int i) {
  int m = d.N() + 1;
  int t = d.tau(i);
  int orbitSize = (t == i) ? 1 : 2;
  for (int j = 0; j <= d.N(); ++j) {
    RootVector img = weylAct(d, w, RootVector::simple(m, j));
    int pair;
    if (j == 0)
      pair = -orbitSize;
    else
      pair = (j == i ? 1 : 0) + (t != i && j == t ? 1 : 0);
    RootVector want = RootVector::simple(m, j);
    for (auto& x : want.c) x -= pair;
    if (!(img == want)) return false;
  }
  return true;
}
}  // namespace

FundamentalWords fundamentalWeightWord(const SatakeDiagram& d, int i) {
  int n = d.n();
  if (i < 1 || i > n)
    throw std::invalid_argument("fundamentalWeightWord: need 1 <= i <= n");
  RelWeylWord w;
  if (d.N() == 1) {
    w.autPow = 1;
    w.letters = {1};
  } else if (d.odd() && i == n) {
    // varpi_n = pi_n r_n [n-1,n][n-2,n] ... [1,n]
    w.autPow = n;
    w.letters.push_back(n);
    for (int k = n - 1; k >= 1; --k) appendRange(w.letters, k, n);
  } else {
    // varpi_i = (r_0 [1,n])^i [n-i, n-1][n-i-1, n-2] ... [1,i]
    for (int rep = 0; rep < i; ++rep) {
      w.letters.push_back(0);
      appendRange(w.letters, 1, n);
    }
    for (int k = n - i; k >= 1; --k) appendRange(w.letters, k, k + i - 1);
  }
  if (w.letters.back() != i)
    throw std::logic_error("fundamentalWeightWord: word does not end in r_i");
  FundamentalWords fw;
  fw.varpi = w;
  fw.varpiPrime = w;
  fw.varpiPrime.letters.pop_back();
  long inv = inversionCount(d, fw.varpi);
  if (inv != static_cast<long>(expandWord(d, fw.varpi).size()))
    throw std::logic_error("fundamentalWeightWord: expression not reduced");
  if (!actsAsTranslation(d, fw.varpi, i))
    throw std::logic_error("fundamentalWeightWord: not the expected translation");
  return fw;
}

RelWeylWord zetaWord(const SatakeDiagram& d, int i) {
  RelWeylWord w;
  for (int rep = 0; rep < i; ++rep)
    for (int k = 0; k <= d.n(); ++k) w.letters.push_back(k);
  return w;
}

RootVector alphaTilde(const SatakeDiagram& d, int k) {
  int m = d.N() + 1, n = d.n();
  if (k >= 1 && k <= n - 1) return RootVector::simple(m, k);
  if (k % n != 0) throw std::invalid_argument("alphaTilde: bad index");
  RootVector r(m);
  r.c[0] = 1;
  int top = d.odd() ? n - 1 : n;
  for (int j = 0; j <= top; ++j) r.c[n + j] += 1;
  return r;
}

RootVector alphaTildePrime(const SatakeDiagram& d, int k) {
  int m = d.N() + 1, n = d.n();
  if (k >= 1 && k <= n - 1)
    return RootVector::simple(m, d.odd() ? 2 * n - k : 2 * n - k + 1);
  if (k % n != 0) throw std::invalid_argument("alphaTildePrime: bad index");
  RootVector r(m);
  int top = d.odd() ? n : n + 1;
  for (int j = 0; j <= top; ++j) r.c[j] += 1;
  return r;
}

std::string wordToJson(const SatakeDiagram& d, const RelWeylWord& w) {
  std::ostringstream os;
  os << "{\"N\":" << d.N() << ",\"tau\":[";
  for (int i = 0; i <= d.N(); ++i) os << (i ? "," : "") << d.tau(i);
  os << "],\"word\":[";
  bool first = true;
  if (w.autPow) {
    os << "{\"aut\":\"pi^" << w.autPow << "\"}";
    first = false;
  }
  for (int r : w.letters) {
    if (!first) os << ",";
    os << "{\"r\":" << r << "}";
    first = false;
  }
  os << "]}";
  return os.str();
}

}  // namespace qsp
