#pragma once

#include <string>
#include <vector>

#include "qsp/scalar.hpp"

namespace qsp {

// Satake diagram of affine type AIII_N^(tau) (N >= 2), or the split AI_1
// limit at N = 1. Nodes I = {0..N}, I0 = {1..N}.
class SatakeDiagram {
 public:
  explicit SatakeDiagram(int N);

  int N() const { return N_; }
  int nodes() const { return N_ + 1; }
  int n() const { return (N_ + 1) / 2; }  // N = 2n-1 or N = 2n
  bool odd() const { return N_ % 2 == 1; }

  int tau(int i) const;
  // Affine Cartan matrix entry; type A_N^(1) cycle for N >= 2, A_1^(1) for N=1.
  int a(int i, int j) const;
  int o(int i) const { return (i % 2 == 0) ? 1 : -1; }  // sign function on I0
  int aTau(int i) const { return a(i, tau(i)); }

  // Orbit representatives I_tau = {0, 1, .., n}.
  std::vector<int> orbitReps() const;
  std::vector<int> orbitRepsFinite() const;  // I_0 cap I_tau

 private:
  int N_;
};

// Root-lattice vector with affine coordinate (coords indexed by I).
struct RootVector {
  std::vector<int> c;
  explicit RootVector(int nodes) : c(nodes, 0) {}
  static RootVector simple(int nodes, int i) {
    RootVector r(nodes);
    r.c[i] = 1;
    return r;
  }
  static RootVector delta(int nodes) {
    RootVector r(nodes);
    for (auto& x : r.c) x = 1;
    return r;
  }
  bool operator==(const RootVector& o) const { return c == o.c; }
  RootVector operator+(const RootVector& o) const {
    RootVector r = *this;
    for (size_t k = 0; k < c.size(); ++k) r.c[k] += o.c[k];
    return r;
  }
  RootVector operator-() const {
    RootVector r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  bool isZero() const {
    for (int x : c)
      if (x) return false;
    return true;
  }
  bool allNonneg() const {
    for (int x : c)
      if (x < 0) return false;
    return true;
  }
  bool allNonpos() const {
    for (int x : c)
      if (x > 0) return false;
    return true;
  }
};

// Element of the extended relative affine Weyl group, stored as a diagram
// rotation power (the Lambda^tau part) followed by relative simple letters.
struct RelWeylWord {
  int autPow = 0;            // rotation i -> i + autPow mod (N+1)
  std::vector<int> letters;  // indices in I_tau
};

// Expansion of the relative simple reflection r_i into s-letters.
std::vector<int> relativeSimple(const SatakeDiagram& d, int i);

// Expands a relative word into underlying s-letters (keeping autPow aside).
std::vector<int> expandWord(const SatakeDiagram& d, const RelWeylWord& w);

// s_j action on root coordinates, affine pairing.
RootVector simpleReflect(const SatakeDiagram& d, int j, const RootVector& b);
// Diagram rotation by p on root coordinates.
RootVector rotateRoot(const SatakeDiagram& d, int p, const RootVector& b);
// Left action of a relative word: aut after the s-letters.
RootVector weylAct(const SatakeDiagram& d, const RelWeylWord& w,
                   const RootVector& b);

// Number of positive real affine roots sent negative by the expanded word;
// equals the Coxeter length when the expansion is reduced.
long inversionCount(const SatakeDiagram& d, const RelWeylWord& w);

// Reduced words for varpi_i (Props. on fundamental weights) and
// varpi'_i = varpi_i r_i (the same word with the final letter dropped).
// Both are validated on construction: the expansion must be reduced and must
// act on the root lattice as the translation by omega_i (+ omega_tau(i)).
struct FundamentalWords {
  RelWeylWord varpi;
  RelWeylWord varpiPrime;
};
FundamentalWords fundamentalWeightWord(const SatakeDiagram& d, int i);

// zeta_i = (r_0 r_1 ... r_n)^i, used by the root-combinatorics checks.
RelWeylWord zetaWord(const SatakeDiagram& d, int i);

// alpha~_k and alpha~'_k families entering the zeta-action lemmas.
RootVector alphaTilde(const SatakeDiagram& d, int k);
RootVector alphaTildePrime(const SatakeDiagram& d, int k);

std::string wordToJson(const SatakeDiagram& d, const RelWeylWord& w);

}  // namespace qsp
