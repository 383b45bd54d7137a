#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsp/coideal.hpp"

namespace qsp {

// Allowed-difference cones for "mod U_S" congruences, tested per
// weight-graded component.
struct DegreeCone {
  enum Kind { Positive, DiGe } kind = Positive;
  int i = 0;  // DiGe only
  int r = 1;
  static DegreeCone positive() { return {}; }
  static DegreeCone diGe(int i, int r) { return {DiGe, i, r}; }
  bool contains(const std::vector<int>& nu) const;
};

struct CongruenceWitness {
  int mode;
  std::vector<int> nu;
  std::string entry;
};

struct TheoremReport {
  std::string theorem;
  int N = 0, i = 0, M = 0;
  bool pass = true;
  std::vector<CongruenceWitness> witnesses;
  std::string json() const;
};

// True iff every graded component of X_m - Y_m outside the cone vanishes,
// for all shared modes m >= 0.
bool congruenceCheck(const Rep& V, const LSeries<Mat>& X, const LSeries<Mat>& Y,
                     const DegreeCone& cone, TheoremReport* rep = nullptr);

// Theta-grave_i(z) = K_i K_tau(i)^-1 phi^-_i(z^-1) phi^+_tau(i)(C z)
// mod U_+[[z]], checked at operator level to order M.
TheoremReport checkFactorization(CoidealRep& cr, int i, int M);

// Delta(Theta-grave_i(z)) = Theta-grave_i(z) (x) Theta-grave_i(z)
// mod (U^i (x) U_+)[[z]]: graded only along the second tensor factor.
TheoremReport checkCoproduct(const RepPtr& V, const RepPtr& W, int i, int M);

// T_{varpi'_i}(B_i) = T_{omega'_i}(F_i) + gamma T_{omega'_tau(i)}(E_tau(i))
// T_{omega'_i}(K~'_i) mod U_{d_i >= 1,+} (the braid-compatibility
// propositions; index bookkeeping flips at the a = -1 nodes).
TheoremReport checkBraidCompatibility(CoidealRep& cr, int i);

// --------------------------------------------------------------------------
// l-weights, Drinfeld polynomials and q-characters.

struct LWeight {
  int mult = 1;
  std::vector<int> lambda;                     // finite weight (I0 coords)
  std::vector<std::vector<Scalar>> Qroots;     // per i-1: roots a_{i,r}
  std::vector<std::vector<Scalar>> Rroots;     // per i-1: roots b_{i,s}
};

// Joint l-weights of the Drinfeld-Cartan family, from the diagonal action on
// evaluation modules and by factorwise products on tensor modules, verified
// by exact annihilator identities on the phi/psi modes.
std::vector<LWeight> lweights(const LoopData& L);

// P*(z): roots inverted. P-dagger: roots a -> C^-1 a^-1.
std::vector<Scalar> starRoots(const std::vector<Scalar>& roots);
std::vector<Scalar> daggerRoots(const std::vector<Scalar>& roots, const Scalar& C);

// gamma^+_i(z) to order M for one l-weight.
ScalarSeries gammaPlus(const LWeight& w, int i, int M);
// gamma^-_i(z^-1) as a power series in z to order M.
ScalarSeries gammaMinusOfZinv(const LWeight& w, int i, int M);

// Theorem-C prediction: the generalized eigenvalue series of
// Theta-grave_i(z) attached to one l-weight, to order M. Computed from
// kappa_i kappa_tau(i)^-1 gamma^-_i(z^-1) gamma^+_tau(i)(Cz) and
// cross-checked against the Q-polynomial form.
ScalarSeries thmCPredict(const LWeight& w, int i, const Scalar& C, int M);

struct BoundaryWeight {
  int mult = 1;
  std::vector<ScalarSeries> gamma;  // per i-1, order M
};
using LWeightData = std::vector<BoundaryWeight>;

// Annihilation test: for each mode m <= M,
// prod_values (Theta-grave_{i,m} - value)^mult = 0, plus the distinctness
// minimality check when all multiplicities are one.
bool spectrumVerify(CoidealRep& cr, int i, const LWeightData& pred, int M,
                    std::string* why = nullptr);

// Boundary q-character: the multiset of verified Theta-grave eigenvalue
// series with multiplicities.
LWeightData boundaryQChar(CoidealRep& cr, int M);

// Ordinary q-character as Laurent monomials in Y_{i,a}.
struct QCharMonomial {
  int mult = 1;
  std::map<std::pair<int, std::string>, int> yexp;  // (i, a) -> exponent
};
using QChar = std::vector<QCharMonomial>;
QChar qchar(const LoopData& L);
std::string qcharJson(const QChar& qc);

// Compatibility of boundary and ordinary q-characters (the commuting
// diagram): multiset multiplicativity on V (x) W, and the substitution form
// Y_{i,a} -> Y_{tau(i),Ca} Y_{i,a^-1}^-1 when V is trivial.
TheoremReport moduleActionCheck(const RepPtr& V, const RepPtr& W, int M);

// Numeric specialization oracle: at v = v0 the characteristic polynomial of
// each specialized Theta-grave mode must equal prod (x - gamma)^mult.
bool specializationOracle(CoidealRep& cr, int i, const LWeightData& pred, int M,
                          const mpq_class& v0, std::string* why = nullptr);

}  // namespace qsp
