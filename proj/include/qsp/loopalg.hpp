#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsp/matrix.hpp"
#include "qsp/rootdata.hpp"
#include "qsp/series.hpp"
#include "qsp/symnc.hpp"

namespace qsp {

inline constexpr int kDimCap = 64;

// Deformation parameters: u_i with c_i = u_i^2, u_i = u_{tau(i)};
// c_delta^(1/2) = prod u_i and the central value C of the coideal.
struct Params {
  int N = 1;
  std::vector<Scalar> u;  // size N+1

  static Params allOnes(int N);
  static Params withU(int N, const std::vector<Scalar>& u);

  Scalar c(int i) const { return u[i] * u[i]; }
  Scalar cHalf(int i) const { return u[i]; }
  Scalar cdeltaHalf() const;
  Scalar cdelta() const { return cdeltaHalf() * cdeltaHalf(); }
  Scalar C() const;  // q^{N+3} c_delta (N odd), q^{N+1} c_delta (N even)
  bool operator==(const Params& o) const { return N == o.N && u == o.u; }
};

struct RelationIssue {
  std::string id;
  int row = -1, col = -1;
  std::string value;
};

struct RelationReport {
  bool pass = true;
  std::vector<RelationIssue> failures;
  void fail(const std::string& id, const Mat& witness);
  std::string json() const;
};

// Finite-dimensional weight module with matrices for all Chevalley
// generators (i in I). Weight vectors are I0-coordinate exponents of the
// K_i eigenvalues.
struct Rep {
  SatakeDiagram d;
  Params par;
  int dim = 0;
  std::vector<std::vector<int>> wt;        // dim x N, K_i-exponents
  // Root-lattice coordinates of each weight relative to basis vector 0
  // (weight differences are graded by these).
  std::vector<std::vector<int>> rc;
  std::vector<Mat> E, F, K, Kinv;          // indexed by I
  // Tensor provenance (set by tensor()); used by the spectrum machinery.
  std::shared_ptr<const Rep> leftFactor, rightFactor;
  std::string label;

  explicit Rep(int N) : d(N) {}
  std::vector<int> weightShift(int i) const;  // alpha_i|I0 (or -theta for 0)
  std::string json() const;
};

using RepPtr = std::shared_ptr<const Rep>;

// The (N+1)-dimensional evaluation module with spectral parameter a.
// Throws if the relation gate fails.
RepPtr evalModule(const Params& par, const Scalar& a);
RepPtr trivialModule(const Params& par);
RepPtr tensor(const RepPtr& V, const RepPtr& W);
// As evalModule/tensor but without the relation gate (fault-injection tests).
Rep evalModuleUnchecked(const Params& par, const Scalar& a);

RelationReport verifyRelations(const Rep& V);

// Dictionary image of a Drinfeld-double or coideal atom on V.
Mat atomImage(const Rep& V, const Atom& a);

// Projection of X onto the weight-graded component nu (I0 coordinates).
Mat gradedComponent(const Rep& V, const Mat& X, const std::vector<int>& nu);
// All nu with a nonzero component.
std::vector<std::vector<int>> gradedSupport(const Rep& V, const Mat& X);

// Drinfeld generators on a representation: seeds from the braid-compatible
// bracket programs, ladder from the h_{i,+-1} adjoint action, and the
// phi/psi modes, all gated by exact consistency checks.
class LoopData {
 public:
  LoopData(RepPtr V, int M);

  int order() const { return M_; }
  const Rep& rep() const { return *V_; }

  const Mat& xm(int i, int k) const;   // x^-_{i,k}, |k| <= M+1
  const Mat& xp0(int i) const { return xp0_[i]; }
  const Mat& xpm1(int i) const { return xpm1_[i]; }  // x^+_{i,-1}
  const Mat& h1(int i) const { return h1_[i]; }
  const Mat& hm1(int i) const { return hm1_[i]; }
  const Mat& psi(int i, int m) const;  // psi_{i,m},  0 <= m <= M
  const Mat& phi(int i, int m) const;  // phi_{i,-m}, 0 <= m <= M

  // phi^-_i(z^-1) = sum_m phi_{i,-m} z^m, modes 0..M.
  LSeries<Mat> phiMinusOfZinv(int i) const;
  // phi^+_i(s z) = sum_m psi_{i,m} s^m z^m, modes 0..M.
  LSeries<Mat> phiPlusScaled(int i, const Scalar& s) const;

 private:
  void buildSeeds(int i);
  void gateSeeds();
  RepPtr V_;
  int M_;
  // per i in I0 (index i-1)
  std::vector<std::vector<Mat>> xm_;  // k from -(M+1) .. M+1
  std::vector<Mat> xp0_, xpm1_, h1_, hm1_;
  std::vector<std::vector<Mat>> psi_, phi_;
};

}  // namespace qsp
