#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qsp/loopalg.hpp"

namespace qsp {

// Coideal generators acting on a Rep: B_i, K_i through the embedding,
// the Lu-Wang root vectors A_{i,r}, the Cartan elements H_{i,1} and the
// renormalized series Theta-grave_i(z), plus the braid-substitution oracle.
class CoidealRep {
 public:
  struct Options {
    bool kolbGate = true;
    bool dropThetaB0Term = false;  // fault injection for the case -1 series
  };

  CoidealRep(RepPtr V, int M) : CoidealRep(std::move(V), M, Options()) {}
  CoidealRep(RepPtr V, int M, Options opt);

  const Rep& rep() const { return *V_; }
  RepPtr repPtr() const { return V_; }
  int order() const { return M_; }
  const Scalar& C() const { return C_; }
  const LoopData& loop() const;

  const Mat& B(int i) const { return B_[i]; }
  Mat KK(int i, int e = 1) const;

  const Mat& Aminus1(int i);
  const Mat& TthetaInvB0();
  const Mat& H1(int i);
  // A_{i,r} for -1 <= r <= M+1 (ladder above r = 0).
  const Mat& A(int i, int r);
  LSeries<Mat> Aseries(int i);              // modes 0..M
  const LSeries<Mat>& thetaGrave(int i);    // modes 0..M
  LSeries<Mat> theta(int i);                // divided by the rational prefactor

  // Braid-substitution oracle A_{i,r} = o(i)^r T_{varpi_i}^{-r}(B_i),
  // |r| <= 2.
  Mat oracleA(int i, int r);
  // T_{varpi'_i}(B_i) via single-generator substitution along the word.
  Mat tVarpiPrimeB(int i);

  std::string lwDump();

 private:
  void buildAminus1(int i);
  void buildTheta(int i);
  void gateInverses();

  RepPtr V_;
  int M_;
  Options opt_;
  Scalar C_;
  std::vector<Mat> B_;
  mutable std::optional<LoopData> loop_;
  std::vector<std::optional<Mat>> am1_, h1_;
  std::optional<Mat> tthetaB0_;
  // A_{i,r}: index [i-1][r+1], r from -1 to M_+1
  std::vector<std::vector<std::optional<Mat>>> a_;
  std::vector<std::optional<LSeries<Mat>>> thg_;
  bool inversesGated_ = false;
};

// Kolb-Letzter relation report for the embedded generators.
RelationReport verifyKolb(const CoidealRep& cr);

}  // namespace qsp
