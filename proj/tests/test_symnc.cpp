#include "doctest.h"
#include "qsp/run.hpp"
#include "qsp/symnc.hpp"

using namespace qsp;

namespace {
NCPoly Y(int k) { return NCPoly::atom(Atom::Y(k)); }
Scalar q(int k) { return Scalar::qpow(k); }
}  // namespace

TEST_CASE("qbracket basics") {
  NCPoly x = Y(1), y = Y(2);
  CHECK(qbracket(x, x, Scalar(1)).isZero());
  NCPoly b = qbracket(x, y, q(1));
  NCPoly expect;
  expect.addTerm({Atom::Y(1), Atom::Y(2)}, Scalar(1));
  expect.addTerm({Atom::Y(2), Atom::Y(1)}, -q(1));
  CHECK(b == expect);
  // unit argument: [x, 1]_c = (1-c) x
  NCPoly one = NCPoly::constant(Scalar(1));
  Scalar c = q(3);
  CHECK(qbracket(x, one, c) == x * (Scalar(1) - c));
}

TEST_CASE("iterP and iterPprime") {
  CHECK(iterP({Y(1)}) == Y(1));
  CHECK(iterP({Y(1), Y(2)}) == qbracket(Y(1), Y(2), q(1)));
  CHECK(iterPprime({Y(1), Y(2)}) == qbracket(Y(1), Y(2), q(1)));
  CHECK(iterP({Y(1), Y(2), Y(3)}) ==
        qbracket(Y(1), qbracket(Y(2), Y(3), q(1)), q(1)));
  CHECK(iterPprime({Y(1), Y(2), Y(3)}) ==
        qbracket(qbracket(Y(1), Y(2), q(1)), Y(3), q(1)));
  CHECK_THROWS(iterP({}));
}

TEST_CASE("partial commutation canonical forms") {
  CommutationSpec comm;
  comm.declare(Atom::Y(1), Atom::Y(3));
  NCPoly p, r;
  p.addTerm({Atom::Y(1), Atom::Y(3)}, Scalar(1));
  r.addTerm({Atom::Y(3), Atom::Y(1)}, Scalar(1));
  CHECK(pcEqual(p, r, comm));
  NCPoly s;
  s.addTerm({Atom::Y(3), Atom::Y(2)}, Scalar(1));
  NCPoly t;
  t.addTerm({Atom::Y(2), Atom::Y(3)}, Scalar(1));
  CHECK(!pcEqual(s, t, comm));
}

TEST_CASE("P = P' under almost-commuting and the exchange lemma") {
  for (const auto& c : symbolicLemmaSuite()) {
    INFO(c.id, " ", c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("boldP") {
  NCPoly z;
  CHECK(boldP(Y(1), Y(2), z, {1}).isZero());
  NCPoly b1 = NCPoly::atom(Atom::B(1)), b2 = NCPoly::atom(Atom::B(2)),
         b0 = NCPoly::atom(Atom::B(0));
  NCPoly p = boldP(b1, b2, b0, {1});
  NCPoly expect = qbracket(b1, qbracket(b2, b0, q(1)), q(1)) -
                  NCPoly::atom(Atom::K(KFam::KK, 1)) * b0 * q(1);
  CHECK(p == expect);
}

TEST_CASE("braid generator images") {
  SatakeDiagram d3(3);
  RelativeBraid br(d3);
  // case (a): tau(2) = 2; T_2(B_j) = B_j for a_2j = 0
  CHECK(br.genImageB(2, 0) == NCPoly::atom(Atom::B(0)));
  // case (a): T_2(B_2) = K_2^-1 B_2
  CHECK(br.genImageB(2, 2) ==
        NCPoly::word({Atom::K(KFam::KK, 2, -1), Atom::B(2)}));
  // case (b): tau(1) = 3, a_{1,3} = 0: T_1(B_1) = -K_1^-1 B_3
  CHECK(br.genImageB(1, 1) ==
        -NCPoly::word({Atom::K(KFam::KK, 1, -1), Atom::B(3)}));
  CHECK(br.genImageB(1, 3) ==
        -NCPoly::word({Atom::K(KFam::KK, 3, -1), Atom::B(1)}));
  // case (c) at N = 4: T_2(B_2) = -q^-2 B_2 K_3^-1
  SatakeDiagram d4(4);
  RelativeBraid br4(d4);
  CHECK(br4.genImageB(2, 2) ==
        NCPoly::word({Atom::B(2), Atom::K(KFam::KK, 3, -1)}) * q(-2) * Scalar(-1));
  // N = 1: no image at a(i,j) = -2
  SatakeDiagram d1(1);
  RelativeBraid br1(d1);
  CHECK_THROWS_AS((void)br1.genImageB(1, 0), QspLimitError);
}

TEST_CASE("sigma is an involutive anti-map on words") {
  SatakeDiagram d(4);
  RelativeBraid br(d);
  NCPoly w = NCPoly::word({Atom::B(1), Atom::K(KFam::KK, 2, -1), Atom::B(0)},
                          q(3));
  NCPoly expect = NCPoly::word(
      {Atom::B(0), Atom::K(KFam::KK, 3, -1), Atom::B(1)}, q(3));
  CHECK(br.sigma(w) == expect);
  CHECK(br.sigma(br.sigma(w)) == w);
  // anti-multiplicativity
  NCPoly a = NCPoly::word({Atom::B(1), Atom::B(2)});
  NCPoly b = NCPoly::word({Atom::B(0), Atom::K(KFam::KK, 1)});
  CHECK(br.sigma(a * b) == br.sigma(b) * br.sigma(a));
}

TEST_CASE("term cap raises the limit error") {
  SatakeDiagram d(4);
  RelativeBraid br(d, 3);  // absurdly small cap
  // r_2 is the a = -1 case with multi-term images; the cap must trip.
  NCPoly p = br.genImageB(2, 1) * br.genImageB(2, 1);
  CHECK_THROWS_AS((void)br.applyGen(2, p * p), QspLimitError);
}

TEST_CASE("bracket program library shapes") {
  SatakeDiagram d2(2);
  // N=2: A_{i,-1} = -o(i) q^-2 [B_i, B_0]_q K_i K_delta^-1 (as the paper
  // normalizes it). Evaluate symbolically and compare.
  BProgPtr prog = bracketProgram(d2, ProgKey::AMinus1, 1);
  NCPoly got = evalProgramNC(prog);
  KMono m;
  for (int j = 0; j <= 2; ++j) m.add(KFam::KK, j, -1);
  // o(1) = -1: expect +q^-2 K_delta^-1 [B_1, B_0]_q K_1, the K_i tail on the
  // right as in the rank-one display.
  NCPoly expect = NCPoly::atom(Atom::Kmono(m)) *
                  qbracket(NCPoly::atom(Atom::B(1)), NCPoly::atom(Atom::B(0)),
                           q(1)) *
                  NCPoly::atom(Atom::K(KFam::KK, 1)) * q(-2);
  CHECK(got == expect);
  // TomegaPrimeF at N=1 collapses to F_0
  SatakeDiagram d1(1);
  CHECK(evalProgramNC(bracketProgram(d1, ProgKey::TomegaPrimeF, 1)) ==
        NCPoly::atom(Atom::F(0)));
  // s-expression serialization is stable
  CHECK(bracketProgram(d2, ProgKey::TomegaPrimeF, 1)->sexpr() == "(P F2 F0)");
  SatakeDiagram d4(4);
  CHECK(bracketProgram(d4, ProgKey::TthetaInvB0)->sexpr() ==
        "(boldP (mu 4) (P B4) (P B1) B0)");
}

TEST_CASE("telescoping holds literally for program folds") {
  // P(y1..y4) = P(y1, y2, P(y3, y4)) as NCPoly identities.
  std::vector<NCPoly> ys = {Y(1), Y(2), Y(3), Y(4)};
  NCPoly flat = iterP(ys);
  NCPoly nested = iterP({Y(1), Y(2), iterP({Y(3), Y(4)})});
  CHECK(flat == nested);
}
