#include "doctest.h"
#include "qsp/rootdata.hpp"
#include "qsp/run.hpp"

using namespace qsp;

TEST_CASE("Satake diagrams") {
  SatakeDiagram d3(3);
  CHECK(d3.tau(1) == 3);
  CHECK(d3.tau(2) == 2);
  CHECK(d3.tau(0) == 0);
  CHECK(d3.a(0, 1) == -1);
  CHECK(d3.a(0, 3) == -1);
  CHECK(d3.a(1, 3) == 0);
  SatakeDiagram d2(2);
  CHECK(d2.tau(1) == 2);
  CHECK(d2.a(1, 2) == -1);
  SatakeDiagram d1(1);
  CHECK(d1.tau(1) == 1);
  CHECK(d1.a(0, 1) == -2);
  // a_{tau(i),tau(j)} = a_{ij}; o(i)o(j) = -1 on finite edges
  for (int N = 1; N <= 6; ++N) {
    SatakeDiagram d(N);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j)
        CHECK(d.a(d.tau(i), d.tau(j)) == d.a(i, j));
    for (int i = 1; i < N; ++i)
      if (d.a(i, i + 1) == -1) CHECK(d.o(i) * d.o(i + 1) == -1);
  }
}

TEST_CASE("relative simple reflections expand per case") {
  SatakeDiagram d3(3);
  CHECK(relativeSimple(d3, 2) == std::vector<int>{2});        // a(i,tau i) = 2
  CHECK(relativeSimple(d3, 1) == std::vector<int>{1, 3});     // = 0
  SatakeDiagram d4(4);
  CHECK(relativeSimple(d4, 2) == std::vector<int>{2, 3, 2});  // = -1
  CHECK(relativeSimple(d4, 0) == std::vector<int>{0});
}

TEST_CASE("simple reflection formula on root coordinates") {
  SatakeDiagram d(5);
  RelWeylWord id;
  RootVector beta = RootVector::simple(6, 2);
  CHECK(weylAct(d, id, beta) == beta);
  RootVector r = simpleReflect(d, 2, RootVector::simple(6, 2));
  CHECK(r == -RootVector::simple(6, 2));
  RootVector r2 = simpleReflect(d, 2, RootVector::simple(6, 1));
  CHECK(r2 == RootVector::simple(6, 1) + RootVector::simple(6, 2));
}

TEST_CASE("fundamental weight words validate (reduced + translation)") {
  // Validation happens inside fundamentalWeightWord; it throws on failure.
  for (int N = 1; N <= 8; ++N) {
    SatakeDiagram d(N);
    for (int i = 1; i <= d.n(); ++i) {
      FundamentalWords fw = fundamentalWeightWord(d, i);
      CHECK(fw.varpi.letters.size() == fw.varpiPrime.letters.size() + 1);
      long inv = inversionCount(d, fw.varpiPrime);
      CHECK(inv == static_cast<long>(expandWord(d, fw.varpiPrime).size()));
    }
  }
}

TEST_CASE("N=2 varpi_1 is r_0 r_1 with empty trailing factors") {
  SatakeDiagram d(2);
  FundamentalWords fw = fundamentalWeightWord(d, 1);
  CHECK(fw.varpi.autPow == 0);
  CHECK(fw.varpi.letters == std::vector<int>{0, 1});
  CHECK(fw.varpiPrime.letters == std::vector<int>{0});
}

TEST_CASE("N=3 mid node uses the pi_n form") {
  SatakeDiagram d(3);
  FundamentalWords fw = fundamentalWeightWord(d, 2);
  CHECK(fw.varpi.autPow == 2);
  CHECK(fw.varpi.letters == std::vector<int>{2, 1, 2});
}

TEST_CASE("zeta action on the alpha-tilde families") {
  // N = 5 (odd, n = 3): zeta_1 alpha~_1 = alpha~_2 = alpha_2.
  SatakeDiagram d5(5);
  RelWeylWord z1 = zetaWord(d5, 1);
  CHECK(z1.letters == std::vector<int>{0, 1, 2, 3});
  CHECK(weylAct(d5, z1, alphaTilde(d5, 1)) == alphaTilde(d5, 2));
  // N = 4 (even, n = 2): zeta_1 alpha~'_1 = alpha~'_2 with the index taken
  // mod n, i.e. alpha~'_0 = alpha_0 + alpha_1 + alpha_2 + alpha_3.
  SatakeDiagram d4(4);
  CHECK(alphaTildePrime(d4, 1) == RootVector::simple(5, 4));
  RelWeylWord z = zetaWord(d4, 1);
  CHECK(weylAct(d4, z, alphaTildePrime(d4, 1)) == alphaTildePrime(d4, 0));
  // N = 6 (n = 3) stays inside the untwisted range: alpha~'_2 = alpha_5.
  SatakeDiagram d6(6);
  CHECK(alphaTildePrime(d6, 1) == RootVector::simple(7, 6));
  CHECK(weylAct(d6, zetaWord(d6, 1), alphaTildePrime(d6, 1)) ==
        RootVector::simple(7, 5));
}

TEST_CASE("root suite passes for n <= 4 and N = 1") {
  for (int N : {1, 2, 3, 4, 5, 6, 7, 8}) {
    auto rs = rootSuite(N);
    for (const auto& c : rs) {
      INFO(c.id, " ", c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("delta is fixed by every reflection") {
  for (int N = 1; N <= 6; ++N) {
    SatakeDiagram d(N);
    RootVector delta = RootVector::delta(N + 1);
    for (int j = 0; j <= N; ++j) CHECK(simpleReflect(d, j, delta) == delta);
  }
}

TEST_CASE("word JSON serialization") {
  SatakeDiagram d(3);
  FundamentalWords fw = fundamentalWeightWord(d, 2);
  std::string js = wordToJson(d, fw.varpi);
  CHECK(js.find("\"N\":3") != std::string::npos);
  CHECK(js.find("\"aut\":\"pi^2\"") != std::string::npos);
  CHECK(js.find("{\"r\":2}") != std::string::npos);
}
