#include <random>

#include "doctest.h"
#include "qsp/scalar.hpp"
#include "qsp/series.hpp"

using namespace qsp;

namespace {
Scalar q(int k) { return Scalar::qpow(k); }

std::mt19937 rng(20240817);

Scalar randomScalar() {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, 3);
  auto poly = [&] {
    ZPoly p;
    int d = deg(rng);
    p.raw().resize(d + 1);
    for (int k = 0; k <= d; ++k) p.raw()[k] = coeff(rng);
    p.normalize();
    return p;
  };
  ZPoly num = poly();
  ZPoly den;
  do {
    den = poly();
  } while (den.isZero());
  return Scalar(num, den);
}
}  // namespace

TEST_CASE("quantum integers") {
  CHECK(qint(0).isZero());
  CHECK(qint(1) == Scalar(1));
  CHECK(qint(2) == q(1) + q(-1));
  for (long k = 1; k <= 6; ++k) CHECK(qint(-k) == -qint(k));
  // [k] (q - q^-1) = q^k - q^-k
  for (long k = 1; k <= 6; ++k)
    CHECK(qint(k) * (q(1) - q(-1)) == q(static_cast<int>(k)) - q(-static_cast<int>(k)));
  CHECK(qbinom(3, 1) == qint(3));
  CHECK(qbinom(4, 2) == qint(4) * qint(3) / qint(2));
}

TEST_CASE("field axioms, randomized") {
  for (int trial = 0; trial < 100; ++trial) {
    Scalar a = randomScalar(), b = randomScalar(), c = randomScalar();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!a.isZero()) {
      CHECK(a * a.inverse() == Scalar(1));
      CHECK(a / a == Scalar(1));
    }
    CHECK(a * b == b * a);
    CHECK((a - a).isZero());
  }
}

TEST_CASE("parse and print round trip") {
  auto s = Scalar::parse("q^3");
  REQUIRE(s.has_value());
  CHECK(*s == q(3));
  CHECK(Scalar::parse("q^-1").value() == q(-1));
  CHECK(Scalar::parse("-2*v^3+1").value() == Scalar(1) - Scalar::vpow(3, 2));
  CHECK(Scalar::parse("(v^2+1)/v").value() == Scalar::vpow(1) + Scalar::vpow(-1));
  CHECK(Scalar::parse("1/2").value() == Scalar::rational(1, 2));
  CHECK(!Scalar::parse("zebra").has_value());
  CHECK(!Scalar::parse("1/0").has_value());
  for (int trial = 0; trial < 40; ++trial) {
    Scalar a = randomScalar();
    auto back = Scalar::parse(a.str());
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
}

TEST_CASE("specialization guard and values") {
  Scalar a = q(2) + Scalar(1);
  CHECK(a.specialize(mpq_class(2)) == mpq_class(17));  // v=2: v^4+1
  CHECK_THROWS(a.specialize(mpq_class(1)));
  CHECK_THROWS(a.specialize(mpq_class(-1)));
  CHECK_THROWS(a.specialize(mpq_class(0)));
  CHECK_THROWS(q(1).inverse().specialize(mpq_class(0)));
}

TEST_CASE("series exp/log and the Theta-from-H identity") {
  // s = h z at order 2 -> 1 + h z + h^2/2 z^2
  Scalar h = randomScalar();
  ScalarSeries s(2);
  s[1] = h;
  ScalarSeries e = seriesExpZeroConst(s, Scalar(1));
  CHECK(e[0] == Scalar(1));
  CHECK(e[1] == h);
  CHECK(e[2] == h * h * Scalar::rational(1, 2));
  // exp then log is the identity
  ScalarSeries l = seriesLogUnitConst(e, Scalar(1));
  CHECK(l == s);
  // Theta modes from H modes at order 2:
  // 1 + rho Theta_1 z + rho Theta_2 z^2 = exp(rho (H_1 z + H_2 z^2))
  // hand expansion gives Theta_1 = H_1, Theta_2 = H_2 + rho H_1^2/2.
  Scalar rho = q(1) - q(-1);
  Scalar H1 = randomScalar(), H2 = randomScalar();
  ScalarSeries hs(2);
  hs[1] = rho * H1;
  hs[2] = rho * H2;
  ScalarSeries th = seriesExpZeroConst(hs, Scalar(1));
  CHECK(th[1] / rho == H1);
  CHECK(th[2] / rho == H2 + rho * H1 * H1 * Scalar::rational(1, 2));
}

TEST_CASE("series inverse") {
  for (int trial = 0; trial < 20; ++trial) {
    ScalarSeries s(4);
    s[0] = Scalar(1) + q(1);  // unit constant term
    for (int k = 1; k <= 4; ++k) s[k] = randomScalar();
    ScalarSeries inv = inverseSeries(s);
    ScalarSeries prod = s * inv;
    CHECK(prod[0] == Scalar(1));
    for (int k = 1; k <= 4; ++k) CHECK(prod[k].isZero());
  }
}

TEST_CASE("fit_rational") {
  Scalar a = q(2);
  // geometric series 1 + a z + a^2 z^2 + a^3 z^3, degrees (0,1) -> (1, 1-az)
  ScalarSeries s(3);
  Scalar p(1);
  for (int k = 0; k <= 3; ++k) {
    s[k] = p;
    p *= a;
  }
  auto fit = fitRational(s, 0, 1);
  REQUIRE(fit.has_value());
  CHECK(fit->first == std::vector<Scalar>{Scalar(1)});
  CHECK(fit->second == std::vector<Scalar>{Scalar(1), -a});

  // constant c with degrees (0,0) -> (c, 1)
  ScalarSeries c0(1);
  c0[0] = Scalar(7);
  auto fc = fitRational(c0, 0, 0);
  REQUIRE(fc.has_value());
  CHECK(fc->first == std::vector<Scalar>{Scalar(7)});
  CHECK(fc->second == std::vector<Scalar>{Scalar(1)});

  // expansion of (1 - q^-1 a z)/(1 - q a z) at order 4 recovers itself
  ScalarSeries num(4), den(4);
  num[0] = Scalar(1);
  num[1] = -(q(-1) * a);
  den[0] = Scalar(1);
  den[1] = -(q(1) * a);
  ScalarSeries target = num * inverseSeries(den);
  auto fr = fitRational(target, 1, 1);
  REQUIRE(fr.has_value());
  CHECK(fr->first == std::vector<Scalar>{Scalar(1), -(q(-1) * a)});
  CHECK(fr->second == std::vector<Scalar>{Scalar(1), -(q(1) * a)});

  // inconsistent system: vanishing constant term with a nonzero z-term
  ScalarSeries bad(3);
  bad[1] = Scalar(1);
  auto fb = fitRational(bad, 0, 1);
  CHECK(!fb.has_value());
}

TEST_CASE("fit_rational recovers random rational functions") {
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> num = {Scalar(1), randomScalar()};
    std::vector<Scalar> den = {Scalar(1), randomScalar(), randomScalar()};
    int p = 1, d = 2;
    ScalarSeries ns(p + d + 1), ds(p + d + 1);
    for (int k = 0; k <= p; ++k) ns[k] = num[k];
    for (int k = 0; k <= d; ++k) ds[k] = den[k];
    ScalarSeries s = ns * inverseSeries(ds);
    auto fit = fitRational(s, p, d);
    REQUIRE(fit.has_value());
    // Up to common normalization: cross-multiplied equality to order p+d.
    ScalarSeries fn(p + d + 1), fd(p + d + 1);
    for (size_t k = 0; k < fit->first.size(); ++k) fn[static_cast<int>(k)] = fit->first[k];
    for (size_t k = 0; k < fit->second.size(); ++k) fd[static_cast<int>(k)] = fit->second[k];
    ScalarSeries lhs = fn * ds, rhs = ns * fd;
    CHECK(lhs == rhs);
  }
}
