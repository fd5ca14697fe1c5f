#include <doctest.h>

#include "twistree/counting.hpp"
#include "twistree/errors.hpp"
#include "twistree/series.hpp"

using namespace twistree;

TEST_CASE("lambert W series") {
  Series w = lambert_w_series(8);
  CHECK(w[1] == Rat(1));
  CHECK(w[2] == Rat(-1));
  CHECK(w[3] == Rat(3, 2));
  CHECK(w[4] == Rat(-8, 3));
  CHECK(w.mul(exp_of(w)).sub(Series::x(8)).is_zero());
  CHECK(lambert_w_series(1)[1] == Rat(1));
}

TEST_CASE("cayley series coefficients are n^(n-2)/n!") {
  Series cay = cayley_series(30);
  CHECK(cay[0] == 0);
  CHECK(cay[1] == Rat(1));
  CHECK(cay[2] == Rat(1, 2));
  CHECK(cay[3] == Rat(1, 2));
  CHECK(cay[4] == Rat(2, 3));
  mpz_class fact = 1;
  for (int n = 1; n <= 30; ++n) {
    fact *= n;
    Rat expected(cayley_number(n), fact);
    expected.canonicalize();
    CHECK(cay[n] == expected);
  }
}

TEST_CASE("egf_from_counts") {
  CountTable table(12);
  BiSeries c = egf_from_counts(table, 12);
  CHECK(c.coeff(1, 0) == Rat(1));
  CHECK(c.coeff(2, 1) == Rat(1, 2));
  CHECK(c.coeff(3, 2) == Rat(1, 3));
  CHECK(c.coeff(3, 3) == Rat(1, 6));
  // coefficient times n! is integral
  mpz_class fact = 1;
  for (int n = 1; n <= 12; ++n) {
    fact *= n;
    for (int m = 0; m <= 2 * n - 3 + 1; ++m) {
      Rat v = c.coeff(n, m) * Rat(fact);
      v.canonicalize();
      CHECK(v.get_den() == 1);
    }
  }
  // u = 1 slice equals the cayley series
  Series cay = cayley_series(12);
  for (int n = 1; n <= 12; ++n) {
    Rat row(0);
    for (int m = 0; m <= 2 * n; ++m) row += c.coeff(n, m);
    CHECK(row == cay[n]);
  }
}

TEST_CASE("pde residual is zero exactly for the true table") {
  CountTable table(14);
  BiSeries c = egf_from_counts(table, 14);
  CHECK(pde_residual(c).is_zero());
  CHECK(pde_check(c).ok);

  SUBCASE("perturbing c(4,4) surfaces at z-degree 3") {
    BiSeries bad = c;
    bad.set(4, 4, c.coeff(4, 4) + Rat(1, 24));
    BiSeries r = pde_residual(bad);
    CHECK_FALSE(r.is_zero());
    auto t = r.first_nonzero();
    REQUIRE(t.has_value());
    CHECK(t->i == 3);
  }

  SUBCASE("nonzero C(0,u) is reported") {
    BiSeries bad = c;
    bad.set(0, 1, Rat(1));
    CHECK_FALSE(pde_check(bad).ok);
    BiSeries constant_only = c;
    constant_only.set(0, 0, Rat(1));
    PdeReport rep = pde_check(constant_only);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.initial_ok);
  }
}

TEST_CASE("bi-series arithmetic is exact") {
  BiSeries a(4, 4), b(4, 4);
  a.set(1, 0, Rat(2));
  a.set(2, 3, Rat(-5, 7));
  b.set(0, 1, Rat(1, 3));
  b.set(2, 3, Rat(5, 7));
  CHECK(a.add(b).sub(b).sub(a).is_zero());

  // convolution against a hand expansion: (z + u)^2 = z^2 + 2zu + u^2
  BiSeries s(4, 4);
  s.set(1, 0, Rat(1));
  s.set(0, 1, Rat(1));
  BiSeries sq = s.mul(s);
  CHECK(sq.coeff(2, 0) == Rat(1));
  CHECK(sq.coeff(1, 1) == Rat(2));
  CHECK(sq.coeff(0, 2) == Rat(1));

  // derivative then integration restores the non-constant part
  BiSeries dz = a.derivative_z();
  BiSeries restored(4, 4);
  for (const auto& [ij, v] : dz.terms()) restored.set(ij.first + 1, ij.second, v / (ij.first + 1));
  CHECK(restored.sub(a.truncated(3, 4)).coeff(2, 3) == 0);
  CHECK(restored.coeff(1, 0) == Rat(2));
}

TEST_CASE("monomial multiplication extends the tracked region") {
  BiSeries a(3, 3);
  a.set(3, 3, Rat(1));
  BiSeries shifted = a.mul(BiSeries::monomial(2, 1, Rat(1)));
  CHECK(shifted.coeff(5, 4) == Rat(1));
  CHECK(shifted.zcap() >= 5);
  CHECK(shifted.ucap() >= 4);
}

TEST_CASE("borel links the ordinary and exponential forms") {
  const int order = 10;
  CountTable table(order);
  BiSeries ord(order, BiSeries::kExact);
  for (int n = 1; n <= order; ++n) {
    int lo = (n == 1) ? 0 : n - 1;
    int hi = (n == 1) ? 0 : 2 * n - 3;
    for (int m = lo; m <= hi; ++m) ord.set(n, m, Rat(table.at(n, m)));
  }
  // C_ord = z + z^2 u dC/dz + z u^3 dC/du, checked through z-degree `order`.
  BiSeries rhs = BiSeries::monomial(1, 0, Rat(1))
                     .add(ord.derivative_z().mul(BiSeries::monomial(2, 1, Rat(1))))
                     .add(ord.derivative_u().mul(BiSeries::monomial(1, 3, Rat(1))));
  CHECK(ord.sub(rhs).truncated(order, BiSeries::kExact).is_zero());
  CHECK(borel(ord).sub(egf_from_counts(table, order)).is_zero());
}

TEST_CASE("closed form check") {
  ClosedFormReport ok = closed_form_check(10);
  CHECK(ok.ok);

  // s = 0 slice reduces to C(z,1) = Cayley(z): row sums over m.
  CountTable table(10);
  Series cay = cayley_series(10);
  for (int n = 1; n <= 10; ++n) {
    Rat row(0);
    mpz_class fact = 1;
    for (int k = 1; k <= n; ++k) fact *= k;
    int lo = (n == 1) ? 0 : n - 1;
    int hi = (n == 1) ? 0 : 2 * n - 3;
    for (int m = lo; m <= hi; ++m) {
      Rat term(table.at(n, m), fact);
      term.canonicalize();
      row += term;
    }
    CHECK(row == cay[n]);
  }

  CHECK_THROWS_AS(compose_univariate(cay, BiSeries::constant(Rat(1))), SubstitutionIllFormed);
}

TEST_CASE("exp and inverse helpers") {
  Series one_plus_s(6);
  one_plus_s[0] = 1;
  one_plus_s[1] = 1;
  Series inv = inverse_unit(one_plus_s);
  for (int k = 0; k <= 6; ++k) CHECK(inv[k] == Rat(k % 2 == 0 ? 1 : -1));
  CHECK(inv.mul(one_plus_s)[0] == Rat(1));

  Series e = exp_of(Series::x(6));
  mpz_class fact = 1;
  for (int k = 1; k <= 6; ++k) {
    fact *= k;
    Rat expected(1, fact);
    expected.canonicalize();
    CHECK(e[k] == expected);
  }
  CHECK_THROWS_AS(exp_of(one_plus_s), SubstitutionIllFormed);
  CHECK_THROWS_AS(inverse_unit(Series::x(6)), SubstitutionIllFormed);
}
