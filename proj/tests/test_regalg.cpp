#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "renorm/regalg.hpp"
#include "renorm/series_json.hpp"
#include "support/rand_reg.hpp"

using namespace renorm;
using testsupport::rand_reg;

TEST_CASE("ring laws on truncated elements") {
  std::mt19937 rng(testsupport::seed_from_env());
  for (int round = 0; round < 60; ++round) {
    RegElement a = rand_reg(rng, 3, 2, 8);
    RegElement b = rand_reg(rng, 3, 2, 8);
    RegElement c = rand_reg(rng, 3, 2, 8);
    CHECK(reg_equal(reg_mul(a, b), reg_mul(b, a)));
    CHECK(reg_equal(reg_mul(reg_mul(a, b), c), reg_mul(a, reg_mul(b, c))));
    CHECK(reg_equal(reg_mul(a, reg_add(b, c)),
                    reg_add(reg_mul(a, b), reg_mul(a, c))));
    CHECK(reg_equal(reg_add(a, reg_neg(a)), reg_zero()));
  }
}

TEST_CASE("product truncation follows the min rule") {
  // pole of order 2 times an order-6 series: trust drops to 4
  std::mt19937 rng(7);
  RegElement pole = reg_mono(-2, 0, 3);
  RegElement series = reg_add(reg_mono(0, 0, 1, 6), rand_reg(rng, 0, 0, 6));
  RegElement prod = reg_mul(pole, series);
  CHECK(prod.trunc == 4);
  // exact times exact stays exact
  CHECK(reg_mul(reg_mono(2, 0, 1), reg_mono(3, 1, 2)).trunc == kExactOrder);
}

TEST_CASE("equality compares only commonly trusted orders") {
  RegElement a = reg_add(reg_mono(0, 0, 1, 4), reg_mono(3, 0, 5, 4));
  RegElement b = reg_mono(0, 0, 1, 2);  // trusted only to z^2
  CHECK(reg_equal(a, b));
  RegElement c = reg_add(reg_mono(0, 0, 1, 4), reg_mono(1, 0, 5, 4));
  CHECK_FALSE(reg_equal(a, c));
}

TEST_CASE("minimal subtraction is a weight-one Rota-Baxter operator") {
  std::mt19937 rng(testsupport::seed_from_env());
  for (int round = 0; round < 300; ++round) {
    RegElement x = rand_reg(rng, 4, 4, 6);
    RegElement y = rand_reg(rng, 4, 4, 6);
    RegElement lhs = reg_add(reg_mul(pi_minus(x), pi_minus(y)),
                             pi_minus(reg_mul(x, y)));
    RegElement rhs = reg_add(pi_minus(reg_mul(x, pi_minus(y))),
                             pi_minus(reg_mul(pi_minus(x), y)));
    CHECK(reg_equal(lhs, rhs));
  }
}

TEST_CASE("pi keeps poles and pure-y terms only") {
  RegElement a = reg_from_terms({{{-2, 1}, Rational(3)},
                                 {{-1, 0}, Rational(1, 2)},
                                 {{0, 2}, Rational(5)},
                                 {{0, 0}, Rational(7)},
                                 {{2, 1}, Rational(-1)}});
  RegElement sing = pi_minus(a);
  CHECK(sing.coeff(-2, 1) == Rational(3));
  CHECK(sing.coeff(-1, 0) == Rational(1, 2));
  CHECK(sing.coeff(0, 2) == Rational(5));
  CHECK(sing.coeff(0, 0) == 0);
  CHECK(sing.coeff(2, 1) == 0);
  auto [s, r] = reg_split(a);
  CHECK(reg_equal(reg_add(s, r), a));
  CHECK(reg_equal(pi_minus(r), reg_zero()));
}

TEST_CASE("derivatives act termwise") {
  RegElement a = reg_add(reg_mono(2, 1, Rational(3)), reg_mono(-1, 0, Rational(4)));
  RegElement dz = diff_z(a);
  CHECK(dz.coeff(1, 1) == Rational(6));
  CHECK(dz.coeff(-2, 0) == Rational(-4));
  RegElement dy = diff_y(a);
  CHECK(dy.coeff(2, 0) == Rational(3));
  CHECK(dy.terms.size() == 1);
  // truncation drops by one under d/dz
  std::mt19937 rng(3);
  CHECK(diff_z(rand_reg(rng, 2, 1, 6)).trunc == 5);
}

TEST_CASE("numeric evaluation matches a hand value") {
  // 3/z + 2y at z = 1/4, m = 2: 12 + 2 log(1/2)
  RegElement a = reg_add(reg_mono(-1, 0, Rational(3)), reg_mono(0, 1, Rational(2)));
  double got = reg_evaluate(a, 0.25, 2.0);
  CHECK(std::fabs(got - (12.0 + 2.0 * std::log(0.5))) < 1e-14);
}

TEST_CASE("y_part and exact marking") {
  RegElement a = reg_from_terms({{{0, 1}, Rational(2)}, {{1, 0}, Rational(5)}}, 6);
  RegElement yp = y_part(a);
  CHECK(yp.coeff(0, 1) == Rational(2));
  CHECK(yp.coeff(1, 0) == 0);
  CHECK(yp.trunc == 6);
  CHECK(reg_as_exact(a).trunc == kExactOrder);
  CHECK(reg_as_exact(a).coeff(1, 0) == Rational(5));
}

TEST_CASE("series literals round-trip through JSON") {
  std::mt19937 rng(testsupport::seed_from_env());
  for (int round = 0; round < 40; ++round) {
    RegElement a = rand_reg(rng, 3, 2, round % 2 ? 5 : kExactOrder);
    RegElement back = series_from_json(series_to_json(a));
    CHECK(back.trunc == a.trunc);
    CHECK(back.terms == a.terms);
  }
}

TEST_CASE("render is stable for a known element") {
  RegElement a = reg_from_terms({{{-1, 0}, Rational(-3)},
                                 {{0, 1}, Rational(1)},
                                 {{2, 0}, Rational(5, 2)}});
  CHECK(reg_render(a) == "-3*z^-1 + y + 5/2*z^2");
  CHECK(reg_render(reg_zero()) == "0");
}
