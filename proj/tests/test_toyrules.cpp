#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "renorm/toyrules.hpp"
#include "support/quadrature.hpp"

using namespace renorm;

TEST_CASE("cutoff series matches the documented expansion") {
  ToyRuleConfig cfg;
  cfg.z_truncation = 8;
  RegElement v = bubble_cutoff_value(cfg);
  CHECK(reg_render(v) == "-1/2 - y + z^2 - 3/4*z^4 + 2/3*z^6 - 5/8*z^8");
  CHECK(v.trunc == 8);
  // mass folds in as powers of (m z)
  cfg.m = Rational(2);
  RegElement vm = bubble_cutoff_value(cfg);
  CHECK(vm.coeff(2, 0) == Rational(4));
  CHECK(vm.coeff(4, 0) == Rational(-12));  // -3/4 * 16
  CHECK(vm.coeff(0, 1) == Rational(-1));   // the log term keeps coefficient 1
}

TEST_CASE("dimreg series has the known leading structure") {
  ToyRuleConfig cfg;
  RegElement v = bubble_dimreg_value(cfg);
  CHECK(v.coeff(-1, 0) == Rational(-1));
  CHECK(v.coeff(0, 0) == Rational(-1, 2));
  CHECK(v.y_degree() == 0);
  // the linear coefficient is -pi^2/24 up to the frozen-rational precision
  double got = rational_to_double(v.coeff(1, 0));
  double pi = std::acos(-1.0);
  CHECK(std::fabs(got + pi * pi / 24.0) < 1e-14);
  // angular factor scales everything
  cfg.angular_factor = Rational(3, 2);
  CHECK(bubble_dimreg_value(cfg).coeff(-1, 0) == Rational(-3, 2));
}

TEST_CASE("the log coefficient of one scheme is the pole residue of the other") {
  ToyRuleConfig cfg;
  RegElement cut = bubble_cutoff_value(cfg);
  RegElement dim = bubble_dimreg_value(cfg);
  CHECK(cut.coeff(0, 1) == dim.coeff(-1, 0));
}

TEST_CASE("cutoff value agrees with adaptive quadrature") {
  ToyRuleConfig cfg;
  for (double lambda : {10.0, 100.0, 1000.0}) {
    double series = reg_evaluate(bubble_cutoff_value(cfg), 1.0 / lambda, 1.0);
    double integral = oracle::bubble_cutoff(lambda, 1.0);
    CHECK(std::fabs(series - integral) / std::fabs(integral) < 1e-9);
  }
  // and off m = 1
  cfg.m = Rational(3, 2);
  double series = reg_evaluate(bubble_cutoff_value(cfg), 0.01, 1.5);
  double integral = oracle::bubble_cutoff(100.0, 1.5);
  CHECK(std::fabs(series - integral) / std::fabs(integral) < 1e-9);
}

TEST_CASE("dimreg value agrees with adaptive quadrature") {
  ToyRuleConfig cfg;
  for (double z : {-0.05, -0.1, -0.2}) {
    double series = reg_evaluate(bubble_dimreg_value(cfg), z, 1.0);
    double integral = oracle::bubble_dimreg(z, 1.0);
    CHECK(std::fabs(series - integral) / std::fabs(integral) < 1e-6);
  }
  cfg.m = Rational(3, 2);
  double series = reg_evaluate(bubble_dimreg_value(cfg), -0.1, 1.5);
  double integral = oracle::bubble_dimreg(-0.1, 1.5);
  CHECK(std::fabs(series - integral) / std::fabs(integral) < 1e-6);
}

TEST_CASE("toy characters live on B1 and vanish elsewhere") {
  HopfPtr H = builtin_algebra(2);
  ToyRuleConfig cfg;
  LinMap cut = toy_cutoff_character(H, cfg);
  LinMap dim = toy_dimreg_character(H, cfg);
  CHECK(is_character(cut));
  CHECK(is_character(dim));
  Monomial b1 = H->parse_monomial("B1");
  CHECK(reg_equal(cut.value(b1), bubble_cutoff_value(cfg)));
  CHECK(reg_equal(dim.value(b1), bubble_dimreg_value(cfg)));
  CHECK(reg_equal(cut.value(H->parse_monomial("S")), reg_zero()));
  // squared value shows up on the product monomial
  CHECK(reg_equal(cut.value(H->parse_monomial("B1.B1")),
                  reg_mul(bubble_cutoff_value(cfg), bubble_cutoff_value(cfg))));
}

TEST_CASE("configuration validation") {
  ToyRuleConfig cfg;
  cfg.m = Rational(-1);
  CHECK_THROWS_AS(bubble_cutoff_value(cfg), input_error);
  cfg.m = Rational(0);
  CHECK_THROWS_AS(bubble_dimreg_value(cfg), input_error);
  cfg.m = Rational(1);
  cfg.z_truncation = -3;
  CHECK_THROWS_AS(bubble_cutoff_value(cfg), input_error);
}

TEST_CASE("character files load back against the same algebra") {
  HopfPtr H = builtin_algebra(2);
  ToyRuleConfig cfg;
  LinMap dim = toy_dimreg_character(H, cfg);
  const char* path = "toy_dimreg_tmp.json";
  { std::ofstream(path) << character_to_json_text(dim); }
  LinMap back = load_character(path, H);
  std::remove(path);
  CHECK(linmap_equal(back, dim));
  CHECK_THROWS_AS(load_character("missing_character.json", H), input_error);
}
