#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "renorm/birkhoff.hpp"
#include "support/rand_reg.hpp"

using namespace renorm;
using testsupport::rand_character;

namespace {

// the two-loop chain with symbolic-made-concrete pole data
LinMap chain_character(HopfPtr H, const Rational& a, const Rational& b,
                       const Rational& c, const Rational& d) {
  std::map<std::string, RegElement> gv;
  for (GenId g = 0; g < H->generator_count(); ++g)
    if (H->generator(g).grade <= H->grade_cap())
      gv[H->generator(g).name] = reg_zero();
  gv["B1"] = reg_mono(-1, 0, a);
  gv["B2"] = reg_from_terms({{{-2, 0}, b}, {{-1, 0}, c}, {{0, 0}, d}});
  return character_from_generators(H, gv);
}

}  // namespace

TEST_CASE("two-loop counterterm formula") {
  HopfPtr H = builtin_algebra(2);
  Monomial b2 = H->parse_monomial("B2");
  for (int ai = -2; ai <= 2; ++ai) {
    for (int bi = -2; bi <= 2; ++bi) {
      Rational a(ai), b(bi, 2), c(3, 7), d(bi);
      LinMap phi = chain_character(H, a, b, c, d);
      BirkhoffResult r = birkhoff_decompose(phi);
      // minus(B2) = -(b - 2a^2) z^-2 - c z^-1
      RegElement want = reg_from_terms(
          {{{-2, 0}, -(b - 2 * a * a)}, {{-1, 0}, -c}});
      CAPTURE(ai);
      CAPTURE(bi);
      CHECK(reg_equal(r.minus.value(b2), want));
      CHECK(reg_equal(r.plus.value(b2), reg_const(d)));
    }
  }
}

TEST_CASE("decomposition reconstructs the character and lands in the right ranges") {
  HopfPtr H = builtin_algebra(3);
  std::mt19937 rng(testsupport::seed_from_env());
  for (int round = 0; round < 15; ++round) {
    LinMap phi = rand_character(H, rng, round % 3 == 0 ? 1 : 0);
    BirkhoffResult r = birkhoff_decompose(phi);
    CHECK(is_character(r.minus));
    CHECK(is_character(r.plus));
    CHECK(linmap_equal(convolve(convolution_inverse(r.minus), r.plus), phi));
    for (const Monomial& m : H->basis()) {
      if (m.empty()) continue;
      // counterterms live in the singular subalgebra, renormalized values
      // in its complement
      RegElement mv = r.minus.value(m);
      CHECK(reg_equal(pi_minus(mv), mv));
      CHECK(reg_equal(pi_minus(r.plus.value(m)), reg_zero()));
    }
  }
}

TEST_CASE("prepared value of the chain matches the hand sum") {
  HopfPtr H = builtin_algebra(2);
  Rational a(3), b(4), c(6), d(9, 2);
  LinMap phi = chain_character(H, a, b, c, d);
  Monomial b2 = H->parse_monomial("B2");
  // prepare(B2) = phi(B2) + 2 * minus(B1) * phi(B1), minus(B1) = -a/z
  RegElement want = reg_add(phi.value(b2),
                            reg_scale(Rational(2),
                                      reg_mul(reg_mono(-1, 0, -a),
                                              reg_mono(-1, 0, a))));
  CHECK(reg_equal(prepare(phi, b2), want));
  BirkhoffResult r = birkhoff_decompose(phi);
  CHECK(reg_equal(r.prepared.at(b2), want));
}

TEST_CASE("pi_flow collects singular parts at shifted powers of s") {
  // (c/z^2) e^{(1+2z)s}: the e^{2zs} expansion reaches the double pole,
  // so keys (0,1,0), (1,1,0), (2,1,0) carry pi(c/z^2), pi(2c/z), pi(2c)
  FlowValue v = fv_term(0, 1, 2, reg_mono(-2, 0, Rational(5)));
  FlowValue p = pi_flow(v);
  CHECK(reg_equal(p.terms.at({0, 1, 0}), reg_mono(-2, 0, Rational(5))));
  CHECK(reg_equal(p.terms.at({1, 1, 0}), reg_mono(-1, 0, Rational(10))));
  CHECK(p.terms.count({2, 1, 0}) == 0);  // pi(2c) = 0, nothing stored
  // regular input: nothing singular survives
  CHECK(pi_flow(fv_term(0, 0, 1, reg_mono(1, 0, Rational(2)))).is_zero());
}

TEST_CASE("flowed counterterm specializes to the static one") {
  HopfPtr H = builtin_algebra(2);
  std::mt19937 rng(testsupport::seed_from_env());
  for (Sigma sigma : {Sigma::dr, Sigma::mc}) {
    LinMap phi = rand_character(H, rng);
    FlowMap ct = flow_counterterm(phi, sigma);
    LinMap at0 = flow_at_s0(ct);
    LinMap stat = birkhoff_decompose(phi).minus;
    for (const Monomial& m : H->basis()) {
      CAPTURE(H->render(m));
      CAPTURE(reg_render(at0.value(m)));
      CAPTURE(reg_render(stat.value(m)));
      CHECK(reg_equal(at0.value(m), stat.value(m)));
    }
  }
}

TEST_CASE("locality of the chain counterterm depends on the pole relation") {
  HopfPtr H = builtin_algebra(2);
  // b = a^2: the double pole of the prepared value cancels in the flow
  LinMap good = chain_character(H, 2, 4, 5, 1);
  LocalityReport ok = check_locality(good);
  CHECK(ok.dimreg_type);
  CHECK(ok.local);

  LinMap bad = chain_character(H, 2, 5, 5, 1);
  LocalityReport no = check_locality(bad);
  CHECK(no.dimreg_type);
  CHECK_FALSE(no.local);
  bool b2_flagged = false;
  for (const LocalityEntry& e : no.entries)
    if (e.generator == "B2" && !e.t_independent) b2_flagged = true;
  CHECK(b2_flagged);
}

TEST_CASE("y-carrying values are flagged as non-dimreg-type") {
  HopfPtr H = builtin_algebra(2);
  std::map<std::string, RegElement> gv;
  for (GenId g = 0; g < H->generator_count(); ++g)
    if (H->generator(g).grade <= H->grade_cap())
      gv[H->generator(g).name] = reg_zero();
  gv["B1"] = reg_add(reg_mono(-1, 0, Rational(1)), reg_mono(0, 1, Rational(1)));
  LocalityReport rep = check_locality(character_from_generators(H, gv));
  CHECK_FALSE(rep.dimreg_type);
  CHECK_FALSE(rep.local);
}

TEST_CASE("prepare rejects monomials outside the basis") {
  HopfPtr H = builtin_algebra(2);
  std::mt19937 rng(testsupport::seed_from_env());
  LinMap phi = rand_character(H, rng);
  Monomial too_big = {H->find_name("B2"), H->find_name("B2")};  // grade 4
  CHECK_THROWS_AS(prepare(phi, too_big), std::invalid_argument);
}
