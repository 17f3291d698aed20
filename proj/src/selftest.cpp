#include "renorm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "renorm/birkhoff.hpp"
#include "renorm/connection.hpp"
#include "renorm/toyrules.hpp"

namespace renorm {

namespace {

struct Suite {
  std::ostringstream out;
  int checks = 0;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    ++checks;
    if (ok) {
      out << "ok: " << name << "\n";
    } else {
      ++failures;
      out << "FAIL: " << name;
      if (!detail.empty()) out << ": " << detail;
      out << "\n";
    }
  }
};

Rational rand_rat(std::mt19937& rng) {
  int num = static_cast<int>(rng() % 19) - 9;
  int den = 1 + static_cast<int>(rng() % 9);
  return Rational(num, den);
}

RegElement rand_reg(std::mt19937& rng, int poles, int ydeg, int trunc) {
  RegElement r = reg_zero(trunc);
  int top = trunc >= (kExactOrder >> 1) ? 3 : trunc;
  for (int i = -poles; i <= top; ++i)
    for (int j = 0; j <= ydeg; ++j)
      if (rng() % 3 != 0) r = reg_add(r, reg_mono(i, j, rand_rat(rng), trunc));
  return r;
}

LinMap rand_character(HopfPtr H, std::mt19937& rng, int ydeg) {
  std::map<std::string, RegElement> gv;
  for (GenId g = 0; g < H->generator_count(); ++g) {
    const GeneratorInfo& info = H->generator(g);
    if (info.grade > H->grade_cap()) continue;
    gv[info.name] = rand_reg(rng, info.grade, ydeg, kExactOrder);
  }
  return character_from_generators(H, gv);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.push_back({perm[u], perm[v]});
  std::vector<int> legs;
  for (int v : g.legs) legs.push_back(perm[v]);
  return make_graph(g.vertices, edges, legs);
}

void graph_section(Suite& s, std::mt19937& rng) {
  auto corpus = builtin_corpus();
  s.check("corpus size", corpus.size() == 8);

  // name -> (loops, omega)
  std::map<std::string, std::pair<int, int>> expect = {
      {"B1", {1, 0}},  {"T1", {1, 2}},  {"B1d", {1, -2}}, {"S", {2, 2}},
      {"B1t", {2, 0}}, {"B2", {2, 0}},  {"B3", {3, 0}},   {"BS3", {3, 0}}};
  for (const auto& [name, g] : corpus) {
    bool ok = true;
    std::string why;
    try {
      validate_graph(g);
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    s.check("graph valid: " + name, ok, why);
    s.check("graph 1PI: " + name, is_one_particle_irreducible(g));
    auto [loops, omega] = expect.at(name);
    s.check("loop number: " + name, loop_number(g) == loops);
    s.check("superficial degree: " + name, superficial_degree(g) == omega);

    // canonical form survives relabeling
    std::vector<int> perm(g.vertices);
    for (int i = 0; i < g.vertices; ++i) perm[i] = i;
    bool stable = true;
    for (int t = 0; t < 3; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      if (canonical_form(relabel(g, perm)) != canonical_form(g)) stable = false;
    }
    s.check("canonical form stable: " + name, stable);
  }

  // degree lemma: omega(G) = omega(gamma) + omega(G/gamma), exhaustively
  for (const auto& [name, g] : corpus) {
    bool ok = true;
    for (const EdgeSubset& sub : admissible_subgraphs(g)) {
      int inner = 0;
      for (const Graph& comp : subgraph_components(g, sub))
        inner += superficial_degree(comp);
      if (inner + superficial_degree(contract(g, sub)) != superficial_degree(g))
        ok = false;
      int linner = subgraph_loop_number(g, sub);
      if (linner + loop_number(contract(g, sub)) != loop_number(g)) ok = false;
    }
    s.check("degree lemma: " + name, ok);
  }
}

void hopf_section(Suite& s, HopfPtr H, FaultInjection fault) {
  const HopfAlgebra& A = *H;
  s.check("generator count", A.generator_count() == 8);
  {
    std::vector<std::string> names, want = {"T1", "B1", "B1d", "S",
                                            "B1t", "B2", "BS3", "B3"};
    for (GenId g = 0; g < A.generator_count(); ++g) names.push_back(A.generator(g).name);
    s.check("generator order", names == want);
  }
  s.check("basis size at cap 3", A.basis().size() == 34);

  auto cop = [&](const char* m) { return A.render(A.coproduct(A.parse_monomial(m))); };
  s.check("coproduct B2", cop("B2") == "1⊗B2 + B2⊗1 + 2*(B1⊗B1)", cop("B2"));
  s.check("coproduct S", cop("S") == "1⊗S + S⊗1 + 3*(B1⊗T1)", cop("S"));
  s.check("coproduct B1d", cop("B1d") == "1⊗B1d + B1d⊗1", cop("B1d"));
  s.check("coproduct B1t", cop("B1t") == "1⊗B1t + B1t⊗1 + T1⊗B1d", cop("B1t"));
  s.check("coproduct B3",
          cop("B3") == "1⊗B3 + B3⊗1 + 3*(B1⊗B2) + B1.B1⊗B1 + 2*(B2⊗B1)", cop("B3"));
  s.check("coproduct BS3",
          cop("BS3") == "1⊗BS3 + BS3⊗1 + 3*(B1⊗B1t) + S⊗B1d", cop("BS3"));

  auto anti = [&](const char* m) { return A.render(A.antipode(A.parse_monomial(m))); };
  s.check("antipode B1", anti("B1") == "-B1", anti("B1"));
  s.check("antipode B2", anti("B2") == "2*B1.B1 - B2", anti("B2"));
  s.check("antipode S", anti("S") == "-S + 3*T1.B1", anti("S"));
  s.check("antipode B3", anti("B3") == "-5*B1.B1.B1 + 5*B1.B2 - B3", anti("B3"));
  s.check("antipode BS3", anti("BS3") == "3*B1.B1t + B1d.S - BS3 - 3*T1.B1.B1d",
          anti("BS3"));

  // counit axiom: the unit-left leg of Delta(m) reproduces m, ditto unit-right
  bool counit_ok = true;
  for (const Monomial& m : A.basis()) {
    HopfElement left_sum, right_sum;
    for (const auto& [pair, c] : A.coproduct(m).terms) {
      if (pair.first.empty()) left_sum = hopf_add(left_sum, hopf_mono(pair.second, c));
      if (pair.second.empty()) right_sum = hopf_add(right_sum, hopf_mono(pair.first, c));
    }
    HopfElement want = hopf_mono(m);
    if (left_sum.terms != want.terms || right_sum.terms != want.terms) counit_ok = false;
  }
  s.check("counit axiom", counit_ok);

  // coassociativity on the whole basis
  bool coassoc_ok = true;
  using Triple = std::map<std::tuple<Monomial, Monomial, Monomial>, Rational>;
  for (const Monomial& m : A.basis()) {
    Triple left, right;
    for (const auto& [pair, c] : A.coproduct(m).terms) {
      for (const auto& [pair2, c2] : A.coproduct(pair.first).terms) {
        Rational& slot = left[{pair2.first, pair2.second, pair.second}];
        slot += c * c2;
        if (slot == 0) left.erase({pair2.first, pair2.second, pair.second});
      }
      for (const auto& [pair2, c2] : A.coproduct(pair.second).terms) {
        Rational& slot = right[{pair.first, pair2.first, pair2.second}];
        slot += c * c2;
        if (slot == 0) right.erase({pair.first, pair2.first, pair2.second});
      }
    }
    if (left != right) coassoc_ok = false;
  }
  s.check("coassociativity", coassoc_ok);

  // antipode axiom: sum S(left) * right = counit(m) * 1
  bool antipode_ok = true;
  std::string antipode_why;
  for (const Monomial& m : A.basis()) {
    HopfElement acc;
    for (const auto& [pair, c] : A.coproduct(m).terms)
      acc = hopf_add(acc,
                     hopf_scale(c, A.multiply(A.antipode(pair.first),
                                              hopf_mono(pair.second))));
    if (fault == FaultInjection::antipode && m.size() == 1)
      acc = hopf_add(acc, hopf_mono(m, Rational(1)));
    HopfElement want = m.empty() ? hopf_mono({}) : HopfElement{};
    if (acc.terms != want.terms) {
      antipode_ok = false;
      if (antipode_why.empty())
        antipode_why = "convolution S*id at " + A.render(m) + " gave " + A.render(acc);
    }
  }
  s.check("antipode axiom", antipode_ok, antipode_why);

  // Delta is an algebra map (products within the cap)
  bool mult_ok = true;
  for (const Monomial& a : A.basis())
    for (const Monomial& b : A.basis()) {
      if (a.empty() || b.empty()) continue;
      if (A.grade(a) + A.grade(b) > A.grade_cap()) continue;
      TensorElement lhs = A.coproduct(monomial_mul(a, b));
      TensorElement rhs = tensor_mul(A.coproduct(a), A.coproduct(b));
      if (lhs.terms != rhs.terms) mult_ok = false;
    }
  s.check("coproduct multiplicative", mult_ok);

  // S is an involution and an algebra map here (commutative algebra)
  bool invol_ok = true, shom_ok = true;
  for (const Monomial& m : A.basis()) {
    HopfElement twice = A.antipode(A.antipode(m));
    if (twice.terms != hopf_mono(m).terms) invol_ok = false;
  }
  for (const Monomial& a : A.basis())
    for (const Monomial& b : A.basis()) {
      if (a.empty() || b.empty() || A.grade(a) + A.grade(b) > A.grade_cap()) continue;
      HopfElement lhs = A.antipode(monomial_mul(a, b));
      HopfElement rhs = A.multiply(A.antipode(a), A.antipode(b));
      if (lhs.terms != rhs.terms) shom_ok = false;
    }
  s.check("antipode involutive", invol_ok);
  s.check("antipode multiplicative", shom_ok);
}

void regalg_section(Suite& s, std::mt19937& rng) {
  // Rota-Baxter law for the singular-part projection, weight one:
  // R(x)R(y) + R(xy) = R(x R(y)) + R(R(x) y)
  bool rb_ok = true;
  for (int t = 0; t < 250 && rb_ok; ++t) {
    RegElement x = rand_reg(rng, 4, 4, 6);
    RegElement y = rand_reg(rng, 4, 4, 6);
    RegElement lhs = reg_add(reg_mul(pi_minus(x), pi_minus(y)), pi_minus(reg_mul(x, y)));
    RegElement rhs = reg_add(pi_minus(reg_mul(x, pi_minus(y))),
                             pi_minus(reg_mul(pi_minus(x), y)));
    if (!reg_equal(lhs, rhs)) rb_ok = false;
  }
  s.check("Rota-Baxter projection law", rb_ok);

  bool split_ok = true, ring_ok = true;
  for (int t = 0; t < 100; ++t) {
    RegElement x = rand_reg(rng, 3, 2, 8);
    auto [sing, reg] = reg_split(x);
    if (!reg_equal(reg_add(sing, reg), x)) split_ok = false;
    if (!reg_equal(pi_minus(reg), reg_zero(reg.trunc))) split_ok = false;
    RegElement y = rand_reg(rng, 3, 2, 8);
    RegElement z = rand_reg(rng, 3, 2, 8);
    if (!reg_equal(reg_mul(reg_mul(x, y), z), reg_mul(x, reg_mul(y, z)))) ring_ok = false;
    if (!reg_equal(reg_mul(x, y), reg_mul(y, x))) ring_ok = false;
    if (!reg_equal(reg_mul(x, reg_add(y, z)), reg_add(reg_mul(x, y), reg_mul(x, z))))
      ring_ok = false;
  }
  s.check("singular/regular split", split_ok);
  s.check("series ring laws", ring_ok);
}

void character_section(Suite& s, HopfPtr H, std::mt19937& rng) {
  LinMap phi = rand_character(H, rng, 1);
  s.check("random character multiplicative", is_character(phi));
  LinMap inv = convolution_inverse(phi);
  s.check("convolution inverse", linmap_equal(convolve(inv, phi), unit_character(H)) &&
                                     linmap_equal(convolve(phi, inv), unit_character(H)));
  s.check("inverse via antipode", linmap_equal(inv, inverse_via_antipode(phi)));

  std::string text = character_to_json_text(phi);
  LinMap back = character_from_json_text(text, H);
  s.check("character round-trips through json", linmap_equal(back, phi));
}

void birkhoff_section(Suite& s, HopfPtr H, std::mt19937& rng) {
  // worked two-loop formula
  Rational a(3), b(4), c(6), d(9, 2);
  std::map<std::string, RegElement> gv;
  for (const char* n : {"T1", "B1d", "S", "B1t", "B3", "BS3"}) gv[n] = reg_zero();
  gv["B1"] = reg_mono(-1, 0, a);
  gv["B2"] = reg_add(reg_mono(-2, 0, b), reg_add(reg_mono(-1, 0, c), reg_const(d)));
  LinMap phi = character_from_generators(H, gv);
  BirkhoffResult bk = birkhoff_decompose(phi);
  Monomial mB2 = H->parse_monomial("B2");
  RegElement want_minus =
      reg_add(reg_mono(-2, 0, -(b - 2 * a * a)), reg_mono(-1, 0, -c));
  s.check("counterterm two-loop formula",
          reg_equal(bk.minus.value(mB2), want_minus) &&
              reg_equal(bk.plus.value(mB2), reg_const(d)));

  // random character: reconstruction, ranges, idempotence
  LinMap psi = rand_character(H, rng, 1);
  BirkhoffResult r = birkhoff_decompose(psi);
  s.check("decomposition reconstructs",
          linmap_equal(convolve(convolution_inverse(r.minus), r.plus), psi));
  bool ranges = true;
  for (const Monomial& m : H->basis()) {
    if (m.empty()) continue;
    RegElement mv = r.minus.value(m);
    if (!reg_equal(mv, pi_minus(mv))) ranges = false;  // stays singular
    if (!pi_minus(r.plus.value(m)).is_zero()) ranges = false;
  }
  s.check("factor value ranges", ranges);
  BirkhoffResult again = birkhoff_decompose(r.plus);
  s.check("regular part is a fixed point",
          linmap_equal(again.minus, unit_character(H)) &&
              linmap_equal(again.plus, r.plus));

  // locality: pole-cancellation character passes at B2, generic one fails
  std::map<std::string, RegElement> lv = gv;
  lv["B2"] = reg_add(reg_mono(-2, 0, a * a), reg_add(reg_mono(-1, 0, c), reg_const(d)));
  LocalityReport local = check_locality(character_from_generators(H, lv));
  bool b2_local = false, b2_generic = false;
  for (const auto& e : local.entries)
    if (e.generator == "B2") b2_local = e.pass();
  LocalityReport generic = check_locality(phi);
  for (const auto& e : generic.entries)
    if (e.generator == "B2") b2_generic = e.pass();
  s.check("locality detects pole cancellation", b2_local && !b2_generic);
  s.check("dimreg-type detection", local.dimreg_type && generic.dimreg_type);

  std::map<std::string, RegElement> yv = gv;
  yv["B1"] = reg_mono(-1, 1, a);
  LocalityReport withy = check_locality(character_from_generators(H, yv));
  s.check("y values flagged non-dimreg-type", !withy.dimreg_type);
}

void flow_section(Suite& s, HopfPtr H, std::mt19937& rng) {
  // worked beta values
  std::map<std::string, RegElement> gv;
  for (const char* n : {"T1", "B1d", "S", "B1t", "B3", "BS3"}) gv[n] = reg_zero();
  Rational a(3), b(4), c(6), d(9, 2);
  gv["B1"] = reg_mono(-1, 0, a);
  gv["B2"] = reg_add(reg_mono(-2, 0, b), reg_add(reg_mono(-1, 0, c), reg_const(d)));
  LinMap phi = character_from_generators(H, gv);
  LinMap bdr = beta(phi, Sigma::dr);
  Monomial mB1 = H->parse_monomial("B1"), mB2 = H->parse_monomial("B2");
  RegElement want_b2 = reg_add(reg_mono(-1, 0, 2 * (b - a * a)),
                               reg_add(reg_const(2 * c), reg_mono(1, 0, 2 * d)));
  s.check("beta dr worked example", reg_equal(bdr.value(mB1), reg_const(a)) &&
                                        reg_equal(bdr.value(mB2), want_b2));

  std::map<std::string, RegElement> mv = gv;
  mv["B1"] = reg_add(reg_mono(0, 1, Rational(-1)),
                     reg_add(reg_const(Rational(-1, 2)), reg_mono(2, 0, Rational(1))));
  LinMap phim = character_from_generators(H, mv);
  LinMap bmc = beta(phim, Sigma::mc);
  RegElement want_mc = reg_add(reg_const(Rational(-1)), reg_mono(2, 0, Rational(2)));
  s.check("beta mc worked example", reg_equal(bmc.value(mB1), want_mc));

  // closed form == flow route on a random character, both actions
  LinMap psi = rand_character(H, rng, 1);
  bool both = true;
  for (Sigma sig : {Sigma::dr, Sigma::mc}) {
    LinMap closed = beta(psi, sig);
    if (!linmap_equal(closed, beta_via_flow(psi, sig))) both = false;
    if (!is_infinitesimal(closed)) both = false;
  }
  s.check("beta closed form matches flow route", both);

  // rho inverts beta for the dr action, at flow parameter zero
  s.check("rho undoes beta (dr)",
          linmap_equal(flow_at_s0(rho(beta(psi, Sigma::dr), Sigma::dr)), psi));

  // one-loop integral shape: psi(B1) = e^{zs} alpha(B1)/z
  {
    std::map<std::string, RegElement> av;
    av["B1"] = reg_add(reg_const(Rational(5)), reg_mono(1, 0, Rational(7)));
    LinMap alpha = infinitesimal_from_generators(H, av);
    FlowMap flow = rho(alpha, Sigma::dr);
    FlowValue want =
        fv_term(0, 0, 1, reg_mul(reg_mono(-1, 0, Rational(1)), av["B1"]));
    s.check("rho one-loop closed form", fv_equal(flow.value(mB1), want));
  }

  // mc flow diverges on a pole value, naming the monomial
  bool diverged = false;
  std::string msg;
  try {
    std::map<std::string, RegElement> pv;
    pv["B1"] = reg_mono(-1, 0, Rational(1));
    rho(infinitesimal_from_generators(H, pv), Sigma::mc);
  } catch (const flow_divergence_error& e) {
    msg = e.what();
    diverged = msg.find("divergent flow integral") != std::string::npos &&
               msg.find("B1") != std::string::npos;
  }
  s.check("rho mc divergence detected", diverged, msg);

  // z -> 0 limit of beta exists exactly when the two-loop pole cancels
  auto H2 = builtin_algebra(2);
  std::map<std::string, RegElement> two;
  for (const char* n : {"T1", "B1d", "S", "B1t"}) two[n] = reg_zero();
  two["B1"] = reg_mono(-1, 0, a);
  two["B2"] = reg_add(reg_mono(-2, 0, a * a), reg_add(reg_mono(-1, 0, c), reg_const(d)));
  LinMap loc = character_from_generators(H2, two);
  bool limit_ok = false;
  try {
    LinMap lim = limit_z0(beta(loc, Sigma::dr));
    limit_ok = reg_equal(lim.value(H2->parse_monomial("B2")), reg_const(2 * c));
  } catch (const std::domain_error&) {
  }
  two["B2"] = reg_add(reg_mono(-2, 0, a * a + 1),
                      reg_add(reg_mono(-1, 0, c), reg_const(d)));
  bool limit_fails = false;
  try {
    limit_z0(beta(character_from_generators(H2, two), Sigma::dr));
  } catch (const std::domain_error& e) {
    limit_fails = std::string(e.what()).find("B2") != std::string::npos;
  }
  s.check("beta limit iff pole cancellation", limit_ok && limit_fails);
}

void connection_section(Suite& s) {
  auto H = builtin_algebra(2);
  ToyRuleConfig cfg;
  LinMap f = toy_dimreg_character(H, cfg);
  LinMap g = toy_cutoff_character(H, cfg);

  bool c_is_beta = true;
  for (Sigma sig : {Sigma::dr, Sigma::mc}) {
    ConnectionForm form = connection_of(g, sig);
    if (!linmap_equal(flow_at_s0(form.c_coeff), beta(g, sig))) c_is_beta = false;
  }
  s.check("connection dt component specializes to beta", c_is_beta);

  bool gauges = true;
  for (Direction d : {Direction::z, Direction::y, Direction::t})
    if (!gauge_check(f, g, d, Sigma::dr).pass) gauges = false;
  if (!gauge_check(f, g, Direction::t, Sigma::mc).pass) gauges = false;
  s.check("gauge transformation identities", gauges);

  s.check("equivariance dr structural",
          equivariance_check(f, Sigma::dr, Rational(2)).pass);
  s.check("equivariance mc numeric",
          equivariance_check(g, Sigma::mc, Rational(3)).pass);
}

void toyrules_section(Suite& s) {
  ToyRuleConfig cfg;
  cfg.z_truncation = 8;
  RegElement cut = bubble_cutoff_value(cfg);
  s.check("cutoff bubble series",
          reg_render(cut) == "-1/2 - y + z^2 - 3/4*z^4 + 2/3*z^6 - 5/8*z^8",
          reg_render(cut));
  RegElement dim = bubble_dimreg_value(cfg);
  s.check("dimreg bubble pole",
          dim.coeff(-1, 0) == Rational(-1) && dim.coeff(0, 0) == Rational(-1, 2));
  s.check("dimreg bubble stays y-free", dim.y_degree() == 0);

  double pi = std::acos(-1.0);
  double want1 = -pi * pi / 24.0;
  s.check("dimreg linear coefficient",
          std::fabs(rational_to_double(dim.coeff(1, 0)) - want1) < 1e-14);

  // log-divergence bookkeeping matches between the schemes
  s.check("log coefficient matches pole residue", cut.coeff(0, 1) == dim.coeff(-1, 0));

  // closed form at a concrete cutoff
  double L = 50.0;
  double closed = 0.5 * std::log(1.0 + L * L) + 1.0 / (2.0 * (L * L + 1.0)) - 0.5;
  ToyRuleConfig wide;
  double mine = reg_evaluate(bubble_cutoff_value(wide), 1.0 / L, 1.0);
  s.check("cutoff value against closed form", std::fabs(mine - closed) < 1e-12);

  bool rejected = false;
  try {
    ToyRuleConfig badcfg;
    badcfg.m = Rational(-1);
    bubble_cutoff_value(badcfg);
  } catch (const input_error&) {
    rejected = true;
  }
  s.check("negative mass rejected", rejected);
}

}  // namespace

SelftestResult run_selftest(FaultInjection fault, unsigned seed) {
  std::mt19937 rng(seed == 0 ? 20240817u : seed);
  Suite s;

  graph_section(s, rng);
  HopfPtr H = builtin_algebra(3);
  hopf_section(s, H, fault);
  regalg_section(s, rng);
  character_section(s, H, rng);
  birkhoff_section(s, H, rng);
  flow_section(s, H, rng);
  connection_section(s);
  toyrules_section(s);

  s.out << "selftest: " << s.checks << " checks, " << s.failures << " failures\n";
  return {s.failures == 0 ? 0 : 1, s.out.str()};
}

}  // namespace renorm
