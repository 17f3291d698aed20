#include "renorm/birkhoff.hpp"

#include <sstream>
#include <stdexcept>

namespace renorm {

namespace {

// One graded pass: prepared value of m from the counterterm values already
// known on every lower grade.
RegElement prepare_one(const LinMap& phi, const std::map<Monomial, RegElement>& minus,
                       const Monomial& m) {
  RegElement acc = reg_zero();
  for (const auto& [pair, c] : phi.H->coproduct(m).terms) {
    if (pair.first == m) continue;
    auto it = minus.find(pair.first);
    RegElement left = it == minus.end() ? reg_zero() : it->second;
    acc = reg_add(acc, reg_scale(c, reg_mul(left, phi.value(pair.second))));
  }
  return acc;
}

}  // namespace

RegElement prepare(const LinMap& phi, const Monomial& x) {
  if (!is_character(phi)) throw std::invalid_argument("prepare wants a character");
  BirkhoffResult r = birkhoff_decompose(phi);
  auto it = r.prepared.find(x);
  if (it == r.prepared.end())
    throw std::invalid_argument("prepare: monomial outside the basis");
  return it->second;
}

BirkhoffResult birkhoff_decompose(const LinMap& phi) {
  if (!is_character(phi))
    throw std::invalid_argument("birkhoff_decompose wants a character");
  const HopfAlgebra& H = *phi.H;

  std::map<Monomial, RegElement> minus_vals;
  minus_vals[{}] = reg_const(1);
  BirkhoffResult out;
  std::map<std::string, RegElement> minus_gen, plus_gen;

  for (const Monomial& m : H.basis()) {
    if (m.empty()) continue;
    RegElement prep = prepare_one(phi, minus_vals, m);
    out.prepared[m] = prep;
    if (m.size() == 1) {
      RegElement neg = reg_neg(pi_minus(prep));
      minus_vals[m] = neg;
      minus_gen[H.generator(m[0]).name] = neg;
      plus_gen[H.generator(m[0]).name] = reg_add(prep, neg);
    } else {
      // multiplicative extension keeps the graded recursion honest on products
      RegElement v = reg_const(1);
      for (GenId g : m) v = reg_mul(v, minus_vals.at(Monomial{g}));
      minus_vals[m] = v;
    }
  }

  out.minus = character_from_generators(phi.H, minus_gen);
  out.plus = character_from_generators(phi.H, plus_gen);
  return out;
}

FlowValue pi_flow(const FlowValue& v) {
  FlowValue out;
  for (const auto& [key, coeff] : v.terms) {
    auto [k, a, b] = key;
    int depth = coeff.pole_order();
    Rational br_over_rf(1);  // b^r / r!
    for (int r = 0; r <= depth; ++r) {
      if (r > 0) br_over_rf = br_over_rf * b / r;
      if (br_over_rf == 0) break;
      RegElement sing = pi_minus(reg_mul(reg_mono(r, 0, Rational(1)), coeff));
      if (sing.is_zero()) continue;
      auto it = out.terms.find({k + r, a, 0});
      if (it == out.terms.end())
        out.terms[{k + r, a, 0}] = reg_scale(br_over_rf, sing);
      else
        it->second = reg_add(it->second, reg_scale(br_over_rf, sing));
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

FlowMap flow_counterterm(const LinMap& phi, Sigma sigma) {
  if (!is_character(phi))
    throw std::invalid_argument("flow_counterterm wants a character");
  FlowMap F = act_sigma(phi, sigma);
  const HopfAlgebra& H = *phi.H;

  FlowMap out;
  out.H = phi.H;
  std::map<Monomial, FlowValue> minus;
  minus[{}] = fv_const(reg_const(1));
  out.values[{}] = minus.at({});  // the counterterm is a character: unit -> 1
  for (const Monomial& m : H.basis()) {
    if (m.empty()) continue;
    FlowValue prep;
    for (const auto& [pair, c] : H.coproduct(m).terms) {
      if (pair.first == m) continue;
      prep = fv_add(prep, fv_scale(c, fv_mul(minus.at(pair.first), F.value(pair.second))));
    }
    FlowValue v;
    if (m.size() == 1) {
      v = fv_neg(pi_flow(prep));
    } else {
      v = fv_const(reg_const(1));
      for (GenId g : m) v = fv_mul(v, minus.at(Monomial{g}));
    }
    minus[m] = v;
    if (!v.terms.empty()) out.values[m] = std::move(v);
  }
  return out;
}

LocalityReport check_locality(const LinMap& phi) {
  LocalityReport report;
  BirkhoffResult bk = birkhoff_decompose(phi);
  FlowMap fct = flow_counterterm(phi, Sigma::dr);

  report.dimreg_type = true;
  report.local = true;
  for (GenId g = 0; g < phi.H->generator_count(); ++g) {
    const GeneratorInfo& info = phi.H->generator(g);
    if (info.grade > phi.H->grade_cap()) continue;
    Monomial m{g};
    LocalityEntry e;
    e.generator = info.name;
    std::ostringstream bad;

    RegElement val = phi.value(m);
    e.y_free = val.y_degree() == 0;
    if (!e.y_free) {
      report.dimreg_type = false;
      bad << "value has y terms (non-dimreg-type): " << reg_render(y_part(val));
    }

    RegElement ct = bk.minus.value(m);
    RegElement regular = reg_sub(ct, pi_minus(ct));
    RegElement ylayers = y_part(ct);
    e.pole_only = regular.is_zero() && ylayers.is_zero();
    if (!e.pole_only) {
      if (!bad.str().empty()) bad << "; ";
      bad << "counterterm not a pure pole: "
          << reg_render(ylayers.is_zero() ? regular : ylayers);
    }

    FlowValue fv = fct.value(m);
    e.t_independent = true;
    FlowValue dep;
    for (const auto& [key, c] : fv.terms)
      if (std::get<0>(key) != 0) {
        e.t_independent = false;
        dep.terms[key] = c;
      }
    if (!e.t_independent) {
      if (!bad.str().empty()) bad << "; ";
      bad << "flowed counterterm depends on the scale: " << fv_render(dep);
    }

    e.offending = bad.str();
    if (!e.pass()) report.local = false;
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string locality_render(const LocalityReport& report) {
  std::ostringstream os;
  os << "dimreg-type: " << (report.dimreg_type ? "yes" : "no") << "\n";
  for (const LocalityEntry& e : report.entries) {
    os << e.generator << ": " << (e.pass() ? "local" : "NOT local");
    if (!e.offending.empty()) os << " (" << e.offending << ")";
    os << "\n";
  }
  os << "counterterms local: " << (report.local ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace renorm
