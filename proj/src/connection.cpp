#include "renorm/connection.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "renorm/characters.hpp"

namespace renorm {

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::z: return "z";
    case Direction::y: return "y";
    default: return "t";
  }
}

Direction direction_from_name(const std::string& s) {
  if (s == "z") return Direction::z;
  if (s == "y") return Direction::y;
  if (s == "t") return Direction::t;
  throw input_error("unknown direction '" + s + "', want z, y or t");
}

namespace {

LinMap linmap_diff(const LinMap& f, Direction dir) {
  LinMap d;
  d.H = f.H;
  d.flag = MapFlag::general;
  for (const auto& [m, v] : f.values) {
    RegElement w = dir == Direction::z ? diff_z(v) : diff_y(v);
    if (!w.is_zero() || w.trunc != kExactOrder) d.values[m] = std::move(w);
  }
  return d;
}

// The flow ring has no cross-key truncation: once the mc action spreads a
// series over exponent keys, a truncation marker on one coefficient cannot
// say "keys beyond this order are unknown". So the t-direction comparison
// takes stored series at face value; the identity is then exact.
LinMap at_face_value(const LinMap& f) {
  LinMap out = f;
  for (auto& [m, v] : out.values) v = reg_as_exact(v);
  return out;
}

}  // namespace

LinMap log_derivative_D(const LinMap& f, Direction dir, Sigma sigma) {
  if (dir == Direction::t) return beta(f, sigma);
  LinMap out = convolve(convolution_inverse(f), linmap_diff(f, dir));
  out.flag = MapFlag::infinitesimal;
  return out;
}

FlowMap flow_log_derivative(const FlowMap& F) {
  return flow_convolve(flow_inverse(F), flow_d_ds(F));
}

ConnectionForm connection_of(const LinMap& phi, Sigma sigma) {
  FlowMap F = act_sigma(phi, sigma);
  FlowMap Finv = flow_inverse(F);
  ConnectionForm c;
  c.a_coeff = flow_convolve(Finv, flow_d_z(F));
  c.b_coeff = flow_convolve(Finv, flow_d_y(F));
  c.c_coeff = flow_convolve(Finv, flow_d_ds(F));
  return c;
}

GaugeReport gauge_check(const LinMap& f, const LinMap& g, Direction dir, Sigma sigma) {
  if (f.H != g.H)
    throw std::invalid_argument("maps live over different algebras or caps");
  GaugeReport report;
  report.pass = true;
  const HopfAlgebra& H = *f.H;

  auto push = [&](const std::string& id, const Monomial& m, const std::string& lhs,
                  const std::string& rhs, bool equal) {
    report.items.push_back({id, H.render(m), lhs, rhs, equal});
    if (!equal) report.pass = false;
  };

  if (dir == Direction::t) {
    LinMap fe = at_face_value(f), ge = at_face_value(g);
    FlowMap F = act_sigma(fe, sigma), G = act_sigma(ge, sigma);
    FlowMap DF = flow_log_derivative(F);
    FlowMap DG = flow_log_derivative(G);
    FlowMap lhs1 = flow_log_derivative(flow_convolve(F, G));
    FlowMap rhs1 =
        flow_add(DG, flow_convolve(flow_convolve(flow_inverse(G), DF), G));
    LinMap h = convolve(convolution_inverse(fe), ge);
    FlowMap Hf = act_sigma(h, sigma);
    FlowMap DH = flow_log_derivative(Hf);
    FlowMap rhs2 =
        flow_add(DH, flow_convolve(flow_convolve(flow_inverse(Hf), DF), Hf));
    for (const Monomial& m : H.basis()) {
      push("product", m, fv_render(lhs1.value(m)), fv_render(rhs1.value(m)),
           fv_equal(lhs1.value(m), rhs1.value(m)));
      push("pullback", m, fv_render(DG.value(m)), fv_render(rhs2.value(m)),
           fv_equal(DG.value(m), rhs2.value(m)));
    }
    return report;
  }

  LinMap Df = log_derivative_D(f, dir, sigma);
  LinMap Dg = log_derivative_D(g, dir, sigma);
  LinMap lhs1 = log_derivative_D(convolve(f, g), dir, sigma);
  LinMap rhs1 = linmap_add(Dg, convolve(convolve(convolution_inverse(g), Df), g));
  LinMap h = convolve(convolution_inverse(f), g);
  LinMap Dh = log_derivative_D(h, dir, sigma);
  LinMap rhs2 = linmap_add(Dh, convolve(convolve(convolution_inverse(h), Df), h));
  for (const Monomial& m : H.basis()) {
    push("product", m, reg_render(lhs1.value(m)), reg_render(rhs1.value(m)),
         reg_equal(lhs1.value(m), rhs1.value(m)));
    push("pullback", m, reg_render(Dg.value(m)), reg_render(rhs2.value(m)),
         reg_equal(Dg.value(m), rhs2.value(m)));
  }
  return report;
}

std::string gauge_render(const GaugeReport& report) {
  std::ostringstream os;
  for (const GaugeItem& it : report.items) {
    if (it.equal) continue;
    os << it.identity << " " << it.monomial << ": MISMATCH\n  lhs = " << it.lhs
       << "\n  rhs = " << it.rhs << "\n";
  }
  size_t bad = 0;
  for (const GaugeItem& it : report.items)
    if (!it.equal) ++bad;
  os << "checked " << report.items.size() << " identities, " << bad
     << " mismatches: " << (report.pass ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string gauge_to_json_text(const GaugeReport& report) {
  nlohmann::json j;
  j["pass"] = report.pass;
  nlohmann::json arr = nlohmann::json::array();
  for (const GaugeItem& it : report.items)
    arr.push_back({{"identity", it.identity},
                   {"monomial", it.monomial},
                   {"lhs", it.lhs},
                   {"rhs", it.rhs},
                   {"equal", it.equal}});
  j["items"] = std::move(arr);
  return j.dump(2) + "\n";
}

EquivarianceReport equivariance_check(const LinMap& phi, Sigma sigma,
                                      const Rational& u) {
  if (u == 0) throw input_error("equivariance check needs u != 0");
  EquivarianceReport report;
  report.sigma = sigma;
  report.u = rational_to_string(u);
  report.pass = true;
  ConnectionForm form = connection_of(phi, sigma);
  const HopfAlgebra& H = *phi.H;

  if (sigma == Sigma::dr) {
    // c_phi(m) must be (series) * e^{grade(m) z s}: then replacing s by
    // s + log u multiplies the value by u^{grade z}, which is exactly the
    // u-action on it. No sampling needed.
    report.structural = true;
    for (const Monomial& m : H.basis()) {
      EquivarianceItem item;
      item.monomial = H.render(m);
      item.ok = true;
      int n = H.grade(m);
      FlowValue bad;
      for (const auto& [key, c] : form.c_coeff.value(m).terms) {
        auto [k, a, b] = key;
        if (k != 0 || a != 0 || b != n) {
          item.ok = false;
          bad.terms[key] = c;
        }
      }
      if (!item.ok) {
        item.detail = "terms off the grade exponent: " + fv_render(bad);
        report.pass = false;
      }
      report.items.push_back(std::move(item));
    }
    return report;
  }

  if (u < 0)
    throw input_error("equivariance check needs u > 0 for the mc action");
  report.structural = false;
  const double ud = rational_to_double(u);
  const double tol = 1e-9;
  const double samples[][3] = {{0.1, 1.0, 0.5}, {0.05, 1.0, 0.25}, {0.1, 1.0, -0.3}};
  for (const Monomial& m : H.basis()) {
    EquivarianceItem item;
    item.monomial = H.render(m);
    item.ok = true;
    double worst = 0;
    const FlowValue& v = form.c_coeff.value(m);
    for (const auto& s : samples) {
      double lhs = fv_evaluate(v, s[0], s[1], s[2] + std::log(ud));
      double rhs = fv_evaluate(v, ud * s[0], s[1], s[2]);
      double err = std::fabs(lhs - rhs) /
                   std::max(1.0, std::max(std::fabs(lhs), std::fabs(rhs)));
      worst = std::max(worst, err);
    }
    std::ostringstream det;
    det << "max relative deviation " << worst;
    item.detail = det.str();
    item.ok = worst <= tol;
    if (!item.ok) report.pass = false;
    report.items.push_back(std::move(item));
  }
  return report;
}

std::string equivariance_render(const EquivarianceReport& report) {
  std::ostringstream os;
  os << "action " << sigma_name(report.sigma) << ", u = " << report.u << ", "
     << (report.structural ? "structural check" : "numeric spot check") << "\n";
  for (const EquivarianceItem& it : report.items) {
    if (it.ok && report.structural) continue;
    os << it.monomial << ": " << (it.ok ? "ok" : "FAIL");
    if (!it.detail.empty()) os << " (" << it.detail << ")";
    os << "\n";
  }
  os << "equivariance: " << (report.pass ? "pass" : "FAIL") << "\n";
  return os.str();
}

}  // namespace renorm
