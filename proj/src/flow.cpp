#include "renorm/flow.hpp"

#include <cmath>
#include <sstream>

namespace renorm {

std::string sigma_name(Sigma s) { return s == Sigma::dr ? "dr" : "mc"; }

Sigma sigma_from_name(const std::string& s) {
  if (s == "dr") return Sigma::dr;
  if (s == "mc") return Sigma::mc;
  throw input_error("unknown action '" + s + "', want dr or mc");
}

namespace {

void fv_accumulate(FlowValue& out, const FlowKey& key, const RegElement& c) {
  auto it = out.terms.find(key);
  if (it == out.terms.end()) {
    if (!c.is_zero() || c.trunc != kExactOrder) out.terms[key] = c;
    return;
  }
  it->second = reg_add(it->second, c);
  if (it->second.is_zero() && it->second.trunc == kExactOrder) out.terms.erase(it);
}

}  // namespace

FlowValue fv_zero() { return {}; }

FlowValue fv_const(const RegElement& c) { return fv_term(0, 0, 0, c); }

FlowValue fv_term(int k, int a, int b, const RegElement& c) {
  FlowValue v;
  if (!c.is_zero() || c.trunc != kExactOrder) v.terms[{k, a, b}] = c;
  return v;
}

FlowValue fv_add(const FlowValue& x, const FlowValue& y) {
  FlowValue r = x;
  for (const auto& [key, c] : y.terms) fv_accumulate(r, key, c);
  return r;
}

FlowValue fv_neg(const FlowValue& x) { return fv_scale(Rational(-1), x); }

FlowValue fv_scale(const Rational& c, const FlowValue& x) {
  FlowValue r;
  if (c == 0) return r;
  for (const auto& [key, v] : x.terms) r.terms[key] = reg_scale(c, v);
  return r;
}

FlowValue fv_mul(const FlowValue& x, const FlowValue& y) {
  FlowValue r;
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      FlowKey key{std::get<0>(kx) + std::get<0>(ky), std::get<1>(kx) + std::get<1>(ky),
                  std::get<2>(kx) + std::get<2>(ky)};
      fv_accumulate(r, key, reg_mul(cx, cy));
    }
  return r;
}

FlowValue fv_d_ds(const FlowValue& x) {
  FlowValue r;
  for (const auto& [key, c] : x.terms) {
    auto [k, a, b] = key;
    if (k > 0) fv_accumulate(r, {k - 1, a, b}, reg_scale(Rational(k), c));
    RegElement lin = reg_scale(Rational(a), c);
    if (b != 0) lin = reg_add(lin, reg_mul(reg_mono(1, 0, Rational(b)), c));
    fv_accumulate(r, {k, a, b}, lin);
  }
  return r;
}

FlowValue fv_d_z(const FlowValue& x) {
  FlowValue r;
  for (const auto& [key, c] : x.terms) {
    auto [k, a, b] = key;
    fv_accumulate(r, {k, a, b}, diff_z(c));
    if (b != 0) fv_accumulate(r, {k + 1, a, b}, reg_scale(Rational(b), c));
  }
  return r;
}

FlowValue fv_d_y(const FlowValue& x) {
  FlowValue r;
  for (const auto& [key, c] : x.terms) fv_accumulate(r, key, diff_y(c));
  return r;
}

bool fv_equal(const FlowValue& x, const FlowValue& y) {
  auto covered = [](const FlowValue& p, const FlowValue& q) {
    for (const auto& [key, c] : p.terms) {
      auto it = q.terms.find(key);
      if (it == q.terms.end()) {
        if (!reg_equal(c, reg_zero())) return false;
      } else if (!reg_equal(c, it->second)) {
        return false;
      }
    }
    return true;
  };
  return covered(x, y) && covered(y, x);
}

RegElement fv_at_s0(const FlowValue& x) {
  RegElement r = reg_zero();
  for (const auto& [key, c] : x.terms)
    if (std::get<0>(key) == 0) r = reg_add(r, c);
  return r;
}

RegElement fv_dds_at_s0(const FlowValue& x) { return fv_at_s0(fv_d_ds(x)); }

double fv_evaluate(const FlowValue& x, double z0, double m, double s) {
  double sum = 0;
  for (const auto& [key, c] : x.terms) {
    auto [k, a, b] = key;
    sum += reg_evaluate(c, z0, m) * std::pow(s, k) * std::exp((a + b * z0) * s);
  }
  return sum;
}

std::string fv_render(const FlowValue& x) {
  if (x.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : x.terms) {
    auto [k, a, b] = key;
    if (!first) os << " + ";
    first = false;
    os << "(" << reg_render(c) << ")";
    if (k > 0) {
      os << "*s";
      if (k > 1) os << "^" << k;
    }
    if (a != 0 || b != 0) {
      os << "*e^((";
      if (a != 0) os << a;
      if (b != 0) {
        if (a != 0 && b > 0) os << "+";
        if (b == -1)
          os << "-z";
        else if (b == 1)
          os << "z";
        else
          os << b << "z";
      }
      os << ")s)";
    }
  }
  return os.str();
}

FlowValue flow_integrate(int k, int a, int b, const RegElement& coeff) {
  if (coeff.is_zero() && coeff.trunc == kExactOrder) return fv_zero();
  if (a < 0 || (a == 0 && b == 0)) {
    std::string expo;
    if (a != 0 || b == 0) expo += std::to_string(a);
    if (b != 0) {
      if (a != 0 && b > 0) expo += "+";
      expo += (b == 1 ? "" : b == -1 ? "-" : std::to_string(b)) + std::string("z");
    }
    throw flow_divergence_error("divergent flow integral: exponent (" + expo +
                                ")s with coefficient " + reg_render(coeff));
  }
  FlowValue out;
  for (int j = 0; j <= k; ++j) {
    int m = k - j + 1;  // power of 1/c
    Rational sign = ((k - j) % 2 == 0) ? Rational(1) : Rational(-1);
    Rational factor = sign * factorial(k) / factorial(j);
    RegElement piece;
    if (b == 0) {
      piece = reg_scale(rational_pow(Rational(a), -m), coeff);
    } else if (a == 0) {
      piece = reg_mul(reg_mono(-m, 0, rational_pow(Rational(b), -m)), coeff);
    } else {
      // 1/(a+bz)^m as a z series, long enough that the product keeps every
      // order the coefficient trusts.
      int span = coeff.trunc >= (kExactOrder >> 1)
                     ? 32
                     : std::max(0, coeff.trunc - coeff.min_z_order());
      RegElement series = reg_zero(span);
      for (int r = 0; r <= span; ++r) {
        Rational c_r = ((r % 2 == 0) ? Rational(1) : Rational(-1)) *
                       binomial(m + r - 1, r) * rational_pow(Rational(b), r) /
                       rational_pow(Rational(a), m + r);
        series = reg_add(series, reg_mono(r, 0, c_r, span));
      }
      piece = reg_mul(series, coeff);
    }
    fv_accumulate(out, {j, a, b}, reg_scale(factor, piece));
  }
  return out;
}

FlowMap flow_from_linmap(const LinMap& f) {
  FlowMap F;
  F.H = f.H;
  for (const auto& [m, v] : f.values) {
    FlowValue fv = fv_const(v);
    if (!fv.terms.empty()) F.values[m] = std::move(fv);
  }
  return F;
}

FlowMap act_sigma(const LinMap& f, Sigma sigma) {
  FlowMap F;
  F.H = f.H;
  for (const Monomial& m : f.H->basis()) {
    RegElement v = f.value(m);
    if (v.is_zero() && v.trunc == kExactOrder) continue;
    FlowValue fv;
    if (sigma == Sigma::dr) {
      fv = fv_term(0, 0, f.H->grade(m), v);
    } else {
      // z^i y^j -> e^{is} z^i (y+s)^j, expanded binomially in s.
      for (const auto& [ij, c] : v.terms) {
        auto [i, j] = ij;
        for (int r = 0; r <= j; ++r)
          fv_accumulate(fv, {r, i, 0}, reg_mono(i, j - r, binomial(j, r) * c, v.trunc));
      }
      if (fv.terms.empty() && v.trunc != kExactOrder)
        fv_accumulate(fv, {0, 0, 0}, v);  // keep the truncation marker
    }
    if (!fv.terms.empty()) F.values[m] = std::move(fv);
  }
  return F;
}

FlowMap flow_act_dr(const FlowMap& F) {
  FlowMap G;
  G.H = F.H;
  for (const auto& [m, fv] : F.values) {
    int n = F.H->grade(m);
    FlowValue out;
    for (const auto& [key, c] : fv.terms) {
      auto [k, a, b] = key;
      out.terms[{k, a, b + n}] = c;
    }
    G.values[m] = std::move(out);
  }
  return G;
}

FlowMap flow_convolve(const FlowMap& F, const FlowMap& G) {
  if (F.H != G.H) throw std::invalid_argument("flows over different algebras");
  FlowMap R;
  R.H = F.H;
  for (const Monomial& m : F.H->basis()) {
    FlowValue v;
    for (const auto& [pair, c] : F.H->coproduct(m).terms)
      v = fv_add(v, fv_scale(c, fv_mul(F.value(pair.first), G.value(pair.second))));
    if (!v.terms.empty()) R.values[m] = std::move(v);
  }
  return R;
}

FlowMap flow_inverse(const FlowMap& F) {
  FlowMap R;
  R.H = F.H;
  for (const Monomial& m : F.H->basis()) {
    FlowValue v;
    for (const auto& [mm, c] : F.H->antipode(m).terms)
      v = fv_add(v, fv_scale(c, F.value(mm)));
    if (!v.terms.empty()) R.values[m] = std::move(v);
  }
  return R;
}

FlowMap flow_add(const FlowMap& F, const FlowMap& G) {
  if (F.H != G.H) throw std::invalid_argument("flows over different algebras");
  FlowMap R = F;
  for (const auto& [m, v] : G.values) {
    FlowValue w = fv_add(R.value(m), v);
    if (w.terms.empty())
      R.values.erase(m);
    else
      R.values[m] = std::move(w);
  }
  return R;
}

namespace {

FlowMap flow_apply(const FlowMap& F, FlowValue (*op)(const FlowValue&)) {
  FlowMap R;
  R.H = F.H;
  for (const auto& [m, v] : F.values) {
    FlowValue w = op(v);
    if (!w.terms.empty()) R.values[m] = std::move(w);
  }
  return R;
}

}  // namespace

FlowMap flow_d_ds(const FlowMap& F) { return flow_apply(F, fv_d_ds); }
FlowMap flow_d_z(const FlowMap& F) { return flow_apply(F, fv_d_z); }
FlowMap flow_d_y(const FlowMap& F) { return flow_apply(F, fv_d_y); }

bool flow_equal(const FlowMap& F, const FlowMap& G) {
  if (F.H != G.H) throw std::invalid_argument("flows over different algebras");
  for (const Monomial& m : F.H->basis())
    if (!fv_equal(F.value(m), G.value(m))) return false;
  return true;
}

LinMap flow_at_s0(const FlowMap& F) {
  LinMap f;
  f.H = F.H;
  f.flag = MapFlag::general;
  for (const auto& [m, v] : F.values) {
    RegElement r = fv_at_s0(v);
    if (!r.is_zero() || r.trunc != kExactOrder) f.values[m] = std::move(r);
  }
  return f;
}

LinMap flow_dds_at_s0(const FlowMap& F) {
  LinMap f;
  f.H = F.H;
  f.flag = MapFlag::general;
  for (const auto& [m, v] : F.values) {
    RegElement r = fv_dds_at_s0(v);
    if (!r.is_zero() || r.trunc != kExactOrder) f.values[m] = std::move(r);
  }
  return f;
}

std::string flowmap_render(const FlowMap& F) {
  std::ostringstream os;
  for (const Monomial& m : F.H->basis()) {
    FlowValue v = F.value(m);
    if (v.terms.empty()) continue;
    os << F.H->render(m) << " -> " << fv_render(v) << "\n";
  }
  std::string s = os.str();
  return s.empty() ? "0\n" : s;
}

LinMap beta_via_flow(const LinMap& phi, Sigma sigma) {
  FlowMap F = act_sigma(phi, sigma);
  LinMap out = flow_at_s0(flow_convolve(flow_inverse(F), flow_d_ds(F)));
  out.flag = MapFlag::infinitesimal;
  return out;
}

LinMap beta(const LinMap& phi, Sigma sigma) {
  LinMap phi_inv = convolution_inverse(phi);
  LinMap deriv;
  deriv.H = phi.H;
  deriv.flag = MapFlag::general;
  if (sigma == Sigma::dr) {
    for (const auto& [m, v] : phi.values) {
      int n = phi.H->grade(m);
      if (n != 0) deriv.values[m] = reg_scale(Rational(n), v);
    }
  } else {
    for (const auto& [m, v] : phi.values) {
      RegElement d = reg_add(reg_mul(reg_mono(1, 0, Rational(1)), diff_z(v)), diff_y(v));
      if (!d.is_zero() || d.trunc != kExactOrder) deriv.values[m] = std::move(d);
    }
  }
  LinMap out = convolve(phi_inv, deriv);
  if (sigma == Sigma::dr) {
    LinMap scaled;
    scaled.H = out.H;
    for (const auto& [m, v] : out.values) {
      RegElement w = reg_mul(reg_mono(1, 0, Rational(1)), v);
      if (!w.is_zero() || w.trunc != kExactOrder) scaled.values[m] = std::move(w);
    }
    out = std::move(scaled);
  }
  out.flag = MapFlag::infinitesimal;
  return out;
}

LinMap limit_z0(const LinMap& alpha) {
  LinMap out;
  out.H = alpha.H;
  out.flag = alpha.flag;
  for (const Monomial& m : alpha.H->basis()) {
    RegElement v = alpha.value(m);
    RegElement sing = pi_minus(v);
    if (!sing.is_zero())
      throw std::domain_error("non-local map: limit z->0 does not exist at " +
                              alpha.H->render(m) + ", singular part " +
                              reg_render(sing));
    Rational c = v.coeff(0, 0);
    if (c != 0) out.values[m] = reg_const(c);
  }
  return out;
}

FlowMap rho(const LinMap& alpha, Sigma sigma) {
  FlowMap Fa = act_sigma(alpha, sigma);
  FlowMap psi;
  psi.H = alpha.H;
  psi.values[{}] = fv_const(reg_const(1));
  // Basis is graded, so psi on every proper left leg is already known.
  for (const Monomial& m : alpha.H->basis()) {
    if (m.empty()) continue;
    FlowValue integrand;
    for (const auto& [pair, c] : alpha.H->coproduct(m).terms) {
      if (pair.first == m) continue;  // alpha(1) = 0 kills this leg anyway
      integrand = fv_add(
          integrand, fv_scale(c, fv_mul(psi.value(pair.first), Fa.value(pair.second))));
    }
    FlowValue v;
    for (const auto& [key, c] : integrand.terms) {
      auto [k, a, b] = key;
      try {
        v = fv_add(v, flow_integrate(k, a, b, c));
      } catch (const flow_divergence_error& e) {
        throw flow_divergence_error(std::string(e.what()) + " at monomial " +
                                    alpha.H->render(m));
      }
    }
    if (!v.terms.empty()) psi.values[m] = std::move(v);
  }
  return psi;
}

}  // namespace renorm
