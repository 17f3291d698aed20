#pragma once

#include <map>
#include <string>
#include <tuple>

#include "renorm/characters.hpp"

namespace renorm {

// One-parameter renormalization group actions on characters: sigma_dr scales
// grade n values by t^{nz} = e^{nzs}; sigma_mc substitutes z -> tz, y -> y+s.
enum class Sigma { dr, mc };

std::string sigma_name(Sigma s);
Sigma sigma_from_name(const std::string& s);

struct flow_divergence_error : std::runtime_error {
  explicit flow_divergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Value with explicit flow dependence: a sum of coeff * s^k * e^{(a+bz)s}
// keyed by (k, a, b), s = log t. Closed under sum, product, d/ds, d/dz, d/dy.
using FlowKey = std::tuple<int, int, int>;  // (k, a, b)

struct FlowValue {
  std::map<FlowKey, RegElement> terms;

  bool is_zero() const { return terms.empty(); }
};

FlowValue fv_zero();
FlowValue fv_const(const RegElement& c);              // k = a = b = 0
FlowValue fv_term(int k, int a, int b, const RegElement& c);
FlowValue fv_add(const FlowValue& x, const FlowValue& y);
FlowValue fv_neg(const FlowValue& x);
FlowValue fv_scale(const Rational& c, const FlowValue& x);
FlowValue fv_mul(const FlowValue& x, const FlowValue& y);
FlowValue fv_d_ds(const FlowValue& x);  // k s^{k-1} + (a+bz) s^k pieces
FlowValue fv_d_z(const FlowValue& x);   // coeff' + b*s*coeff
FlowValue fv_d_y(const FlowValue& x);
bool fv_equal(const FlowValue& x, const FlowValue& y);

RegElement fv_at_s0(const FlowValue& x);      // sum of k = 0 coefficients
RegElement fv_dds_at_s0(const FlowValue& x);  // derivative then s = 0

double fv_evaluate(const FlowValue& x, double z0, double m, double s);
std::string fv_render(const FlowValue& x);

// The regularized integral of one flow term from t = 0 (s = -infinity) to a
// symbolic upper limit:
//   int s^k e^{cs} ds = e^{cs} sum_{j<=k} (-1)^{k-j} (k!/j!) s^j / c^{k-j+1},
// c = a + bz. The boundary term at t = 0 vanishes literally for a > 0 and
// formally in z for a = 0, b != 0 (1/c then contributes z-poles). Throws
// flow_divergence_error for a < 0 or a = b = 0.
FlowValue flow_integrate(int k, int a, int b, const RegElement& coeff);

// Character-valued flow: monomial -> FlowValue over a shared algebra.
struct FlowMap {
  HopfPtr H;
  std::map<Monomial, FlowValue> values;

  FlowValue value(const Monomial& m) const {
    auto it = values.find(m);
    return it == values.end() ? fv_zero() : it->second;
  }
};

FlowMap flow_from_linmap(const LinMap& f);  // constant in t
FlowMap act_sigma(const LinMap& f, Sigma sigma);
// t^{zY} applied to an already flowing map: shifts b by the grade. Exponent
// bookkeeping for the cocycle property of sigma_dr.
FlowMap flow_act_dr(const FlowMap& F);

FlowMap flow_convolve(const FlowMap& F, const FlowMap& G);
// Convolution inverse as composition with the antipode; valid for flows of
// characters (multiplicative values).
FlowMap flow_inverse(const FlowMap& F);
FlowMap flow_add(const FlowMap& F, const FlowMap& G);
FlowMap flow_d_ds(const FlowMap& F);
FlowMap flow_d_z(const FlowMap& F);
FlowMap flow_d_y(const FlowMap& F);
bool flow_equal(const FlowMap& F, const FlowMap& G);

LinMap flow_at_s0(const FlowMap& F);
LinMap flow_dds_at_s0(const FlowMap& F);
std::string flowmap_render(const FlowMap& F);

// Geometric beta function of the action: [sigma_t(phi)^{*-1} * t d/dt
// sigma_t(phi)] at t = 1, computed in the flow ring and specialized.
LinMap beta_via_flow(const LinMap& phi, Sigma sigma);

// Closed forms: beta_dr = z*(phi^{*-1} * Y phi),
// beta_mc = phi^{*-1} * (z d_z + d_y) phi. Agree with beta_via_flow.
LinMap beta(const LinMap& phi, Sigma sigma);

// Constant-term extraction per monomial; defined exactly when no pole and no
// pure-y term survives (the minimal-subtraction singular part vanishes).
// Throws std::domain_error flagging the map as non-local and naming the first
// offending monomial.
LinMap limit_z0(const LinMap& alpha);

// Solves t d/dt psi = psi * alpha_sigma with psi(1) = 1 grade by grade,
// integrating flow terms with the regularized lower limit. Total for
// sigma_dr; for sigma_mc it aborts with flow_divergence_error when a value
// carries nonpositive z powers.
FlowMap rho(const LinMap& alpha, Sigma sigma);

}  // namespace renorm
