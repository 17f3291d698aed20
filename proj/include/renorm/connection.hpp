#pragma once

#include <string>
#include <vector>

#include "renorm/flow.hpp"

// Logarithmic-derivative connection coefficients for a flowed character, the
// D operator, the gauge-transformation identity tying two regularization
// schemes together, and the scale-equivariance check of the dt component.

namespace renorm {

enum class Direction { z, y, t };

std::string direction_name(Direction d);
Direction direction_from_name(const std::string& s);

// f^{*-1} * (directional derivative of f). For z and y the derivative acts on
// the stored series; for t the character is flowed by sigma first and the
// result is read off at s=0 (this is exactly beta).
LinMap log_derivative_D(const LinMap& f, Direction dir, Sigma sigma = Sigma::dr);

// F^{-1} * dF/ds at flow level, keeping the full s dependence.
FlowMap flow_log_derivative(const FlowMap& F);

// Components of F^{-1} * dF along dz, dy, dt for F the flowed character.
struct ConnectionForm {
  FlowMap a_coeff;  // dz
  FlowMap b_coeff;  // dy
  FlowMap c_coeff;  // dt; at s=0 this is beta(phi, sigma)
};

ConnectionForm connection_of(const LinMap& phi, Sigma sigma);

// One compared monomial of one identity; lhs/rhs are rendered values.
struct GaugeItem {
  std::string identity;
  std::string monomial;
  std::string lhs, rhs;
  bool equal = false;
};

struct GaugeReport {
  bool pass = false;
  std::vector<GaugeItem> items;
};

// Checks two forms of the gauge-transformation law in the given direction,
// exactly, on every basis monomial:
//   product:  D(f*g)  == D(g) + g^{*-1} * D(f) * g
//   pullback: D(g)    == D(h) + h^{*-1} * D(f) * h   with h = f^{*-1} * g
GaugeReport gauge_check(const LinMap& f, const LinMap& g, Direction dir,
                        Sigma sigma = Sigma::dr);

std::string gauge_render(const GaugeReport& report);
std::string gauge_to_json_text(const GaugeReport& report);

struct EquivarianceItem {
  std::string monomial;
  bool ok = false;
  std::string detail;
};

struct EquivarianceReport {
  Sigma sigma = Sigma::dr;
  std::string u;
  bool structural = false;  // proven by exponent shape, not sampling
  bool pass = false;
  std::vector<EquivarianceItem> items;
};

// Scale equivariance of the dt component: c_phi at flow parameter t*u equals
// the u-action applied to c_phi at t. Structural for dr (every term must sit
// at exponent grade*z with no s powers), numeric spot checks for mc.
EquivarianceReport equivariance_check(const LinMap& phi, Sigma sigma,
                                      const Rational& u);

std::string equivariance_render(const EquivarianceReport& report);

}  // namespace renorm
