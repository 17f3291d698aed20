#pragma once

#include <map>
#include <string>
#include <vector>

#include "renorm/characters.hpp"
#include "renorm/flow.hpp"

// Bogoliubov preparation and the Birkhoff factorization of a character with
// respect to the minimal-subtraction projection pi_minus, plus the locality
// checks on counterterms that make it useful.

namespace renorm {

struct BirkhoffResult {
  LinMap minus;  // counterterm character; values on ker(counit) are pure singular parts
  LinMap plus;   // renormalized character; values have no singular part
  std::map<Monomial, RegElement> prepared;  // Bogoliubov-prepared values on the basis
};

// phi(x) + sum over proper coproduct legs of minus(left)*phi(right).
// Standalone convenience; birkhoff_decompose computes all of them in one pass.
RegElement prepare(const LinMap& phi, const Monomial& x);

// minus(g) = -pi_minus(prepare(g)), plus(g) = (id - pi_minus)(prepare(g)),
// both extended multiplicatively. Satisfies convolve(inverse(minus), plus) == phi.
BirkhoffResult birkhoff_decompose(const LinMap& phi);

// Minimal subtraction acting on a flow value: each term coeff * s^k e^{(a+bz)s}
// is expanded e^{bzs} = sum (bzs)^r / r! far enough to reach every singular
// order of coeff, and the singular parts are collected at keys (k+r, a, 0).
FlowValue pi_flow(const FlowValue& v);

// Counterterm of the flowed character act_sigma(phi, sigma): the Bogoliubov
// recursion at flow level with -pi_flow in place of -pi_minus, extended
// multiplicatively to the whole basis.
FlowMap flow_counterterm(const LinMap& phi, Sigma sigma);

struct LocalityEntry {
  std::string generator;
  bool y_free = false;         // generator value has no y terms
  bool pole_only = false;      // counterterm value is a pure z-pole series
  bool t_independent = false;  // flowed counterterm carries no power of s
  std::string offending;       // rendered offending pieces, empty when clean
  bool pass() const { return y_free && pole_only && t_independent; }
};

struct LocalityReport {
  bool dimreg_type = false;  // every generator value is y-free
  bool local = false;        // every entry passes
  std::vector<LocalityEntry> entries;
};

// Per-generator locality of counterterms: y-free values must produce pure-pole
// counterterms, and the counterterm of the dr-flowed character must not depend
// on the flow parameter.
LocalityReport check_locality(const LinMap& phi);

std::string locality_render(const LocalityReport& report);

}  // namespace renorm
