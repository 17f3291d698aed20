#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "renorm/rational.hpp"

namespace renorm {

// Truncation order used for elements that are exactly known (finite sums,
// counterterms, poles). Large enough that arithmetic never confuses it with a
// real working order.
constexpr int kExactOrder = 1 << 20;

// Element of the regulator algebra: a finite sum of c * z^i * y^j with exact
// rational c, i any integer, j >= 0. `trunc` is the z-truncation order Q: the
// coefficient of z^i is trusted only for i <= Q, and entries above Q are never
// stored. The relation e^y = z*m is NOT applied as a rewrite; it only enters
// through numeric evaluation, where y = log(z*m).
struct RegElement {
  std::map<std::pair<int, int>, Rational> terms;
  int trunc = kExactOrder;

  bool is_zero() const { return terms.empty(); }
  Rational coeff(int i, int j) const {
    auto it = terms.find({i, j});
    return it == terms.end() ? Rational(0) : it->second;
  }
  // Smallest stored z power, or trunc + 1 when nothing is stored (a zero that
  // is only known up to its truncation).
  int min_z_order() const;
  int pole_order() const;  // max(0, -min stored z power)
  int y_degree() const;    // max stored y power, 0 if none
};

RegElement reg_zero(int trunc = kExactOrder);
RegElement reg_const(const Rational& c);
RegElement reg_mono(int i, int j, const Rational& c, int trunc = kExactOrder);
RegElement reg_from_terms(
    const std::vector<std::pair<std::pair<int, int>, Rational>>& terms,
    int trunc = kExactOrder);

RegElement reg_add(const RegElement& a, const RegElement& b);
RegElement reg_sub(const RegElement& a, const RegElement& b);
RegElement reg_neg(const RegElement& a);
RegElement reg_scale(const Rational& c, const RegElement& a);
// Truncation of a product: min(Qa + ord(b), Qb + ord(a)); multiplying by a
// pole of order p costs p orders, exactly as hand truncation would.
RegElement reg_mul(const RegElement& a, const RegElement& b);
RegElement reg_pow(const RegElement& a, int n);

// Minimal subtraction: keeps z^i y^j with i < 0 (any j) plus i = 0, j > 0.
// This is a weight-one Rota-Baxter projection; image and kernel are both
// subalgebras. The singular part of a series known to order Q >= 0 is exact.
RegElement pi_minus(const RegElement& a);
// (pi(a), a - pi(a))
std::pair<RegElement, RegElement> reg_split(const RegElement& a);

RegElement diff_z(const RegElement& a);  // lowers trunc by one
RegElement diff_y(const RegElement& a);

// Discards stored terms above q and lowers the trusted order.
RegElement truncate_to(const RegElement& a, int q);

// The terms carrying a positive power of y (same trusted order).
RegElement y_part(const RegElement& a);

// Same stored terms, but trusted at every order (drops the truncation marker).
RegElement reg_as_exact(const RegElement& a);

// Numeric substitution z = z0, y = log(z0 * m). z0 may be negative only for
// y-free elements (the log leg is then never taken).
double reg_evaluate(const RegElement& a, double z0, double m);

// Coefficient-wise equality on the region both sides trust: all entries with
// z power <= min(Qa, Qb) must agree.
bool reg_equal(const RegElement& a, const RegElement& b);

// Deterministic rendering, terms ordered by (z power, y power):
// "3*z^-2 - 1/2 + 5*y^2".
std::string reg_render(const RegElement& a);

}  // namespace renorm
