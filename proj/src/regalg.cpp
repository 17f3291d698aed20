#include "renorm/regalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace renorm {

namespace {

int snap(int trunc) {
  // Orders in the exact band collapse back to the marker so that exact * pole
  // stays exact instead of drifting to kExactOrder - p.
  return trunc >= (kExactOrder >> 1) ? kExactOrder : trunc;
}

void normalize(RegElement& a) {
  a.trunc = snap(a.trunc);
  for (auto it = a.terms.begin(); it != a.terms.end();) {
    if (it->second == 0 || it->first.first > a.trunc)
      it = a.terms.erase(it);
    else
      ++it;
  }
}

}  // namespace

int RegElement::min_z_order() const {
  if (terms.empty()) return trunc == kExactOrder ? kExactOrder : trunc + 1;
  return terms.begin()->first.first;  // map ordered by (i, j)
}

int RegElement::pole_order() const {
  if (terms.empty()) return 0;
  int lo = terms.begin()->first.first;
  return lo < 0 ? -lo : 0;
}

int RegElement::y_degree() const {
  int d = 0;
  for (const auto& [ij, c] : terms) d = std::max(d, ij.second);
  return d;
}

RegElement reg_zero(int trunc) {
  RegElement a;
  a.trunc = snap(trunc);
  return a;
}

RegElement reg_const(const Rational& c) { return reg_mono(0, 0, c); }

RegElement reg_mono(int i, int j, const Rational& c, int trunc) {
  if (j < 0) throw std::invalid_argument("reg_mono: negative y power");
  RegElement a;
  a.trunc = snap(trunc);
  if (c != 0 && i <= a.trunc) a.terms[{i, j}] = c;
  return a;
}

RegElement reg_from_terms(
    const std::vector<std::pair<std::pair<int, int>, Rational>>& terms,
    int trunc) {
  RegElement a;
  a.trunc = trunc;
  for (const auto& [ij, c] : terms) {
    if (ij.second < 0) throw std::invalid_argument("reg_from_terms: negative y power");
    a.terms[ij] += c;
  }
  normalize(a);
  return a;
}

RegElement reg_add(const RegElement& a, const RegElement& b) {
  RegElement r = a;
  r.trunc = std::min(a.trunc, b.trunc);
  for (const auto& [ij, c] : b.terms) r.terms[ij] += c;
  normalize(r);
  return r;
}

RegElement reg_sub(const RegElement& a, const RegElement& b) {
  return reg_add(a, reg_neg(b));
}

RegElement reg_neg(const RegElement& a) { return reg_scale(Rational(-1), a); }

RegElement reg_scale(const Rational& c, const RegElement& a) {
  RegElement r;
  r.trunc = a.trunc;
  if (c == 0) return r;
  for (const auto& [ij, v] : a.terms) r.terms[ij] = c * v;
  return r;
}

RegElement reg_mul(const RegElement& a, const RegElement& b) {
  RegElement r;
  long qa = static_cast<long>(a.trunc) + b.min_z_order();
  long qb = static_cast<long>(b.trunc) + a.min_z_order();
  r.trunc = static_cast<int>(std::min({qa, qb, static_cast<long>(kExactOrder)}));
  for (const auto& [ija, ca] : a.terms)
    for (const auto& [ijb, cb] : b.terms) {
      int i = ija.first + ijb.first;
      if (i > r.trunc) continue;
      r.terms[{i, ija.second + ijb.second}] += ca * cb;
    }
  normalize(r);
  return r;
}

RegElement reg_pow(const RegElement& a, int n) {
  if (n < 0) throw std::invalid_argument("reg_pow: negative power");
  RegElement r = reg_const(1);
  for (int k = 0; k < n; ++k) r = reg_mul(r, a);
  return r;
}

RegElement pi_minus(const RegElement& a) {
  RegElement r;
  r.trunc = a.trunc >= 0 ? kExactOrder : a.trunc;
  for (const auto& [ij, c] : a.terms)
    if (ij.first < 0 || (ij.first == 0 && ij.second > 0)) r.terms[ij] = c;
  return r;
}

std::pair<RegElement, RegElement> reg_split(const RegElement& a) {
  RegElement minus = pi_minus(a);
  RegElement plus;
  plus.trunc = a.trunc;
  for (const auto& [ij, c] : a.terms)
    if (!(ij.first < 0 || (ij.first == 0 && ij.second > 0))) plus.terms[ij] = c;
  return {std::move(minus), std::move(plus)};
}

RegElement diff_z(const RegElement& a) {
  RegElement r;
  r.trunc = a.trunc == kExactOrder ? kExactOrder : a.trunc - 1;
  for (const auto& [ij, c] : a.terms)
    if (ij.first != 0) r.terms[{ij.first - 1, ij.second}] += c * ij.first;
  normalize(r);
  return r;
}

RegElement diff_y(const RegElement& a) {
  RegElement r;
  r.trunc = a.trunc;
  for (const auto& [ij, c] : a.terms)
    if (ij.second > 0) r.terms[{ij.first, ij.second - 1}] += c * ij.second;
  normalize(r);
  return r;
}

RegElement truncate_to(const RegElement& a, int q) {
  RegElement r = a;
  r.trunc = std::min(a.trunc, q);
  normalize(r);
  return r;
}

RegElement y_part(const RegElement& a) {
  RegElement r;
  r.trunc = a.trunc;
  for (const auto& [ij, c] : a.terms)
    if (ij.second > 0) r.terms[ij] = c;
  return r;
}

RegElement reg_as_exact(const RegElement& a) {
  RegElement r = a;
  r.trunc = kExactOrder;
  return r;
}

namespace {

double powi(double x, int n) {
  if (n < 0) return 1.0 / powi(x, -n);
  double r = 1.0, b = x;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

}  // namespace

double reg_evaluate(const RegElement& a, double z0, double m) {
  if (z0 == 0) throw std::domain_error("reg_evaluate: z0 = 0");
  bool needs_y = false;
  for (const auto& [ij, c] : a.terms)
    if (ij.second > 0) needs_y = true;
  double y = 0;
  if (needs_y) {
    if (z0 * m <= 0)
      throw std::domain_error("reg_evaluate: log(z0*m) undefined for z0*m <= 0");
    y = std::log(z0 * m);
  }
  double sum = 0;
  for (const auto& [ij, c] : a.terms)
    sum += rational_to_double(c) * powi(z0, ij.first) * powi(y, ij.second);
  return sum;
}

bool reg_equal(const RegElement& a, const RegElement& b) {
  int q = std::min(a.trunc, b.trunc);
  for (const auto& [ij, c] : a.terms) {
    if (ij.first > q) continue;
    if (b.coeff(ij.first, ij.second) != c) return false;
  }
  for (const auto& [ij, c] : b.terms) {
    if (ij.first > q) continue;
    if (a.coeff(ij.first, ij.second) != c) return false;
  }
  return true;
}

std::string reg_render(const RegElement& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ij, c] : a.terms) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    auto [i, j] = ij;
    std::string body;
    if (i != 0) {
      body = "z";
      if (i != 1) body += "^" + std::to_string(i);
    }
    if (j != 0) {
      if (!body.empty()) body += "*";
      body += "y";
      if (j != 1) body += "^" + std::to_string(j);
    }
    if (body.empty())
      os << rational_to_string(mag);
    else if (mag == 1)
      os << body;
    else
      os << rational_to_string(mag) << "*" << body;
  }
  return os.str();
}

}  // namespace renorm
