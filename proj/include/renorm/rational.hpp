#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace renorm {

// Exact rational scalar used everywhere. Arbitrary precision so antipode
// recursions and series products never overflow.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Thrown on malformed user input (files, CLI values). The CLI maps this to
// exit code 2; genuine verification failures use a different path.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p", "-p" or "p/q". Rejects q = 0 and garbage.
inline Rational rational_from_string(const std::string& s) {
  auto bad = [&]() { return input_error("bad rational literal: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

// "p" when integral, else "p/q".
inline std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("rational_pow: 0 to negative power");
    return Rational(1) / rational_pow(base, -e);
  }
  Rational acc(1), b = base;
  long n = e;
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// n! as an exact integer-valued rational.
inline Rational factorial(int n) {
  Rational r(1);
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Binomial coefficient for possibly large n, small k.
inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
  return r;
}

}  // namespace renorm
