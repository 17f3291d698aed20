#pragma once

// Standalone numeric oracle for the one-loop bubble integrals. Kept free of
// the library under test on purpose: plain adaptive Simpson plus an analytic
// tail, so disagreement points at the series, not at shared code.

#include <cmath>
#include <functional>

namespace oracle {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double eps,
                            int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_step(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), eps, 40);
}

// int_0^Lambda p^3/(p^2+m^2)^2 dp
inline double bubble_cutoff(double lambda, double m) {
  auto f = [m](double p) {
    double d = p * p + m * m;
    return p * p * p / (d * d);
  };
  return integrate(f, 0.0, lambda, 1e-13);
}

// int_0^infty p^{3+z}/(p^2+m^2)^2 dp for z < 0: adaptive on [0, A] plus the
// expanded tail sum_k (-1)^k (k+1) A^{z-2k}/(2k-z), which at A=10 converges
// far below double precision within a dozen terms.
inline double bubble_dimreg(double z, double m) {
  const double A = 10.0;
  auto f = [z, m](double p) {
    double d = p * p + m * m;
    return std::pow(p, 3.0 + z) / (d * d);
  };
  double head = integrate(f, 0.0, A, 1e-14);
  double tail = 0.0;
  for (int k = 0; k < 14; ++k) {
    double term = (k + 1) * std::pow(A, z - 2.0 * k) / (2.0 * k - z);
    // the expansion is in (m/p)^2; restore the m dependence
    term *= std::pow(m * m, k) * ((k % 2 == 0) ? 1.0 : -1.0);
    tail += term;
  }
  return head + tail;
}

}  // namespace oracle
