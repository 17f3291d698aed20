#include "renorm/toyrules.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace renorm {

namespace {

void check_config(const ToyRuleConfig& cfg) {
  if (cfg.m <= 0) throw input_error("toy rules need m > 0");
  if (cfg.z_truncation < 0) throw input_error("toy rules need z_truncation >= 0");
}

// pi^2 frozen to 50 digits; error ~1e-51 is far below every tolerance used.
const Rational& pi_squared() {
  static const Rational v =
      Rational(Integer("986960440108935861883449099987615113531369940724079")) /
      rational_pow(Rational(10), 50);
  return v;
}

// B_0..B_n by the defining recurrence sum_j C(n+1,j) B_j = 0.
std::vector<Rational> bernoulli_upto(int n) {
  std::vector<Rational> B(n + 1);
  B[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational s = 0;
    for (int j = 0; j < k; ++j) s += binomial(k + 1, j) * B[j];
    B[k] = -s / binomial(k + 1, k);
  }
  return B;
}

// m^z expanded to z order q through a numeric log m (exact when m = 1).
RegElement mass_power_z(const Rational& m, int q) {
  if (m == 1) return reg_const(1);
  Rational logm(std::log(rational_to_double(m)));
  RegElement r = reg_zero(q);
  Rational term = 1;
  for (int n = 0; n <= q; ++n) {
    if (n > 0) term = term * logm / n;
    r = reg_add(r, reg_mono(n, 0, term, q));
  }
  return r;
}

}  // namespace

RegElement bubble_cutoff_value(const ToyRuleConfig& cfg) {
  check_config(cfg);
  const int K = cfg.z_truncation;
  RegElement r = reg_zero(K);
  r = reg_add(r, reg_mono(0, 1, Rational(-1), K));
  r = reg_add(r, reg_mono(0, 0, Rational(-1, 2), K));
  // (1/2) sum_{k>=1} (-1)^{k+1} (k+1)/k (m^2 z^2)^k
  Rational m2 = cfg.m * cfg.m;
  Rational m2k = 1;
  for (int k = 1; 2 * k <= K; ++k) {
    m2k *= m2;
    Rational c = Rational(k + 1, 2 * k) * m2k;
    if (k % 2 == 0) c = -c;
    r = reg_add(r, reg_mono(2 * k, 0, c, K));
  }
  return reg_scale(cfg.angular_factor, r);
}

RegElement bubble_dimreg_value(const ToyRuleConfig& cfg) {
  check_config(cfg);
  const int K = cfg.z_truncation;
  // (pi w)/sin(pi w) at w = z/2: coefficients a_k of w^{2k} via Bernoulli
  // numbers, a_k = (-1)^{k-1} 2 (2^{2k-1}-1) B_{2k} / (2k)!.
  const int kmax = (K + 1) / 2;
  std::vector<Rational> B = bernoulli_upto(2 * kmax);
  RegElement r = reg_zero(K);
  Rational pi2_4 = pi_squared() / 4;  // (pi/2)^2
  Rational pk = 1;                    // (pi/2)^{2k}
  for (int k = 0; k <= kmax; ++k) {
    Rational a;
    if (k == 0) {
      a = 1;
    } else {
      pk *= pi2_4;
      Rational two_pow = rational_pow(Rational(2), 2 * k - 1) - 1;
      a = Rational(2) * two_pow * B[2 * k] / factorial(2 * k);
      if (k % 2 == 0) a = -a;
    }
    Rational c = a * pk;
    // contributes c z^{2k-1} + (c/2) z^{2k}, all times -1
    if (2 * k - 1 <= K) r = reg_add(r, reg_mono(2 * k - 1, 0, -c, K));
    if (2 * k <= K) r = reg_add(r, reg_mono(2 * k, 0, -c / 2, K));
  }
  if (cfg.m != 1) r = reg_mul(r, mass_power_z(cfg.m, K + 1));
  return reg_scale(cfg.angular_factor, r);
}

namespace {

LinMap bubble_character(HopfPtr H, RegElement value) {
  std::map<std::string, RegElement> gen;
  bool seen = false;
  for (GenId g = 0; g < H->generator_count(); ++g) {
    const GeneratorInfo& info = H->generator(g);
    if (info.grade > H->grade_cap()) continue;
    if (info.name == "B1") {
      gen[info.name] = value;
      seen = true;
    } else {
      gen[info.name] = reg_zero();
    }
  }
  if (!seen) throw input_error("algebra has no generator named B1");
  return character_from_generators(H, gen);
}

}  // namespace

LinMap toy_cutoff_character(HopfPtr H, const ToyRuleConfig& cfg) {
  return bubble_character(H, bubble_cutoff_value(cfg));
}

LinMap toy_dimreg_character(HopfPtr H, const ToyRuleConfig& cfg) {
  return bubble_character(H, bubble_dimreg_value(cfg));
}

LinMap load_character(const std::string& path, HopfPtr H) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read character file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return character_from_json_text(buf.str(), H);
}

}  // namespace renorm
