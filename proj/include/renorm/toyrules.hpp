#pragma once

#include <string>

#include "renorm/characters.hpp"

// Concrete one-loop values for the bubble at zero external momenta, in both
// regularization schemes, as exact series data; plus file loading of
// user-supplied characters.

namespace renorm {

struct ToyRuleConfig {
  Rational m = 1;               // mass, must be positive
  Rational angular_factor = 1;  // sphere-volume convention, kept configurable
  int z_truncation = 12;        // highest trusted z order of the emitted series
};

// Momentum cutoff at scale 1/|z|: the exact expansion of
// (1/2)log(1 + 1/(m z)^2) + (mz)^2/(2(1+(mz)^2)) - 1/2,
// i.e. -y - 1/2 + (mz)^2 - (3/4)(mz)^4 + ... with y = log(zm).
RegElement bubble_cutoff_value(const ToyRuleConfig& cfg);

// Dimensional regularization: Laurent expansion of (m^z/2) B(2 + z/2, -z/2)
// = -m^z (1/z)(1 + z/2) (pi z/2)/sin(pi z/2), starting at -1/z - 1/2 - ...
// Exact rationals for m = 1 (with pi^2 frozen to 50 digits); for other m the
// factor m^z is folded in through a numeric log m.
RegElement bubble_dimreg_value(const ToyRuleConfig& cfg);

// Characters carrying the bubble value on B1 and zero on every other
// generator of H (which must contain a generator named B1).
LinMap toy_cutoff_character(HopfPtr H, const ToyRuleConfig& cfg);
LinMap toy_dimreg_character(HopfPtr H, const ToyRuleConfig& cfg);

// Reads a character file (schema of character_from_json_text) against H.
LinMap load_character(const std::string& path, HopfPtr H);

}  // namespace renorm
