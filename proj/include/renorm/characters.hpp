#pragma once

#include <map>
#include <string>

#include "renorm/hopf.hpp"
#include "renorm/regalg.hpp"

namespace renorm {

enum class MapFlag { character, infinitesimal, general };

std::string flag_name(MapFlag f);
MapFlag flag_from_name(const std::string& s);

// Linear map H -> regulator algebra, stored on the monomial basis up to the
// algebra's grade cap. Absent monomials are exact zeros. The flag is a claim,
// not a proof; is_character / is_infinitesimal verify it.
struct LinMap {
  HopfPtr H;
  MapFlag flag = MapFlag::general;
  std::map<Monomial, RegElement> values;

  RegElement value(const Monomial& m) const {
    auto it = values.find(m);
    return it == values.end() ? reg_zero() : it->second;
  }
};

// Convolution identity: 1 at the unit monomial, zero elsewhere (eta-epsilon).
LinMap unit_character(HopfPtr H);

// Multiplicative extension of generator values to the whole basis. Every
// generator of grade <= cap must be assigned; the unit gets 1.
LinMap character_from_generators(HopfPtr H,
                                 const std::map<std::string, RegElement>& by_name);

// Zero outside the generators; generators may be partially assigned.
LinMap infinitesimal_from_generators(
    HopfPtr H, const std::map<std::string, RegElement>& by_name);

RegElement linmap_apply(const LinMap& f, const HopfElement& a);

// (f * g)(m) = sum over Delta(m) of f(left) g(right).
LinMap convolve(const LinMap& f, const LinMap& g);

// Convolution inverse by grade recursion; requires f(1) = 1.
LinMap convolution_inverse(const LinMap& f);

// For characters the inverse is composition with the antipode.
LinMap inverse_via_antipode(const LinMap& f);

LinMap linmap_add(const LinMap& f, const LinMap& g);
LinMap linmap_sub(const LinMap& f, const LinMap& g);
LinMap linmap_scale(const Rational& c, const LinMap& f);

// [f, g] = f*g - g*f; infinitesimal when both arguments are.
LinMap lie_bracket(const LinMap& f, const LinMap& g);

bool is_character(const LinMap& f);
bool is_infinitesimal(const LinMap& f);

// Coefficient-wise equality over the basis (up to truncation orders).
bool linmap_equal(const LinMap& f, const LinMap& g);

std::string linmap_render(const LinMap& f);

// --- character files ---------------------------------------------------------
// {"grade_cap": 2, "flag": "character",
//  "values": [{"graph": "B1", "series": [...]}, ...]}
// Characters list every generator; general maps list monomials ("B1.B1").
std::string character_to_json_text(const LinMap& f);
LinMap character_from_json_text(const std::string& text, HopfPtr H);

}  // namespace renorm
