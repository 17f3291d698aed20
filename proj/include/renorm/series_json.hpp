#pragma once

#include "json.hpp"
#include "renorm/regalg.hpp"

namespace renorm {

// Series literal shape: an array of term objects plus a trailing order marker,
//   [{"z": -1, "y": 0, "c": "3/2"}, {"z": 0, "y": 1, "c": -1}, {"z_order": 6}]
// Coefficients may be integers or "p/q" strings. A missing z_order means the
// element is exact.
nlohmann::json series_to_json(const RegElement& a);
RegElement series_from_json(const nlohmann::json& j);

}  // namespace renorm
