#include "renorm/series_json.hpp"

namespace renorm {

nlohmann::json series_to_json(const RegElement& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [ij, c] : a.terms) {
    nlohmann::json t;
    t["z"] = ij.first;
    t["y"] = ij.second;
    t["c"] = rational_to_string(c);
    arr.push_back(std::move(t));
  }
  if (a.trunc != kExactOrder) arr.push_back({{"z_order", a.trunc}});
  return arr;
}

RegElement series_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw input_error("series: expected an array");
  std::vector<std::pair<std::pair<int, int>, Rational>> terms;
  int trunc = kExactOrder;
  for (size_t k = 0; k < j.size(); ++k) {
    const auto& t = j[k];
    auto where = [&](const std::string& msg) {
      return input_error("series[" + std::to_string(k) + "]: " + msg);
    };
    if (!t.is_object()) throw where("expected an object");
    if (t.contains("z_order")) {
      if (!t["z_order"].is_number_integer()) throw where("z_order must be an integer");
      trunc = t["z_order"].get<int>();
      continue;
    }
    if (!t.contains("z") || !t["z"].is_number_integer())
      throw where("missing integer field 'z'");
    if (!t.contains("y") || !t["y"].is_number_integer())
      throw where("missing integer field 'y'");
    if (!t.contains("c")) throw where("missing coefficient 'c'");
    int zi = t["z"].get<int>();
    int yj = t["y"].get<int>();
    if (yj < 0) throw where("negative y power");
    Rational c;
    if (t["c"].is_number_integer())
      c = Rational(t["c"].get<long long>());
    else if (t["c"].is_string())
      c = rational_from_string(t["c"].get<std::string>());
    else
      throw where("coefficient must be an integer or a 'p/q' string");
    terms.push_back({{zi, yj}, c});
  }
  return reg_from_terms(terms, trunc);
}

}  // namespace renorm
