#include "renorm/characters.hpp"

#include <sstream>

#include "json.hpp"
#include "renorm/series_json.hpp"

namespace renorm {

std::string flag_name(MapFlag f) {
  switch (f) {
    case MapFlag::character: return "character";
    case MapFlag::infinitesimal: return "infinitesimal";
    default: return "general";
  }
}

MapFlag flag_from_name(const std::string& s) {
  if (s == "character") return MapFlag::character;
  if (s == "infinitesimal") return MapFlag::infinitesimal;
  if (s == "general") return MapFlag::general;
  throw input_error("unknown map flag '" + s + "'");
}

namespace {

void ensure_same_algebra(const LinMap& f, const LinMap& g) {
  if (f.H != g.H)
    throw std::invalid_argument("maps live over different algebras or caps");
}

void store(LinMap& f, const Monomial& m, RegElement v) {
  if (v.is_zero() && v.trunc == kExactOrder) return;
  f.values[m] = std::move(v);
}

}  // namespace

LinMap unit_character(HopfPtr H) {
  LinMap e;
  e.H = std::move(H);
  e.flag = MapFlag::character;
  e.values[{}] = reg_const(1);
  return e;
}

LinMap character_from_generators(HopfPtr H,
                                 const std::map<std::string, RegElement>& by_name) {
  std::map<GenId, RegElement> by_id;
  for (const auto& [name, v] : by_name) {
    GenId id = H->find_name(name);
    if (id < 0) throw input_error("unknown generator '" + name + "'");
    by_id[id] = v;
  }
  std::string missing;
  for (GenId id = 0; id < H->generator_count(); ++id) {
    if (H->generator(id).grade > H->grade_cap()) continue;
    if (!by_id.count(id)) missing += (missing.empty() ? "" : ", ") + H->generator(id).name;
  }
  if (!missing.empty())
    throw input_error("character is missing generator values: " + missing);
  LinMap f;
  f.H = H;
  f.flag = MapFlag::character;
  for (const Monomial& m : H->basis()) {
    RegElement v = reg_const(1);
    for (GenId id : m) v = reg_mul(v, by_id.at(id));
    store(f, m, std::move(v));
  }
  return f;
}

LinMap infinitesimal_from_generators(
    HopfPtr H, const std::map<std::string, RegElement>& by_name) {
  LinMap f;
  f.H = std::move(H);
  f.flag = MapFlag::infinitesimal;
  for (const auto& [name, v] : by_name) {
    GenId id = f.H->find_name(name);
    if (id < 0) throw input_error("unknown generator '" + name + "'");
    if (f.H->generator(id).grade > f.H->grade_cap())
      throw input_error("generator '" + name + "' exceeds the grade cap");
    store(f, {id}, v);
  }
  return f;
}

RegElement linmap_apply(const LinMap& f, const HopfElement& a) {
  RegElement r = reg_zero();
  for (const auto& [m, c] : a.terms) r = reg_add(r, reg_scale(c, f.value(m)));
  return r;
}

LinMap convolve(const LinMap& f, const LinMap& g) {
  ensure_same_algebra(f, g);
  LinMap r;
  r.H = f.H;
  r.flag = (f.flag == MapFlag::character && g.flag == MapFlag::character)
               ? MapFlag::character
               : MapFlag::general;
  for (const Monomial& m : f.H->basis()) {
    RegElement v = reg_zero();
    for (const auto& [pair, c] : f.H->coproduct(m).terms)
      v = reg_add(v, reg_scale(c, reg_mul(f.value(pair.first), g.value(pair.second))));
    store(r, m, std::move(v));
  }
  return r;
}

LinMap convolution_inverse(const LinMap& f) {
  if (!reg_equal(f.value({}), reg_const(1)))
    throw std::invalid_argument("convolution_inverse: f(1) != 1");
  LinMap r;
  r.H = f.H;
  r.flag = f.flag == MapFlag::character ? MapFlag::character : MapFlag::general;
  r.values[{}] = reg_const(1);
  // Basis is graded-ordered, so every proper coproduct leg is already solved.
  for (const Monomial& m : f.H->basis()) {
    if (m.empty()) continue;
    RegElement v = reg_zero();
    for (const auto& [pair, c] : f.H->coproduct(m).terms) {
      if (pair.first == m) continue;  // the f^{-1}(m) f(1) term being solved for
      auto it = r.values.find(pair.first);
      RegElement left = it == r.values.end() ? reg_zero() : it->second;
      v = reg_add(v, reg_scale(c, reg_mul(left, f.value(pair.second))));
    }
    store(r, m, reg_neg(v));
  }
  return r;
}

LinMap inverse_via_antipode(const LinMap& f) {
  LinMap r;
  r.H = f.H;
  r.flag = f.flag;
  for (const Monomial& m : f.H->basis())
    store(r, m, linmap_apply(f, f.H->antipode(m)));
  return r;
}

LinMap linmap_add(const LinMap& f, const LinMap& g) {
  ensure_same_algebra(f, g);
  LinMap r;
  r.H = f.H;
  r.flag = MapFlag::general;
  for (const Monomial& m : f.H->basis()) {
    RegElement v = reg_add(f.value(m), g.value(m));
    store(r, m, std::move(v));
  }
  return r;
}

LinMap linmap_sub(const LinMap& f, const LinMap& g) {
  return linmap_add(f, linmap_scale(Rational(-1), g));
}

LinMap linmap_scale(const Rational& c, const LinMap& f) {
  LinMap r;
  r.H = f.H;
  r.flag = f.flag == MapFlag::infinitesimal ? MapFlag::infinitesimal : MapFlag::general;
  for (const auto& [m, v] : f.values) store(r, m, reg_scale(c, v));
  return r;
}

LinMap lie_bracket(const LinMap& f, const LinMap& g) {
  LinMap r = linmap_sub(convolve(f, g), convolve(g, f));
  if (f.flag == MapFlag::infinitesimal && g.flag == MapFlag::infinitesimal)
    r.flag = MapFlag::infinitesimal;
  return r;
}

bool is_character(const LinMap& f) {
  if (!reg_equal(f.value({}), reg_const(1))) return false;
  const auto& basis = f.H->basis();
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty()) continue;
    for (size_t j = i; j < basis.size(); ++j) {
      if (basis[j].empty()) continue;
      if (f.H->grade(basis[i]) + f.H->grade(basis[j]) > f.H->grade_cap()) continue;
      Monomial prod = monomial_mul(basis[i], basis[j]);
      if (!reg_equal(f.value(prod), reg_mul(f.value(basis[i]), f.value(basis[j]))))
        return false;
    }
  }
  return true;
}

bool is_infinitesimal(const LinMap& f) {
  if (!f.value({}).is_zero()) return false;
  for (const Monomial& m : f.H->basis())
    if (m.size() >= 2 && !f.value(m).is_zero()) return false;
  return true;
}

bool linmap_equal(const LinMap& f, const LinMap& g) {
  ensure_same_algebra(f, g);
  for (const Monomial& m : f.H->basis())
    if (!reg_equal(f.value(m), g.value(m))) return false;
  return true;
}

std::string linmap_render(const LinMap& f) {
  std::ostringstream os;
  for (const Monomial& m : f.H->basis()) {
    RegElement v = f.value(m);
    if (v.is_zero()) continue;
    os << f.H->render(m) << " -> " << reg_render(v) << "\n";
  }
  std::string s = os.str();
  return s.empty() ? "0\n" : s;
}

std::string character_to_json_text(const LinMap& f) {
  nlohmann::json j;
  j["grade_cap"] = f.H->grade_cap();
  j["flag"] = flag_name(f.flag);
  nlohmann::json values = nlohmann::json::array();
  bool gens_only = f.flag != MapFlag::general;
  for (const Monomial& m : f.H->basis()) {
    if (gens_only && m.size() != 1) continue;
    RegElement v = f.value(m);
    if (m.size() != 1 && v.is_zero()) continue;  // general maps stay sparse
    nlohmann::json entry;
    entry["graph"] = f.H->render(m);
    entry["series"] = series_to_json(v);
    values.push_back(std::move(entry));
  }
  j["values"] = std::move(values);
  return j.dump(2) + "\n";
}

LinMap character_from_json_text(const std::string& text, HopfPtr H) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("character file: ") + e.what());
  }
  if (!j.is_object()) throw input_error("character file: expected an object");
  if (!j.contains("grade_cap") || !j["grade_cap"].is_number_integer())
    throw input_error("character file: missing integer 'grade_cap'");
  int cap = j["grade_cap"].get<int>();
  if (cap != H->grade_cap())
    throw input_error("character file grade_cap " + std::to_string(cap) +
                      " does not match the requested cap " +
                      std::to_string(H->grade_cap()));
  MapFlag flag = MapFlag::character;
  if (j.contains("flag")) {
    if (!j["flag"].is_string()) throw input_error("character file: 'flag' must be a string");
    flag = flag_from_name(j["flag"].get<std::string>());
  }
  if (!j.contains("values") || !j["values"].is_array())
    throw input_error("character file: missing array 'values'");

  std::map<std::string, RegElement> by_name;
  std::map<Monomial, RegElement> by_monomial;
  for (const auto& entry : j["values"]) {
    if (!entry.is_object() || !entry.contains("graph") || !entry["graph"].is_string() ||
        !entry.contains("series"))
      throw input_error("character file: each value needs 'graph' and 'series'");
    std::string name = entry["graph"].get<std::string>();
    RegElement v = series_from_json(entry["series"]);
    if (flag == MapFlag::general) {
      by_monomial[H->parse_monomial(name)] = std::move(v);
    } else {
      if (name == "1")
        throw input_error("character file: the unit value is implied, do not list it");
      if (by_name.count(name))
        throw input_error("character file: duplicate value for '" + name + "'");
      by_name[name] = std::move(v);
    }
  }
  switch (flag) {
    case MapFlag::character:
      return character_from_generators(H, by_name);
    case MapFlag::infinitesimal:
      return infinitesimal_from_generators(H, by_name);
    default: {
      LinMap f;
      f.H = std::move(H);
      f.flag = MapFlag::general;
      for (auto& [m, v] : by_monomial) store(f, m, std::move(v));
      return f;
    }
  }
}

}  // namespace renorm
