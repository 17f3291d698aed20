#include "renorm/hopf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace renorm {

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

HopfElement hopf_mono(const Monomial& m, const Rational& c) {
  HopfElement a;
  if (c != 0) a.terms[m] = c;
  return a;
}

HopfElement hopf_add(const HopfElement& a, const HopfElement& b) {
  HopfElement r = a;
  r.truncated = a.truncated || b.truncated;
  for (const auto& [m, c] : b.terms) {
    auto& slot = r.terms[m];
    slot += c;
    if (slot == 0) r.terms.erase(m);
  }
  return r;
}

HopfElement hopf_scale(const Rational& c, const HopfElement& a) {
  HopfElement r;
  r.truncated = a.truncated;
  if (c == 0) return r;
  for (const auto& [m, v] : a.terms) r.terms[m] = c * v;
  return r;
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b) {
  TensorElement r;
  for (const auto& [pa, ca] : a.terms)
    for (const auto& [pb, cb] : b.terms) {
      auto key = std::make_pair(monomial_mul(pa.first, pb.first),
                                monomial_mul(pa.second, pb.second));
      auto& slot = r.terms[key];
      slot += ca * cb;
      if (slot == 0) r.terms.erase(key);
    }
  return r;
}

namespace {

struct PreGen {
  std::string name;
  std::string key;
  Graph graph;
  int grade;
  bool user_named;
};

}  // namespace

HopfAlgebra::HopfAlgebra(const std::vector<std::pair<std::string, Graph>>& seeds,
                         int grade_cap)
    : cap_(grade_cap) {
  if (grade_cap < 0) throw input_error("grade cap must be >= 0");

  std::vector<PreGen> pre;
  std::map<std::string, int> pre_by_key;
  std::map<std::string, int> pre_by_name;
  int auto_counter = 0;

  auto ensure = [&](const Graph& g, const std::string& name, bool user) -> int {
    std::string key = canonical_form(g);
    auto it = pre_by_key.find(key);
    if (it != pre_by_key.end()) {
      if (user && pre[it->second].user_named && pre[it->second].name != name)
        throw input_error("graph '" + name + "' is isomorphic to '" +
                          pre[it->second].name + "'");
      if (user && !pre[it->second].user_named) {
        // A user name arrived after auto-discovery; prefer the user's.
        pre_by_name.erase(pre[it->second].name);
        if (pre_by_name.count(name))
          throw input_error("duplicate graph name '" + name + "'");
        pre[it->second].name = name;
        pre[it->second].user_named = true;
        pre_by_name[name] = it->second;
      }
      return it->second;
    }
    if (!is_one_particle_irreducible(g))
      throw input_error("graph '" + name + "' is not 1PI");
    int ext = external_count(g);
    if (ext != 2 && ext != 4)
      throw input_error("graph '" + name + "' has " + std::to_string(ext) +
                        " external edges, want 2 or 4");
    int grade = loop_number(g);
    if (grade < 1) throw input_error("graph '" + name + "' has no loops");
    std::string final_name = name;
    if (!user) {
      // Deterministic placeholder for contraction-discovered graphs the seed
      // list did not name.
      final_name = "G" + std::to_string(grade) + "x" + std::to_string(++auto_counter);
    }
    if (pre_by_name.count(final_name))
      throw input_error("duplicate graph name '" + final_name + "'");
    int idx = static_cast<int>(pre.size());
    pre.push_back({final_name, key, g, grade, user});
    pre_by_key[key] = idx;
    pre_by_name[final_name] = idx;
    return idx;
  };

  for (const auto& [name, g] : seeds) {
    validate_graph(g);
    ensure(g, name, true);
  }

  // Closure under admissible subgraph components and contractions. `pre`
  // grows while we scan it.
  struct RawTerm {
    std::vector<int> left;  // pre indices of the components
    int right;              // pre index of the contraction
  };
  std::vector<std::vector<RawTerm>> raw(pre.size());
  for (size_t i = 0; i < pre.size(); ++i) {
    raw.resize(pre.size());
    const Graph g = pre[i].graph;
    for (const auto& s : admissible_subgraphs(g)) {
      RawTerm term;
      for (const Graph& comp : subgraph_components(g, s))
        term.left.push_back(ensure(comp, "", false));
      Graph contracted = contract(g, s);
      term.right = ensure(contracted, "", false);
      raw.resize(pre.size());
      raw[i].push_back(std::move(term));
    }
  }

  // Final ids ordered by (grade, canonical key): deterministic regardless of
  // discovery order.
  std::vector<int> order(pre.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(pre[a].grade, pre[a].key) < std::tie(pre[b].grade, pre[b].key);
  });
  std::vector<GenId> final_id(pre.size());
  for (size_t pos = 0; pos < order.size(); ++pos)
    final_id[order[pos]] = static_cast<GenId>(pos);

  gens_.resize(pre.size());
  sub_terms_.resize(pre.size());
  for (size_t i = 0; i < pre.size(); ++i) {
    GenId id = final_id[i];
    gens_[id] = {pre[i].name, pre[i].key, pre[i].graph, pre[i].grade};
    by_key_[pre[i].key] = id;
    by_name_[pre[i].name] = id;
    for (const auto& t : raw[i]) {
      SubgraphTerm st;
      for (int p : t.left) st.left.push_back(final_id[p]);
      std::sort(st.left.begin(), st.left.end());
      st.right = final_id[t.right];
      sub_terms_[id].push_back(std::move(st));
    }
    // Deterministic term order inside one generator's coproduct.
    std::sort(sub_terms_[id].begin(), sub_terms_[id].end(),
              [](const SubgraphTerm& a, const SubgraphTerm& b) {
                return std::tie(a.left, a.right) < std::tie(b.left, b.right);
              });
  }

  // Basis monomials of grade <= cap over generators of grade <= cap.
  Monomial cur;
  std::function<void(GenId, int)> emit = [&](GenId from, int room) {
    basis_.push_back(cur);
    for (GenId g = from; g < generator_count(); ++g) {
      if (gens_[g].grade > room) continue;
      cur.push_back(g);
      emit(g, room - gens_[g].grade);
      cur.pop_back();
    }
  };
  emit(0, cap_);
  std::sort(basis_.begin(), basis_.end(), [&](const Monomial& a, const Monomial& b) {
    return std::make_pair(grade(a), a) < std::make_pair(grade(b), b);
  });

  // Antipodes, lowest grade first so the recursion only looks backwards.
  antipodes_.resize(pre.size());
  std::vector<GenId> by_grade(pre.size());
  for (size_t i = 0; i < by_grade.size(); ++i) by_grade[i] = static_cast<GenId>(i);
  std::sort(by_grade.begin(), by_grade.end(), [&](GenId a, GenId b) {
    return gens_[a].grade < gens_[b].grade;
  });
  for (GenId id : by_grade) {
    // Antipode products stay inside the generator's grade, so the cap can
    // only interfere for generators above it; those never enter the basis
    // and keep no antipode.
    if (gens_[id].grade > cap_) continue;
    HopfElement s = hopf_mono({id}, Rational(-1));
    for (const auto& t : sub_terms_[id]) {
      HopfElement s_left = hopf_mono({}, Rational(1));
      for (GenId g : t.left) s_left = multiply(s_left, antipodes_[g]);
      HopfElement piece = multiply(s_left, hopf_mono({t.right}));
      s = hopf_add(s, hopf_scale(Rational(-1), piece));
    }
    antipodes_[id] = std::move(s);
  }

  for (const Monomial& m : basis_) coproduct_cache_[m] = coproduct_uncached(m);
}

GenId HopfAlgebra::find_name(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

GenId HopfAlgebra::find_key(const std::string& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? -1 : it->second;
}

int HopfAlgebra::grade(const Monomial& m) const {
  int n = 0;
  for (GenId id : m) n += gens_.at(id).grade;
  return n;
}

TensorElement HopfAlgebra::coproduct_uncached(const Monomial& m) const {
  TensorElement acc;
  acc.terms[{Monomial{}, Monomial{}}] = 1;
  for (GenId id : m) {
    TensorElement dg;
    dg.terms[{Monomial{}, Monomial{id}}] += 1;
    dg.terms[{Monomial{id}, Monomial{}}] += 1;
    for (const auto& t : sub_terms_.at(id)) dg.terms[{t.left, Monomial{t.right}}] += 1;
    acc = tensor_mul(acc, dg);
  }
  return acc;
}

TensorElement HopfAlgebra::coproduct(const Monomial& m) const {
  auto it = coproduct_cache_.find(m);
  if (it != coproduct_cache_.end()) return it->second;
  return coproduct_uncached(m);
}

HopfElement HopfAlgebra::antipode(const Monomial& m) const {
  if (grade(m) > cap_)
    throw std::invalid_argument("antipode: monomial exceeds the grade cap");
  HopfElement r = hopf_mono({}, Rational(1));
  for (GenId id : m) r = multiply(r, antipodes_.at(id));
  return r;
}

HopfElement HopfAlgebra::antipode(const HopfElement& a) const {
  HopfElement r;
  r.truncated = a.truncated;
  for (const auto& [m, c] : a.terms) r = hopf_add(r, hopf_scale(c, antipode(m)));
  return r;
}

HopfElement HopfAlgebra::grading(const HopfElement& a) const {
  HopfElement r;
  r.truncated = a.truncated;
  for (const auto& [m, c] : a.terms) {
    int n = grade(m);
    if (n != 0) r.terms[m] = c * n;
  }
  return r;
}

HopfElement HopfAlgebra::multiply(const HopfElement& a, const HopfElement& b) const {
  HopfElement r;
  r.truncated = a.truncated || b.truncated;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Monomial m = monomial_mul(ma, mb);
      if (grade(m) > cap_) {
        r.truncated = true;
        continue;
      }
      auto& slot = r.terms[m];
      slot += ca * cb;
      if (slot == 0) r.terms.erase(m);
    }
  return r;
}

std::string HopfAlgebra::render(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ".";
    s += gens_.at(m[i]).name;
  }
  return s;
}

std::string HopfAlgebra::render(const HopfElement& a) const {
  if (a.terms.empty()) return "0";
  // Order by (grade, rendered name): "2*B1.B1 - B2".
  std::vector<std::pair<std::pair<int, std::string>, Rational>> items;
  for (const auto& [m, c] : a.terms)
    items.push_back({{grade(m), render(m)}, c});
  std::sort(items.begin(), items.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [gm, c] : items) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag == 1 && gm.second != "1")
      os << gm.second;
    else if (gm.second == "1")
      os << rational_to_string(mag);
    else
      os << rational_to_string(mag) << "*" << gm.second;
  }
  return os.str();
}

std::string HopfAlgebra::render(const TensorElement& t) const {
  if (t.terms.empty()) return "0";
  struct Item {
    int rank;  // unit-left first, unit-right second, middle last
    int grade_left;
    std::string left, right;
    Rational c;
  };
  std::vector<Item> items;
  for (const auto& [p, c] : t.terms) {
    Item it;
    it.rank = p.first.empty() ? 0 : (p.second.empty() ? 1 : 2);
    it.grade_left = grade(p.first);
    it.left = render(p.first);
    it.right = render(p.second);
    it.c = c;
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.rank, a.grade_left, a.left, a.right) <
           std::tie(b.rank, b.grade_left, b.left, b.right);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& it : items) {
    Rational mag = it.c < 0 ? Rational(-it.c) : it.c;
    if (first) {
      if (it.c < 0) os << "-";
      first = false;
    } else {
      os << (it.c < 0 ? " - " : " + ");
    }
    std::string body = it.left + "⊗" + it.right;
    if (mag == 1)
      os << body;
    else
      os << rational_to_string(mag) << "*(" << body << ")";
  }
  return os.str();
}

Monomial HopfAlgebra::parse_monomial(const std::string& text) const {
  if (text == "1") return {};
  Monomial m;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, '.')) {
    GenId id = find_name(part);
    if (id < 0) throw input_error("unknown generator '" + part + "'");
    m.push_back(id);
  }
  std::sort(m.begin(), m.end());
  return m;
}

std::vector<std::pair<std::string, Graph>> builtin_corpus() {
  std::vector<std::pair<std::string, Graph>> out;
  // one-loop bubble: two vertices joined by a double edge, two legs each side
  out.emplace_back("B1", make_graph(2, {{0, 1}, {0, 1}}, {0, 0, 1, 1}));
  // one-loop tadpole on a 2-point vertex
  out.emplace_back("T1", make_graph(1, {{0, 0}}, {0, 0}));
  // two-loop sunset: triple edge, one leg each side
  out.emplace_back("S", make_graph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 1}));
  // chain of two bubbles
  out.emplace_back("B2", make_graph(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}, {0, 0, 2, 2}));
  // chain of three bubbles
  out.emplace_back(
      "B3", make_graph(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}}, {0, 0, 3, 3}));
  // bubble with one propagator dressed by a sunset
  out.emplace_back(
      "BS3", make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}, {2, 3}}, {0, 0, 1, 1}));
  // bubble with one edge subdivided by a 2-valent insertion vertex
  // (the sunset contraction inside BS3)
  out.emplace_back("B1d", make_graph(3, {{0, 1}, {0, 2}, {1, 2}}, {0, 0, 1, 1}));
  // the subdivided bubble carrying a tadpole on its insertion vertex
  out.emplace_back("B1t", make_graph(3, {{0, 1}, {0, 2}, {1, 2}, {2, 2}}, {0, 0, 1, 1}));
  return out;
}

HopfPtr builtin_algebra(int grade_cap) {
  return std::make_shared<const HopfAlgebra>(builtin_corpus(), grade_cap);
}

}  // namespace renorm
