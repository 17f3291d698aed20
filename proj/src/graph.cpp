#include "renorm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "renorm/rational.hpp"

namespace renorm {

Graph make_graph(int vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> legs) {
  Graph g;
  g.vertices = vertices;
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  std::sort(legs.begin(), legs.end());
  g.edges = std::move(edges);
  g.legs = std::move(legs);
  return g;
}

std::vector<int> vertex_degrees(const Graph& g) {
  std::vector<int> deg(g.vertices, 0);
  for (auto [u, v] : g.edges) {
    deg[u] += 1;
    deg[v] += 1;  // self-loop counts twice
  }
  for (int v : g.legs) deg[v] += 1;
  return deg;
}

void validate_graph(const Graph& g) {
  if (g.vertices <= 0) throw input_error("vertices: must be positive");
  for (size_t i = 0; i < g.edges.size(); ++i) {
    auto [u, v] = g.edges[i];
    if (u < 0 || u >= g.vertices || v < 0 || v >= g.vertices)
      throw input_error("edges[" + std::to_string(i) + "]: endpoint out of range");
  }
  for (size_t i = 0; i < g.legs.size(); ++i)
    if (g.legs[i] < 0 || g.legs[i] >= g.vertices)
      throw input_error("external[" + std::to_string(i) + "]: vertex out of range");
  auto deg = vertex_degrees(g);
  for (int v = 0; v < g.vertices; ++v)
    if (deg[v] != 4 && deg[v] != 2)
      throw input_error("vertex " + std::to_string(v) + ": degree " +
                        std::to_string(deg[v]) + ", want 4 (or 2 for insertions)");
}

namespace {

// Connectivity over all of g's vertices using edges whose index passes keep().
template <class Keep>
bool connected_with(int vertices, const std::vector<std::pair<int, int>>& edges,
                    Keep keep) {
  if (vertices <= 1) return true;
  std::vector<std::vector<int>> adj(vertices);
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!keep(static_cast<int>(i))) continue;
    auto [u, v] = edges[i];
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  return count == vertices;
}

}  // namespace

bool is_connected(const Graph& g) {
  return connected_with(g.vertices, g.edges, [](int) { return true; });
}

bool is_one_particle_irreducible(const Graph& g) {
  if (!is_connected(g)) return false;
  for (size_t cut = 0; cut < g.edges.size(); ++cut)
    if (!connected_with(g.vertices, g.edges,
                        [&](int i) { return i != static_cast<int>(cut); }))
      return false;
  return true;
}

int loop_number(const Graph& g) {
  // I - V + c; for the connected graphs we care about c = 1.
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = g.vertices;
  for (auto [u, v] : g.edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return static_cast<int>(g.edges.size()) - g.vertices + components;
}

int superficial_degree(const Graph& g) {
  return 4 * loop_number(g) - 2 * static_cast<int>(g.edges.size());
}

namespace {

struct SubsetView {
  // Connected components of the selected edges: vertex lists (sorted) and the
  // selected edge indices belonging to each.
  std::vector<std::vector<int>> comp_vertices;
  std::vector<std::vector<int>> comp_edges;
};

SubsetView split_components(const Graph& g, const EdgeSubset& s) {
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i : s) {
    auto [u, v] = g.edges[i];
    parent[find(u)] = find(v);
  }
  // Only vertices touched by selected edges belong to the subgraph.
  std::vector<char> touched(g.vertices, 0);
  for (int i : s) {
    touched[g.edges[i].first] = 1;
    touched[g.edges[i].second] = 1;
  }
  std::unordered_map<int, int> root_to_comp;
  SubsetView view;
  for (int v = 0; v < g.vertices; ++v) {
    if (!touched[v]) continue;
    int r = find(v);
    auto it = root_to_comp.find(r);
    if (it == root_to_comp.end()) {
      it = root_to_comp.emplace(r, static_cast<int>(view.comp_vertices.size())).first;
      view.comp_vertices.emplace_back();
      view.comp_edges.emplace_back();
    }
    view.comp_vertices[it->second].push_back(v);
  }
  for (int i : s) {
    int r = find(g.edges[i].first);
    view.comp_edges[root_to_comp[r]].push_back(i);
  }
  return view;
}

// External edges of one component inside its parent: inherited legs plus one
// stub per unselected edge endpoint landing on the component (an unselected
// self-loop contributes two).
int component_external_count(const Graph& g, const EdgeSubset& s,
                             const std::vector<int>& comp_vertices) {
  std::vector<char> in_comp(g.vertices, 0);
  for (int v : comp_vertices) in_comp[v] = 1;
  std::vector<char> selected(g.edges.size(), 0);
  for (int i : s) selected[i] = 1;
  int ext = 0;
  for (int v : g.legs)
    if (in_comp[v]) ++ext;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (selected[i]) continue;
    if (in_comp[g.edges[i].first]) ++ext;
    if (in_comp[g.edges[i].second]) ++ext;
  }
  return ext;
}

Graph component_as_graph(const Graph& g, const EdgeSubset& s,
                         const std::vector<int>& comp_vertices,
                         const std::vector<int>& comp_edges) {
  std::vector<int> remap(g.vertices, -1);
  for (size_t k = 0; k < comp_vertices.size(); ++k)
    remap[comp_vertices[k]] = static_cast<int>(k);
  std::vector<std::pair<int, int>> edges;
  for (int i : comp_edges)
    edges.emplace_back(remap[g.edges[i].first], remap[g.edges[i].second]);
  std::vector<char> selected(g.edges.size(), 0);
  for (int i : s) selected[i] = 1;
  std::vector<int> legs;
  for (int v : g.legs)
    if (remap[v] >= 0) legs.push_back(remap[v]);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (selected[i]) continue;
    if (remap[g.edges[i].first] >= 0) legs.push_back(remap[g.edges[i].first]);
    if (remap[g.edges[i].second] >= 0) legs.push_back(remap[g.edges[i].second]);
  }
  return make_graph(static_cast<int>(comp_vertices.size()), std::move(edges),
                    std::move(legs));
}

bool subset_admissible(const Graph& g, const EdgeSubset& s) {
  if (s.empty() || s.size() >= g.edges.size()) return false;
  auto view = split_components(g, s);
  for (size_t c = 0; c < view.comp_vertices.size(); ++c) {
    int ext = component_external_count(g, s, view.comp_vertices[c]);
    if (ext != 2 && ext != 4) return false;
    Graph comp = component_as_graph(g, s, view.comp_vertices[c], view.comp_edges[c]);
    if (!is_one_particle_irreducible(comp)) return false;
  }
  return true;
}

}  // namespace

std::vector<EdgeSubset> admissible_subgraphs(const Graph& g) {
  int ext = external_count(g);
  if (!is_one_particle_irreducible(g) || (ext != 2 && ext != 4))
    throw std::invalid_argument("admissible_subgraphs: graph is not a 1PI 2- or 4-point graph");
  size_t n = g.edges.size();
  if (n > 20) throw std::length_error("admissible_subgraphs: too many edges");
  std::vector<EdgeSubset> out;
  for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    EdgeSubset s;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(static_cast<int>(i));
    if (subset_admissible(g, s)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Graph> subgraph_components(const Graph& g, const EdgeSubset& s) {
  auto view = split_components(g, s);
  std::vector<Graph> out;
  for (size_t c = 0; c < view.comp_vertices.size(); ++c)
    out.push_back(component_as_graph(g, s, view.comp_vertices[c], view.comp_edges[c]));
  return out;
}

Graph contract(const Graph& g, const EdgeSubset& s) {
  if (!subset_admissible(g, s))
    throw std::invalid_argument("contract: subset is not admissible");
  auto view = split_components(g, s);
  // Each component becomes one vertex, placed at the slot of its smallest
  // parent vertex; untouched vertices keep their relative order.
  std::vector<int> remap(g.vertices, -1);
  std::vector<char> is_comp_rep(g.vertices, 0);
  std::vector<char> absorbed(g.vertices, 0);
  for (auto& cv : view.comp_vertices) {
    int rep = cv.front();  // comp_vertices sorted ascending by construction
    is_comp_rep[rep] = 1;
    for (int v : cv)
      if (v != rep) absorbed[v] = 1;
  }
  int next = 0;
  for (int v = 0; v < g.vertices; ++v)
    if (!absorbed[v]) remap[v] = next++;
  for (auto& cv : view.comp_vertices)
    for (int v : cv) remap[v] = remap[cv.front()];
  std::vector<char> selected(g.edges.size(), 0);
  for (int i : s) selected[i] = 1;
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (!selected[i])
      edges.emplace_back(remap[g.edges[i].first], remap[g.edges[i].second]);
  std::vector<int> legs;
  for (int v : g.legs) legs.push_back(remap[v]);
  return make_graph(next, std::move(edges), std::move(legs));
}

int subgraph_loop_number(const Graph& g, const EdgeSubset& s) {
  auto view = split_components(g, s);
  int loops = 0;
  for (size_t c = 0; c < view.comp_vertices.size(); ++c)
    loops += static_cast<int>(view.comp_edges[c].size()) -
             static_cast<int>(view.comp_vertices[c].size()) + 1;
  return loops;
}

std::string labeled_encoding(const Graph& g) {
  std::ostringstream os;
  os << "V" << g.vertices << ";E";
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (i) os << ",";
    os << g.edges[i].first << "-" << g.edges[i].second;
  }
  os << ";L";
  for (size_t i = 0; i < g.legs.size(); ++i) {
    if (i) os << ",";
    os << g.legs[i];
  }
  return os.str();
}

std::string canonical_form(const Graph& g, int max_vertices) {
  if (g.vertices > max_vertices)
    throw std::length_error("canonical_form: vertex bound exceeded");
  static std::mutex memo_lock;
  static std::unordered_map<std::string, std::string> memo;
  std::string key = labeled_encoding(g);
  {
    std::lock_guard<std::mutex> hold(memo_lock);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  std::vector<int> perm(g.vertices);
  std::iota(perm.begin(), perm.end(), 0);
  Graph best;
  std::string best_enc;
  do {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges.size());
    for (auto [u, v] : g.edges)
      edges.emplace_back(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    std::vector<int> legs;
    legs.reserve(g.legs.size());
    for (int v : g.legs) legs.push_back(perm[v]);
    Graph h = make_graph(g.vertices, std::move(edges), std::move(legs));
    std::string enc = labeled_encoding(h);
    if (best_enc.empty() || enc < best_enc) best_enc = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  {
    std::lock_guard<std::mutex> hold(memo_lock);
    memo.emplace(std::move(key), best_enc);
  }
  return best_enc;
}

// --- graph files -------------------------------------------------------------

namespace {

Graph graph_from_json(const nlohmann::json& j, std::string* name) {
  if (!j.is_object()) throw input_error("graph entry: expected an object");
  if (!j.contains("name") || !j["name"].is_string())
    throw input_error("graph entry: missing string field 'name'");
  *name = j["name"].get<std::string>();
  auto where = [&](const std::string& f) { return "graph '" + *name + "': " + f; };
  if (!j.contains("vertices") || !j["vertices"].is_number_integer())
    throw input_error(where("missing integer field 'vertices'"));
  int vertices = j["vertices"].get<int>();
  if (!j.contains("edges") || !j["edges"].is_array())
    throw input_error(where("missing array field 'edges'"));
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw input_error(where("edges[" + std::to_string(i) + "]: expected [u,v]"));
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  if (!j.contains("external") || !j["external"].is_array())
    throw input_error(where("missing array field 'external'"));
  std::vector<int> legs;
  for (size_t i = 0; i < j["external"].size(); ++i) {
    if (!j["external"][i].is_number_integer())
      throw input_error(where("external[" + std::to_string(i) + "]: expected a vertex"));
    legs.push_back(j["external"][i].get<int>());
  }
  Graph g = make_graph(vertices, std::move(edges), std::move(legs));
  try {
    validate_graph(g);
  } catch (const input_error& err) {
    throw input_error(where(err.what()));
  }
  return g;
}

}  // namespace

std::vector<std::pair<std::string, Graph>> load_graphs_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error("graph file " + path + ": " + e.what());
  }
  std::vector<std::pair<std::string, Graph>> out;
  auto take = [&](const nlohmann::json& entry) {
    std::string name;
    Graph g = graph_from_json(entry, &name);
    out.emplace_back(std::move(name), std::move(g));
  };
  if (j.is_array())
    for (const auto& entry : j) take(entry);
  else
    take(j);
  return out;
}

std::string graphs_to_json_text(
    const std::vector<std::pair<std::string, Graph>>& named) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, g] : named) {
    nlohmann::json jg;
    jg["name"] = name;
    jg["vertices"] = g.vertices;
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    jg["edges"] = std::move(edges);
    jg["external"] = g.legs;
    arr.push_back(std::move(jg));
  }
  return arr.dump(2) + "\n";
}

}  // namespace renorm
