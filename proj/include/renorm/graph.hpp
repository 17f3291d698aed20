#pragma once

#include <string>
#include <utility>
#include <vector>

namespace renorm {

// A phi^4 Feynman graph: labeled vertices 0..vertices-1, an internal edge
// multiset, and external legs given by the vertex each leg ends on.
// Normal form keeps each edge as (u,v) with u <= v and both lists sorted, so
// equality of normalized graphs is plain field equality.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> legs;

  bool operator==(const Graph&) const = default;
};

// Sorted list of indices into g.edges. Subgraphs are edge subsets; the
// vertices they span come along implicitly.
using EdgeSubset = std::vector<int>;

Graph make_graph(int vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> legs);

// Throws input_error naming the offending field. Vertex degrees must be 4, or
// 2 for insertion vertices introduced by contraction.
void validate_graph(const Graph& g);

std::vector<int> vertex_degrees(const Graph& g);
bool is_connected(const Graph& g);

// Connected and still connected after deleting any single internal edge.
// A lone self-loop passes: deleting it leaves one vertex.
bool is_one_particle_irreducible(const Graph& g);

// First Betti number I - V + c (c = connected components).
int loop_number(const Graph& g);

// Superficial degree of divergence 4*loops - 2*edges, also for graphs with
// insertion vertices.
int superficial_degree(const Graph& g);

inline int external_count(const Graph& g) {
  return static_cast<int>(g.legs.size());
}

// Proper nonempty edge subsets whose connected components are each 1PI with
// 2 or 4 external edges (inherited legs plus stubs of unselected edges).
// Distinct subsets are distinct results even when isomorphic.
std::vector<EdgeSubset> admissible_subgraphs(const Graph& g);

// The components of an edge subset as standalone graphs; stubs of unselected
// edges become legs. Deterministic order (by smallest parent vertex).
std::vector<Graph> subgraph_components(const Graph& g, const EdgeSubset& s);

// Collapses each component of an admissible subset to a single vertex:
// 4-valent for 4 external edges, a 2-valent insertion vertex for 2.
// Throws std::invalid_argument if the subset is not admissible.
Graph contract(const Graph& g, const EdgeSubset& s);

int subgraph_loop_number(const Graph& g, const EdgeSubset& s);

// Cheap deterministic encoding of the labeled graph, used as memo key and
// diagnostic text.
std::string labeled_encoding(const Graph& g);

// Isomorphism-invariant key: minimal labeled encoding over all vertex
// permutations. Exhaustive, memoized behind a lock; throws std::length_error
// above max_vertices.
std::string canonical_form(const Graph& g, int max_vertices = 10);

// --- graph files -----------------------------------------------------------
// A file holds one graph object or an array of them:
//   {"name": "B2", "vertices": 3, "edges": [[0,1],[0,1],[1,2],[1,2]],
//    "external": [0,0,2,2]}
std::vector<std::pair<std::string, Graph>> load_graphs_file(
    const std::string& path);
std::string graphs_to_json_text(
    const std::vector<std::pair<std::string, Graph>>& named);

}  // namespace renorm
