#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymer/vertex_set.hpp"

namespace polymer {

// Error carrying a machine-parsable code, e.g. "duplicate-edge".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

using Edge = std::pair<Vertex, Vertex>;

// POLYMER_BRUTE_CAP when set to a positive integer, else `default_cap`.
std::size_t brute_cap(std::size_t default_cap);

// Sides of a bipartite graph. `odd` is the first side (O), `even` the second (E).
struct Bipartition {
  std::vector<Vertex> odd;
  std::vector<Vertex> even;
};

enum class SidesMode {
  kNone,      // ignore bipartiteness
  kDetect,    // 2-color if possible, otherwise leave unset
  kRequired,  // error if not bipartite
};

// Immutable simple undirected graph.
class Graph {
 public:
  Graph() = default;

  std::size_t n() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(Vertex u, Vertex v) const;

  // Degree of every vertex equals max_degree().
  bool is_regular() const;
  bool is_connected() const;

  bool bipartite() const { return sides_.has_value(); }
  const Bipartition& sides() const;
  // 0 for the odd side, 1 for the even side. Requires bipartite().
  int side_of(Vertex v) const { return side_of_[v]; }
  VertexSet side_set(int side) const;
  // |O| when both sides are equal; throws otherwise.
  std::size_t side_size() const;

  // Neighbourhood N(v) as a bitset.
  const VertexSet& neighbor_set(Vertex v) const { return nbr_sets_[v]; }
  // All vertices within distance k of v (v included), k in {1, 2, 3}.
  const VertexSet& ball(Vertex v, int k) const;
  VertexSet all() const { return VertexSet::prefix(n()); }

  friend Graph build_graph(const std::vector<Edge>& edges, std::size_t n,
                           const std::optional<Bipartition>& sides, SidesMode mode);

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::size_t max_degree_ = 0;
  std::optional<Bipartition> sides_;
  std::vector<int> side_of_;
  std::vector<VertexSet> nbr_sets_;
  std::vector<VertexSet> balls_[3];
};

// Validates and builds a graph. With explicit `sides`, every edge must cross
// them; without, `mode` decides whether a 2-coloring is computed.
Graph build_graph(const std::vector<Edge>& edges, std::size_t n,
                  const std::optional<Bipartition>& sides = std::nullopt,
                  SidesMode mode = SidesMode::kDetect);

struct Boundaries {
  VertexSet vertex_boundary;            // dS
  std::size_t edge_boundary = 0;        // |d_e S|
  std::size_t incident_edges = 0;       // |nabla(S)|
  std::size_t internal_edges = 0;       // |E(G[S])|
  VertexSet closure;                    // S+ = S u dS
};

Boundaries boundaries(const Graph& g, const VertexSet& s);
VertexSet vertex_boundary(const Graph& g, const VertexSet& s);
// Number of edges of G[S].
std::size_t internal_edge_count(const Graph& g, const VertexSet& s);

// Whether S is connected in G^k (k >= 1). The empty set is not connected.
bool is_connected_in_power(const Graph& g, const VertexSet& s, int k);
// Connected components of S in G^k, each as a vertex set.
std::vector<VertexSet> power_components(const Graph& g, const VertexSet& s, int k);
// Graph distance between sets is at most k.
bool within_distance(const Graph& g, const VertexSet& a, const VertexSet& b, int k);

// Subgraph induced by `s`, relabelled 0..|s|-1 in increasing id order.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

// Standard small graphs used by tests, the CLI and examples.
namespace graphs {
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph petersen();
Graph disjoint_union(const Graph& a, const Graph& b);
}  // namespace graphs

}  // namespace polymer
