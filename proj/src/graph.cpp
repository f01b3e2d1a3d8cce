#include "polymer/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace polymer {

std::size_t brute_cap(std::size_t default_cap) {
  if (const char* env = std::getenv("POLYMER_BRUTE_CAP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return default_cap;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::is_regular() const {
  for (const auto& a : adj_)
    if (a.size() != max_degree_) return false;
  return true;
}

bool Graph::is_connected() const {
  if (adj_.empty()) return true;
  std::vector<char> seen(n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n();
}

const Bipartition& Graph::sides() const {
  if (!sides_) throw Error("not-bipartite", "graph has no bipartition");
  return *sides_;
}

VertexSet Graph::side_set(int side) const {
  const auto& s = sides();
  VertexSet out;
  for (Vertex v : side == 0 ? s.odd : s.even) out.insert(v);
  return out;
}

std::size_t Graph::side_size() const {
  const auto& s = sides();
  if (s.odd.size() != s.even.size())
    throw Error("unequal-sides", "sides have sizes " + std::to_string(s.odd.size()) + " and " +
                                     std::to_string(s.even.size()));
  return s.odd.size();
}

const VertexSet& Graph::ball(Vertex v, int k) const {
  if (k < 1 || k > 3) throw Error("bad-power", "graph power must be 1, 2 or 3");
  if (balls_[0].empty())
    throw Error("too-large", "vertex-set operations need n <= " + std::to_string(kMaxVertices));
  return balls_[k - 1][v];
}

Graph build_graph(const std::vector<Edge>& edges, std::size_t n,
                  const std::optional<Bipartition>& sides, SidesMode mode) {
  Graph g;
  g.adj_.assign(n, {});
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error("bad-vertex", "edge endpoint out of range: " + std::to_string(u) + " " +
                                    std::to_string(v));
    if (u == v) throw Error("loop", "self-loop at vertex " + std::to_string(u));
    Edge key = u < v ? Edge{u, v} : Edge{v, u};
    if (!seen.insert(key).second)
      throw Error("duplicate-edge", "duplicate edge " + std::to_string(key.first) + " " +
                                        std::to_string(key.second));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
    g.edges_.push_back(key);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    g.max_degree_ = std::max(g.max_degree_, a.size());
  }

  g.side_of_.assign(n, -1);
  if (sides) {
    for (Vertex v : sides->odd) {
      if (v >= n || g.side_of_[v] != -1)
        throw Error("bad-sides", "side lists must partition the vertices");
      g.side_of_[v] = 0;
    }
    for (Vertex v : sides->even) {
      if (v >= n || g.side_of_[v] != -1)
        throw Error("bad-sides", "side lists must partition the vertices");
      g.side_of_[v] = 1;
    }
    if (sides->odd.size() + sides->even.size() != n)
      throw Error("bad-sides", "side lists must cover every vertex");
    for (auto [u, v] : g.edges_)
      if (g.side_of_[u] == g.side_of_[v])
        throw Error("edge-within-side", "edge " + std::to_string(u) + " " + std::to_string(v) +
                                            " lies inside one side");
    g.sides_ = *sides;
    std::sort(g.sides_->odd.begin(), g.sides_->odd.end());
    std::sort(g.sides_->even.begin(), g.sides_->even.end());
  } else if (mode != SidesMode::kNone) {
    // BFS 2-coloring; each component's smallest vertex goes to the odd side.
    bool ok = true;
    for (Vertex s = 0; s < n && ok; ++s) {
      if (g.side_of_[s] != -1) continue;
      g.side_of_[s] = 0;
      std::vector<Vertex> queue{s};
      for (std::size_t i = 0; i < queue.size() && ok; ++i) {
        Vertex u = queue[i];
        for (Vertex w : g.adj_[u]) {
          if (g.side_of_[w] == -1) {
            g.side_of_[w] = 1 - g.side_of_[u];
            queue.push_back(w);
          } else if (g.side_of_[w] == g.side_of_[u]) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      Bipartition b;
      for (Vertex v = 0; v < n; ++v) (g.side_of_[v] == 0 ? b.odd : b.even).push_back(v);
      g.sides_ = std::move(b);
    } else if (mode == SidesMode::kRequired) {
      throw Error("non-bipartite", "graph contains an odd cycle");
    } else {
      g.side_of_.assign(n, -1);
    }
  }

  if (n <= kMaxVertices) {
    g.nbr_sets_.assign(n, VertexSet{});
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : g.adj_[v]) g.nbr_sets_[v].insert(w);
    for (int k = 0; k < 3; ++k) g.balls_[k].assign(n, VertexSet{});
    for (Vertex v = 0; v < n; ++v) {
      VertexSet reach = VertexSet::singleton(v);
      for (int k = 0; k < 3; ++k) {
        VertexSet next = reach;
        reach.for_each([&](Vertex u) { next |= g.nbr_sets_[u]; });
        reach = next;
        g.balls_[k][v] = reach;
      }
    }
  }
  return g;
}

VertexSet vertex_boundary(const Graph& g, const VertexSet& s) {
  VertexSet out;
  s.for_each([&](Vertex v) { out |= g.neighbor_set(v); });
  return out - s;
}

std::size_t internal_edge_count(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  s.for_each([&](Vertex v) { twice += (g.neighbor_set(v) & s).size(); });
  return twice / 2;
}

Boundaries boundaries(const Graph& g, const VertexSet& s) {
  Boundaries b;
  std::size_t twice_internal = 0;
  s.for_each([&](Vertex v) {
    const VertexSet& nb = g.neighbor_set(v);
    std::size_t inside = (nb & s).size();
    twice_internal += inside;
    b.edge_boundary += g.degree(v) - inside;
    b.vertex_boundary |= nb;
  });
  b.vertex_boundary -= s;
  b.internal_edges = twice_internal / 2;
  b.incident_edges = b.internal_edges + b.edge_boundary;
  b.closure = s | b.vertex_boundary;
  return b;
}

std::vector<VertexSet> power_components(const Graph& g, const VertexSet& s, int k) {
  std::vector<VertexSet> comps;
  VertexSet left = s;
  while (!left.empty()) {
    Vertex root = left.min();
    VertexSet comp = VertexSet::singleton(root);
    VertexSet frontier = comp;
    left.erase(root);
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](Vertex u) { next |= g.ball(u, k); });
      next &= left;
      left -= next;
      comp |= next;
      frontier = next;
    }
    comps.push_back(comp);
  }
  return comps;
}

bool is_connected_in_power(const Graph& g, const VertexSet& s, int k) {
  if (s.empty()) return false;
  return power_components(g, s, k).size() == 1;
}

bool within_distance(const Graph& g, const VertexSet& a, const VertexSet& b, int k) {
  bool hit = false;
  a.for_each([&](Vertex v) {
    if (!hit && g.ball(v, k).intersects(b)) hit = true;
  });
  return hit;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> ids = s.to_vector();
  std::vector<Vertex> relabel(g.n(), 0);
  for (Vertex i = 0; i < ids.size(); ++i) relabel[ids[i]] = i;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (s.contains(u) && s.contains(v)) edges.emplace_back(relabel[u], relabel[v]);
  return build_graph(edges, ids.size(), std::nullopt, SidesMode::kNone);
}

namespace graphs {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return build_graph(e, n);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  Bipartition sides;
  for (Vertex u = 0; u < a; ++u) sides.odd.push_back(u);
  for (Vertex v = 0; v < b; ++v) sides.even.push_back(static_cast<Vertex>(a + v));
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) e.emplace_back(u, static_cast<Vertex>(a + v));
  return build_graph(e, a + b, sides);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return build_graph(e, n);
}

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return build_graph(e, n);
}

Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return build_graph(e, 10);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  auto shift = static_cast<Vertex>(a.n());
  for (auto [u, v] : b.edges()) e.emplace_back(u + shift, v + shift);
  return build_graph(e, a.n() + b.n());
}

}  // namespace graphs

}  // namespace polymer
