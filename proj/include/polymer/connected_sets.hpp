#pragma once

#include <cstddef>
#include <functional>

#include "polymer/graph.hpp"

namespace polymer {

using SetVisitor = std::function<void(const VertexSet&)>;

// Emits every S with anchor in S, S inside `allowed`, |S| <= max_size and S
// connected in G^power, each exactly once. The anchor must be allowed.
//
// Include/exclude branching: a node (S, X) owns the connected supersets of S
// avoiding X; child i adds the i-th candidate of N(S) - X and excludes the
// earlier ones, so every superset has a unique parent.
void enumerate_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power,
                              const VertexSet& allowed, const SetVisitor& visit);

// Same, with every vertex allowed.
void enumerate_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power,
                              const SetVisitor& visit);

// Counts the sets above without materialising them.
std::size_t count_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power);

// sum_{s=1..t} (e * Delta^power)^s, the enumeration budget per anchor.
double connected_set_budget(std::size_t max_degree, std::size_t max_size, int power);

}  // namespace polymer
