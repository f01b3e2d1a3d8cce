#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "polymer/graph.hpp"

namespace polymer {

// Edge-list text format:
//   n k
//   sides: 0 1 2 | 3 4 5      (optional)
//   u v                       (k lines)
// Blank lines and lines starting with '#' are ignored.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

// JSON mirror: {"n": 6, "edges": [[0,3], ...], "sides": [[0,1,2],[3,4,5]]}.
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

// Dispatches on content: a leading '{' means JSON.
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace polymer
