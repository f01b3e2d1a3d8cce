#include "polymer/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace polymer {

namespace {

bool skip_line(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::vector<Vertex> parse_ids(const std::string& text) {
  std::istringstream ss(text);
  std::vector<Vertex> out;
  long long v;
  while (ss >> v) {
    if (v < 0) throw Error("malformed-graph", "negative vertex id");
    out.push_back(static_cast<Vertex>(v));
  }
  if (!ss.eof()) throw Error("malformed-graph", "bad vertex id in sides line");
  return out;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line))
      if (!skip_line(line)) return true;
    return false;
  };
  if (!next_line()) throw Error("malformed-graph", "empty graph file");
  long long n = -1, k = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> k) || n < 0 || k < 0)
      throw Error("malformed-graph", "header must be 'n k'");
  }
  std::optional<Bipartition> sides;
  std::vector<Edge> edges;
  bool have_line = next_line();
  if (have_line && line.find("sides:") != std::string::npos) {
    std::string body = line.substr(line.find("sides:") + 6);
    auto bar = body.find('|');
    if (bar == std::string::npos) throw Error("malformed-graph", "sides line needs '|'");
    Bipartition b;
    b.odd = parse_ids(body.substr(0, bar));
    b.even = parse_ids(body.substr(bar + 1));
    sides = std::move(b);
    have_line = next_line();
  }
  while (have_line) {
    std::istringstream ss(line);
    long long u, v;
    if (!(ss >> u >> v) || u < 0 || v < 0) throw Error("malformed-graph", "bad edge line: " + line);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    have_line = next_line();
  }
  if (static_cast<long long>(edges.size()) != k)
    throw Error("malformed-graph", "header announces " + std::to_string(k) + " edges, found " +
                                       std::to_string(edges.size()));
  return build_graph(edges, static_cast<std::size_t>(n), sides);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  if (g.bipartite()) {
    out << "sides:";
    for (Vertex v : g.sides().odd) out << ' ' << v;
    out << " |";
    for (Vertex v : g.sides().even) out << ' ' << v;
    out << '\n';
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("malformed-graph", "edge must be a pair");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    std::optional<Bipartition> sides;
    if (j.contains("sides") && !j["sides"].is_null()) {
      const auto& s = j["sides"];
      if (!s.is_array() || s.size() != 2) throw Error("malformed-graph", "sides must be two lists");
      sides = Bipartition{s[0].get<std::vector<Vertex>>(), s[1].get<std::vector<Vertex>>()};
    }
    return build_graph(edges, n, sides);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed-graph", e.what());
  }
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  auto edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  if (g.bipartite())
    j["sides"] = {g.sides().odd, g.sides().even};
  else
    j["sides"] = nullptr;
  return j;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') {
    try {
      return graph_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("malformed-graph", e.what());
    }
  }
  std::istringstream ss(text);
  return read_edge_list(ss);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    out << graph_to_json(g).dump() << '\n';
  else
    write_edge_list(out, g);
}

}  // namespace polymer
