#include "polymer/connected_sets.hpp"

#include <cmath>

namespace polymer {

namespace {

struct Enumerator {
  const Graph& g;
  std::size_t max_size;
  int power;
  const VertexSet& allowed;
  const SetVisitor& visit;

  // `reach` is N^power(S) - S restricted to allowed vertices.
  void grow(VertexSet& s, std::size_t size, const VertexSet& reach, VertexSet excluded) {
    visit(s);
    if (size == max_size) return;
    VertexSet cand = reach - excluded;
    cand.for_each([&](Vertex w) {
      s.insert(w);
      VertexSet next = (reach | g.ball(w, power)) & allowed;
      next -= s;
      grow(s, size + 1, next, excluded);
      s.erase(w);
      excluded.insert(w);
    });
  }
};

}  // namespace

void enumerate_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power,
                              const VertexSet& allowed, const SetVisitor& visit) {
  if (max_size == 0 || !allowed.contains(anchor)) return;
  Enumerator e{g, max_size, power, allowed, visit};
  VertexSet s = VertexSet::singleton(anchor);
  VertexSet reach = (g.ball(anchor, power) & allowed) - s;
  e.grow(s, 1, reach, VertexSet{});
}

void enumerate_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power,
                              const SetVisitor& visit) {
  enumerate_connected_sets(g, anchor, max_size, power, g.all(), visit);
}

std::size_t count_connected_sets(const Graph& g, Vertex anchor, std::size_t max_size, int power) {
  std::size_t count = 0;
  enumerate_connected_sets(g, anchor, max_size, power, [&](const VertexSet&) { ++count; });
  return count;
}

double connected_set_budget(std::size_t max_degree, std::size_t max_size, int power) {
  double base = std::exp(1.0) * std::pow(static_cast<double>(max_degree), power);
  double total = 0.0;
  double term = 1.0;
  for (std::size_t s = 1; s <= max_size; ++s) {
    term *= base;
    total += term;
  }
  return total;
}

}  // namespace polymer
