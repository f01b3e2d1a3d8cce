#include "polymer/ursell.hpp"

#include <bit>
#include <string>

#include "polymer/graph.hpp"

namespace polymer {

SmallGraph::SmallGraph(std::size_t nodes) : adj_(nodes, 0) {
  if (nodes > 32) throw Error("too-large", "small graphs hold at most 32 nodes");
}

void SmallGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  adj_[a] |= std::uint32_t{1} << b;
  adj_[b] |= std::uint32_t{1} << a;
}

std::size_t SmallGraph::edge_count() const {
  std::size_t twice = 0;
  for (auto m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
  return twice / 2;
}

bool SmallGraph::connected() const {
  if (adj_.empty()) return false;
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == static_cast<int>(adj_.size());
}

SmallGraph SmallGraph::complete(std::size_t c) {
  SmallGraph g(c);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b) g.add_edge(a, b);
  return g;
}

SmallGraph SmallGraph::path(std::size_t c) {
  SmallGraph g(c);
  for (std::size_t a = 0; a + 1 < c; ++a) g.add_edge(a, a + 1);
  return g;
}

std::int64_t factorial(std::size_t k) {
  if (k > 20) throw Error("overflow", "factorial above 20! does not fit 64 bits");
  std::int64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<std::int64_t>(i);
  return f;
}

std::int64_t ursell_sum(const SmallGraph& h) {
  const std::size_t c = h.size();
  if (c == 0 || !h.connected()) throw Error("disconnected", "Ursell function needs a connected graph");
  if (c > kMaxUrsellNodes)
    throw Error("too-large", "Ursell function capped at " + std::to_string(kMaxUrsellNodes) + " nodes");
  if (c == 1) return 1;

  const std::uint32_t full = (std::uint32_t{1} << c) - 1;
  // f(S) = 1 iff S is independent in H (the signed edge-subset sum of an
  // edgeless graph is 1, of anything else 0).
  std::vector<std::uint8_t> indep(std::size_t{1} << c, 0);
  indep[0] = 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    auto v = static_cast<unsigned>(std::countr_zero(s));
    std::uint32_t rest = s & (s - 1);
    indep[s] = indep[rest] && !(h.neighbors(v) & rest);
  }
  // conn[S] for S containing its lowest element; every S qualifies.
  std::vector<std::int64_t> conn(std::size_t{1} << c, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t low = s & (~s + 1);
    std::uint32_t others = s ^ low;
    std::int64_t value = indep[s];
    // Proper subsets T of S containing `low`: T = low | sub, sub a proper
    // subset of `others`.
    if (others) {
      for (std::uint32_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
        std::uint32_t t = low | sub;
        std::uint32_t rest = s ^ t;
        if (indep[rest] && conn[t] != 0) value -= conn[t];
        if (sub == 0) break;
      }
    }
    conn[s] = value;
  }
  return conn[full];
}

Rational ursell_phi(const SmallGraph& h) {
  return Rational(ursell_sum(h)) / Rational(factorial(h.size()));
}

}  // namespace polymer
