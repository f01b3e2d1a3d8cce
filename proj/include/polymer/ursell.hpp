#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polymer {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxUrsellNodes = 20;

// Simple graph on at most kMaxUrsellNodes nodes, adjacency as bitmasks.
class SmallGraph {
 public:
  explicit SmallGraph(std::size_t nodes = 0);

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const { return (adj_[a] >> b) & 1U; }
  std::uint32_t neighbors(std::size_t a) const { return adj_[a]; }
  std::size_t edge_count() const;
  bool connected() const;
  const std::vector<std::uint32_t>& adjacency() const { return adj_; }

  static SmallGraph complete(std::size_t c);
  static SmallGraph path(std::size_t c);

 private:
  std::vector<std::uint32_t> adj_;
};

// U(H) = sum over spanning connected edge subsets A of (-1)^|A|.
// Exact; computed from the independent-set indicator of H by the connected
// subset recursion C(S) = f(S) - sum_{T < S, min S in T} C(T) f(S - T).
// Throws Error("disconnected") for disconnected H and Error("too-large")
// above kMaxUrsellNodes.
std::int64_t ursell_sum(const SmallGraph& h);

// phi(H) = U(H) / |V(H)|!.
Rational ursell_phi(const SmallGraph& h);

std::int64_t factorial(std::size_t k);

}  // namespace polymer
