#include "polymer/random_regular.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "polymer/rng.hpp"

namespace polymer {

namespace {

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

bool simple_pairing(const std::vector<Edge>& pairs) {
  std::set<Edge> seen;
  for (auto [u, v] : pairs) {
    if (u == v) return false;
    if (!seen.insert(u < v ? Edge{u, v} : Edge{v, u}).second) return false;
  }
  return true;
}

}  // namespace

Graph random_regular(std::size_t n, std::size_t degree, bool bipartite, std::uint64_t seed) {
  if (bipartite) {
    if (n % 2 != 0) throw Error("infeasible", "bipartite mode needs even n");
    if (degree > n / 2) throw Error("infeasible", "degree exceeds side size");
  } else {
    if ((n * degree) % 2 != 0) throw Error("infeasible", "n * degree must be even");
    if (degree >= n && n > 0) throw Error("infeasible", "degree must be below n");
  }
  Rng rng(seed);
  const std::size_t half = n / 2;
  for (std::size_t attempt = 0; attempt < kMaxPairingAttempts; ++attempt) {
    std::vector<Edge> pairs;
    if (bipartite) {
      std::vector<Vertex> odd, even;
      for (Vertex v = 0; v < half; ++v)
        for (std::size_t d = 0; d < degree; ++d) {
          odd.push_back(v);
          even.push_back(static_cast<Vertex>(half + v));
        }
      shuffle(even, rng);
      for (std::size_t i = 0; i < odd.size(); ++i) pairs.emplace_back(odd[i], even[i]);
    } else {
      std::vector<Vertex> stubs;
      for (Vertex v = 0; v < n; ++v)
        for (std::size_t d = 0; d < degree; ++d) stubs.push_back(v);
      shuffle(stubs, rng);
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.emplace_back(stubs[i], stubs[i + 1]);
    }
    if (!simple_pairing(pairs)) continue;
    if (bipartite) {
      Bipartition sides;
      for (Vertex v = 0; v < half; ++v) {
        sides.odd.push_back(v);
        sides.even.push_back(static_cast<Vertex>(half + v));
      }
      return build_graph(pairs, n, sides);
    }
    return build_graph(pairs, n);
  }
  throw Error("max-attempts", "no simple pairing after " + std::to_string(kMaxPairingAttempts) +
                                  " attempts");
}

}  // namespace polymer
