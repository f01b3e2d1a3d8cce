#pragma once

#include <cstddef>
#include <cstdint>

#include "polymer/graph.hpp"

namespace polymer {

inline constexpr std::size_t kMaxPairingAttempts = 10000;

// Configuration-model sample conditioned on simplicity (rejection).
// Bipartite mode puts vertices [0, n/2) on the odd side and pairs half-edges
// across sides only. Deterministic in `seed`.
Graph random_regular(std::size_t n, std::size_t degree, bool bipartite, std::uint64_t seed);

}  // namespace polymer
