#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polymer/graph.hpp"

namespace polymer {

using PolymerId = std::uint32_t;

// Describes one polymer model over a graph. Polymers are the admissible,
// G^k-connected vertex sets; two polymers are compatible iff their distance
// in G exceeds k.
struct PolymerModelSpec {
  int power = 1;
  // Vertices a polymer may use (side restriction). Empty means all.
  VertexSet allowed;
  // Extra admissibility beyond connectivity and `allowed`; null accepts all.
  std::function<bool(const VertexSet&)> admissible;
  // log w(S); -infinity marks a zero-weight set, which is dropped.
  std::function<double(const VertexSet&)> log_weight;
  // g(S) >= decay_slope * |S|. Null means g(S) = |S|.
  std::function<double(const VertexSet&)> decay;
  double decay_slope = 1.0;
  std::string label;
};

struct Polymer {
  VertexSet set;
  double log_weight = 0.0;
  double g = 0.0;
  std::size_t size = 0;
  Vertex min_vertex = 0;
};

// Immutable universe of polymers with dense ids and the incompatibility
// graph between them. Ids are sorted by (size, canonical set order). A
// polymer is incompatible with itself; incompat lists exclude self.
class PolymerIndex {
 public:
  PolymerIndex() = default;
  // Builds from explicit polymers and incompatible pairs. Polymers are
  // re-sorted into canonical id order; pair ids refer to the input order.
  PolymerIndex(std::size_t vertex_count, std::vector<Polymer> polymers,
               const std::vector<std::pair<PolymerId, PolymerId>>& incompatible_pairs,
               double decay_slope = 1.0, std::string label = {});

  std::size_t size() const { return polymers_.size(); }
  bool empty() const { return polymers_.empty(); }
  const Polymer& operator[](PolymerId id) const { return polymers_[id]; }
  const std::vector<Polymer>& polymers() const { return polymers_; }
  // Sorted ids incompatible with `id`, excluding `id` itself.
  const std::vector<PolymerId>& incompatible_with(PolymerId id) const { return incompat_[id]; }
  bool incompatible(PolymerId a, PolymerId b) const;

  std::size_t vertex_count() const { return vertex_count_; }
  double decay_slope() const { return decay_slope_; }
  const std::string& label() const { return label_; }
  std::size_t max_polymer_size() const;

  // Rebuilds with polymers satisfying `keep`; ids are renumbered densely in
  // the same order.
  PolymerIndex filtered(const std::function<bool(const Polymer&)>& keep) const;

 private:
  friend PolymerIndex enumerate_polymers(const Graph&, const PolymerModelSpec&, std::size_t);

  std::size_t vertex_count_ = 0;
  std::vector<Polymer> polymers_;
  std::vector<std::vector<PolymerId>> incompat_;
  double decay_slope_ = 1.0;
  std::string label_;
};

// Enumeration aborts with Error("too-many-polymers") beyond this count.
inline constexpr std::size_t kMaxPolymers = 2'000'000;

// All admissible G^k-connected sets of size <= size_cap with nonzero weight.
// Incompatibility: distance <= k, found through k-balls of member vertices.
PolymerIndex enumerate_polymers(const Graph& g, const PolymerModelSpec& spec, std::size_t size_cap);

// Abstract index: polymer i is incompatible with j iff incompat[i][j].
// Polymer i gets the vertex set {i}; g defaults to 1 per polymer.
PolymerIndex abstract_index(const std::vector<double>& log_weights,
                            const std::vector<std::vector<bool>>& incompat,
                            const std::vector<double>& g_values = {});

}  // namespace polymer
