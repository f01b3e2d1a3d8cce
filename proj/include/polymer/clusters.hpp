#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "polymer/kernels.hpp"
#include "polymer/polymer_model.hpp"
#include "polymer/ursell.hpp"

namespace polymer {

// A multiset of polymers with connected incompatibility graph, stored as its
// distinct support (ascending ids) and multiplicities.
struct Cluster {
  std::vector<PolymerId> ids;
  std::vector<std::uint32_t> mults;
  std::size_t total_size = 0;
  double total_g = 0.0;
  std::int64_t ursell = 0;          // U(H) of the blown-up incompatibility graph
  std::int64_t mult_factorial = 1;  // prod m_i!
  double log_weight_sum = 0.0;      // sum m_i log w_i

  std::size_t node_count() const;
  // U(H) / prod m_i!, the coefficient of prod w^m in log Xi.
  Rational coefficient() const;
  // Non-decreasing id sequence with repetitions.
  std::vector<PolymerId> sequence() const;
  // coefficient * exp(log_weight_sum) in floating point.
  double term() const;
};

using ClusterVisitor = std::function<void(const Cluster&)>;

inline constexpr std::size_t kNoSizeBound = std::numeric_limits<std::size_t>::max();

// Incompatibility graph of the multiset: copies of one polymer form a clique.
SmallGraph cluster_graph(const PolymerIndex& index, const std::vector<PolymerId>& ids,
                         const std::vector<std::uint32_t>& mults);

// Reusable cluster enumerator over one index. Not thread-safe; use one per
// thread. `active` (size index.size(), nonzero = usable) restricts the
// universe; null means every polymer.
class ClusterWalker {
 public:
  explicit ClusterWalker(const PolymerIndex& index);

  // Clusters with total_g < g_bound, total_size <= size_bound, whose minimum
  // id is `root`.
  void rooted(PolymerId root, double g_bound, std::size_t size_bound,
              const std::vector<std::uint8_t>* active, const ClusterVisitor& visit);

  // Clusters (inside `active`) meeting `touch`, each emitted once: rooted at
  // its smallest member of `touch`.
  void touching(const std::vector<PolymerId>& touch, double g_bound, std::size_t size_bound,
                const std::vector<std::uint8_t>* active, const ClusterVisitor& visit);

  // Sum of terms of touching(...). Equals T(active) - T(active - touch).
  double touching_sum(const std::vector<PolymerId>& touch, double g_bound, std::size_t size_bound,
                      const std::vector<std::uint8_t>* active);

  std::size_t max_nodes = kMaxUrsellNodes;

 private:
  void run(PolymerId root, bool min_rooted, double g_bound, std::size_t size_bound,
           const std::vector<std::uint8_t>* active, const ClusterVisitor& visit);
  void grow(const std::vector<PolymerId>& cand, double g_sum, std::size_t size_sum);
  void emit_support(double g_sum, std::size_t size_sum);
  void assign_mults(std::size_t i, double g_sum, std::size_t size_sum);
  void emit_cluster(double g_sum, std::size_t size_sum);
  bool usable(PolymerId u) const;

  const PolymerIndex& index_;
  std::vector<std::uint8_t> state_;
  std::vector<PolymerId> support_;
  std::vector<PolymerId> sorted_;
  std::vector<std::uint32_t> mults_;
  std::vector<std::uint32_t> rows_;  // incompatibility rows of sorted_
  Cluster current_;
  const std::vector<std::uint8_t>* active_ = nullptr;
  const ClusterVisitor* visit_ = nullptr;
  PolymerId root_ = 0;
  bool min_rooted_ = true;
  double g_bound_ = 0.0;
  std::size_t size_bound_ = kNoSizeBound;
};

// Every cluster with total_g < g_bound and total_size <= size_bound, exactly
// once, in root order.
void for_each_cluster(const PolymerIndex& index, double g_bound, std::size_t size_bound,
                      const ClusterVisitor& visit);

struct ExpansionOptions {
  std::size_t size_bound = kNoSizeBound;
  unsigned threads = 1;
  kernels::Isa isa = kernels::active_isa();
};

struct ExpansionResult {
  double value = 0.0;
  std::size_t cluster_count = 0;
};

// T_m: sum of cluster terms with g(cluster) < m. Terms are summed per root in
// log space through the signed-exp kernel, root sums merged in root order,
// so the value does not depend on the thread count.
ExpansionResult truncated_expansion(const PolymerIndex& index, double m,
                                    const ExpansionOptions& options = {});

// Exact T_m with rational weights (weights[i] for polymer id i).
Rational truncated_expansion_rational(const PolymerIndex& index, double m,
                                      const std::vector<Rational>& weights,
                                      std::size_t size_bound = kNoSizeBound);

// Largest polymer count accepted by xi_exact; POLYMER_BRUTE_CAP overrides.
std::size_t xi_exact_cap();

// log Xi by summing over all mutually compatible polymer sets.
double xi_exact(const PolymerIndex& index);
// Xi with explicit rational weights.
Rational xi_exact_rational(const PolymerIndex& index, const std::vector<Rational>& weights);

// Debug dump: [{ids, mults, U_num, U_den, term}, ...].
std::string clusters_json(const PolymerIndex& index, double m, std::size_t size_bound = kNoSizeBound);

}  // namespace polymer
