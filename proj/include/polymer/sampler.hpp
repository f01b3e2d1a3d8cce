#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "polymer/clusters.hpp"
#include "polymer/polymer_model.hpp"
#include "polymer/rng.hpp"

namespace polymer {

// Probability mass above 1 tolerated (and renormalised) at one step.
inline constexpr double kMassTolerance = 1e-6;

// Draws Gamma approximately from nu(Gamma) = prod w / Xi by self-reducibility.
// Universe: polymers with g < m, m = log(2n/eps). Vertices are visited in
// increasing order; at the step of v every remaining polymer whose minimum
// vertex is v is a candidate, chosen with probability
//   w_gamma * Xi(C - N[gamma]) / Xi(C),
// where N[gamma] is gamma with everything incompatible with it. The ratio is
// exp(-(clusters of C touching N[gamma])), truncated at m_step =
// log(8 n^2 / eps) so each ratio is within eps/(4n).
class PolymerSampler {
 public:
  PolymerSampler(const PolymerIndex& index, double eps);

  std::vector<PolymerId> draw(Rng& rng);

  double truncation() const { return m_; }
  double step_truncation() const { return m_step_; }
  std::size_t universe_size() const { return universe_; }
  // Largest estimated step mass seen so far.
  double max_step_mass() const { return max_mass_; }

 private:
  const std::vector<double>& step_probabilities(std::size_t step, const std::vector<std::uint8_t>& active,
                                                const std::vector<PolymerId>& chosen);

  const PolymerIndex& index_;
  double eps_;
  double m_;
  double m_step_;
  std::size_t universe_ = 0;
  double max_mass_ = 0.0;
  std::vector<std::uint8_t> base_active_;
  // (vertex, candidates owned by it) in increasing vertex order.
  std::vector<std::pair<Vertex, std::vector<PolymerId>>> steps_;
  ClusterWalker walker_;
  // Step probabilities depend only on the step and the polymers chosen before.
  std::map<std::pair<std::size_t, std::vector<PolymerId>>, std::vector<double>> cache_;
};

// One draw with a fresh sampler.
std::vector<PolymerId> sample_config(const PolymerIndex& index, double eps, Rng& rng);

// True iff the ids are pairwise compatible.
bool pairwise_compatible(const PolymerIndex& index, const std::vector<PolymerId>& ids);

}  // namespace polymer
