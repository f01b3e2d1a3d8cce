#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polymer/approx.hpp"
#include "polymer/graph.hpp"
#include "polymer/polymer_model.hpp"
#include "polymer/rng.hpp"
#include "polymer/sampler.hpp"

namespace polymer {

enum class HardCoreVariant { kExpander, kRandomRegular };

const char* variant_name(HardCoreVariant v);

struct HardCoreParams {
  double lambda = 1.0;
  HardCoreVariant variant = HardCoreVariant::kExpander;
  // Bipartite expansion of the expander variant; 0 leaves analytic KP unchecked.
  double alpha = 0.0;
};

// Side 0 is O (odd), side 1 is E (even). Polymers of `side` live in it.
inline constexpr int kOddSide = 0;
inline constexpr int kEvenSide = 1;

// log w = |S| ln(lambda) - |dS| ln(1 + lambda).
double hc_log_weight(const Graph& g, const VertexSet& s, double lambda);

// Size caps: small = floor(|side| / 2); tiny = min(floor(4 ln D / D * |side|), small).
std::size_t hc_small_cap(const Graph& g, int side);
std::size_t hc_tiny_cap(const Graph& g, int side);
// Decay slope rho: 1 (expander) or Delta ln(1+lambda) / (10 ln Delta) (random).
double hc_decay_slope(const Graph& g, const HardCoreParams& p);

PolymerModelSpec hc_spec(const Graph& g, const HardCoreParams& p, int side);
// Polymers of `side` usable at truncation m.
PolymerIndex hc_index(const Graph& g, const HardCoreParams& p, int side, double m);

// Independence polynomial coefficients: counts[k] = #independent sets of
// size k. Branches on a highest-degree vertex; capped at n <= 40.
std::vector<std::uint64_t> hc_brute_counts(const Graph& g);
double log_independence_polynomial(const std::vector<std::uint64_t>& counts, double lambda);

bool hc_uses_brute(std::size_t n, double eps);

// Both branch estimates of a polymer run, before combination.
struct HardCoreBranches {
  double log_even_term = 0.0;  // |O| ln(1+lambda) + T^E
  double log_odd_term = 0.0;   // |E| ln(1+lambda) + T^O
};

// Both branch terms at truncation m; fills polymer statistics into r if given.
HardCoreBranches hc_branches(const Graph& g, const HardCoreParams& p, double m, const RunOptions& opt = {},
                             ApproxResult* r = nullptr);

ApproxResult hc_count(const Graph& g, const HardCoreParams& p, double eps, const RunOptions& opt = {},
                      HardCoreBranches* branches = nullptr);

class HardCoreSampler {
 public:
  HardCoreSampler(const Graph& g, const HardCoreParams& p, double eps, const RunOptions& opt = {});
  HardCoreSampler(const HardCoreSampler&) = delete;
  HardCoreSampler& operator=(const HardCoreSampler&) = delete;

  VertexSet draw(Rng& rng);
  Method method() const { return brute_ ? Method::kBrute : Method::kPolymer; }
  // Probability of drawing polymers on the even side.
  double even_probability() const { return p_even_; }
  const PolymerIndex& index(int side) const { return side == kEvenSide ? even_ : odd_; }
  const std::vector<PolymerId>& last_polymers() const { return last_; }
  int last_side() const { return last_side_; }

 private:
  const Graph& g_;
  HardCoreParams p_;
  bool brute_;
  double p_even_ = 0.5;
  PolymerIndex even_, odd_;
  std::optional<PolymerSampler> even_sampler_, odd_sampler_;
  std::vector<VertexSet> brute_sets_;
  std::vector<double> brute_cdf_;
  std::vector<PolymerId> last_;
  int last_side_ = kEvenSide;
};

VertexSet hc_sample(const Graph& g, const HardCoreParams& p, double eps, Rng& rng);

bool is_independent(const Graph& g, const VertexSet& s);

}  // namespace polymer
