#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymer/approx.hpp"
#include "polymer/expansion.hpp"
#include "polymer/graph.hpp"
#include "polymer/polymer_model.hpp"
#include "polymer/polynomial.hpp"
#include "polymer/rng.hpp"
#include "polymer/sampler.hpp"

namespace polymer {

struct PottsParams {
  std::size_t q = 2;
  double beta = 1.0;
  // Certified edge expansion; 0 leaves the analytic KP check unchecked.
  double alpha = 0.0;
};

inline constexpr std::size_t kPottsWeightCap = 20;

// Histogram of monochromatic-edge counts over all colors^|S| colorings of
// G[S]: hist[k] = number of colorings with k monochromatic edges.
std::vector<std::uint64_t> induced_mono_histogram(const Graph& g, const VertexSet& s, std::size_t colors);

// log sum_k hist[k] e^{beta k}.
double log_histogram_sum(const std::vector<std::uint64_t>& hist, double beta);

// log w = -beta |nabla(S)| + log Z_{G[S], q-1}(beta).
double potts_log_weight(const Graph& g, const VertexSet& s, const PottsParams& p);

// The weight as an exact Laurent polynomial in x = e^beta.
LaurentPoly potts_weight_polynomial(const Graph& g, const VertexSet& s, std::size_t q);

// Polymers: connected in G, 2|S| <= n, g(S) = |S|.
PolymerModelSpec potts_spec(const Graph& g, const PottsParams& p);

// Polymer universe used at truncation m (sizes below m, at most n/2).
PolymerIndex potts_index(const Graph& g, const PottsParams& p, double m);

// Exact monochromatic histogram of the whole graph (brute-force branch).
std::vector<std::uint64_t> potts_brute_histogram(const Graph& g, std::size_t q);

// Brute branch applies when eps <= e^{-n/2}.
bool potts_uses_brute(std::size_t n, double eps);

ApproxResult potts_count(const Graph& g, const PottsParams& p, double eps, const RunOptions& opt = {});

struct PottsCertificate {
  ExpansionReport spectral;
  bool spectral_ok = false;   // lambda(G) <= 2 sqrt(Delta-1) + 1/100
  double alpha = 0.0;         // Delta / 40 when spectral_ok
  double beta_required = 0.0; // 200 ln(q Delta) / Delta
  bool beta_ok = false;
  bool certified = false;
  std::string reason;         // why not certified
  std::optional<ApproxResult> result;
};

// Spectral certification for Delta-regular graphs; counts only when both
// the spectral bound and the beta requirement hold. Throws
// Error("non-regular") for irregular graphs.
PottsCertificate potts_certified_count(const Graph& g, std::size_t q, double beta, double eps,
                                       const RunOptions& opt = {});

// Reusable sampler for mu_{G,q,beta} at total-variation error eps.
class PottsSampler {
 public:
  PottsSampler(const Graph& g, const PottsParams& p, double eps);
  PottsSampler(const PottsSampler&) = delete;
  PottsSampler& operator=(const PottsSampler&) = delete;
  std::vector<std::uint32_t> draw(Rng& rng);
  Method method() const { return brute_ ? Method::kBrute : Method::kPolymer; }
  const PolymerIndex& index() const { return index_; }
  // Polymers of the last polymer-branch draw.
  const std::vector<PolymerId>& last_polymers() const { return last_; }

 private:
  const std::vector<double>& inner_distribution(PolymerId id);

  const Graph& g_;
  PottsParams p_;
  bool brute_;
  PolymerIndex index_;
  std::optional<PolymerSampler> sampler_;
  std::vector<std::vector<double>> inner_cdf_;
  std::vector<double> brute_cdf_;
  std::vector<std::uint64_t> brute_hist_;
  std::vector<PolymerId> last_;
};

std::vector<std::uint32_t> potts_sample(const Graph& g, const PottsParams& p, double eps, Rng& rng);

// Number of monochromatic edges of a coloring.
std::size_t monochromatic_edges(const Graph& g, const std::vector<std::uint32_t>& colors);

}  // namespace polymer
