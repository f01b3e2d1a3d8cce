#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polymer/graph.hpp"

namespace polymer {

// Exact ratio num/den as produced by the brute-force expansion search.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class ExpansionMethod { kExact, kSpectral };

struct ExpansionReport {
  ExpansionMethod method = ExpansionMethod::kExact;

  // Exact mode.
  std::optional<Ratio> edge_expansion;  // h(G)
  // Bipartite vertex expansion over sets of size <= sigma * |side| within
  // one side: min |dS|/|S|. Filled for bipartite graphs, sigma = 1/2.
  std::optional<Ratio> vertex_expansion;
  std::optional<double> bipartite_alpha;  // vertex_expansion - 1

  // Spectral mode.
  std::optional<double> lambda2;      // second largest adjacency eigenvalue
  std::optional<double> lambda_min;   // smallest adjacency eigenvalue
  std::optional<double> lambda;       // max(|lambda2|, |lambda_min|)
  std::optional<double> cheeger_lb;   // (Delta - lambda2) / 2
  std::optional<double> tanner_alpha; // (D^2 - l2^2) / (D^2 + l2^2)
  std::optional<bool> friedman_ok;    // lambda <= 2 sqrt(Delta - 1) + eps
  double friedman_bound = 0.0;
};

// Cap on n for exact expansion; POLYMER_BRUTE_CAP overrides the default 24.
std::size_t exact_expansion_cap();

// Exact h(G) = min over 1 <= |S| <= n/2 of |d_e S| / |S|, and the bipartite
// vertex expansion for sigma = 1/2 when G has sides.
ExpansionReport expansion_exact(const Graph& g);

// Exact min |dS|/|S| over nonempty S inside one side with |S| <= sigma*|side|,
// minimised over both sides. nullopt when no such S exists.
std::optional<Ratio> vertex_expansion_exact(const Graph& g, double sigma);

// Whether G is a bipartite (sigma, rho)-expander, by exhaustive search.
bool is_sigma_rho_expander(const Graph& g, double sigma, double rho);

// Adjacency spectrum (ascending), dense symmetric solver.
std::vector<double> adjacency_spectrum(const Graph& g);

// Spectral bounds for a Delta-regular graph.
ExpansionReport expansion_spectral(const Graph& g, double eps);

// Base-2 binary entropy; H(0) = H(1) = 0.
double binary_entropy(double p);

// Smallest Delta threshold above which almost every Delta-regular bipartite
// graph is a (sigma, rho)-expander:
//   (H(s) + H(s r)) / (H(s) - s r H(1/r)).
// Throws Error("infeasible") outside 0 < s < 1, r > 1, s r < 1, or when the
// denominator is not positive.
double bassalygo_threshold(double sigma, double rho);

// (sigma, rho) = (4 ln D / D, D / (4 ln D) - 1/2).
std::pair<double, double> random_regular_expansion_params(double delta);

}  // namespace polymer
