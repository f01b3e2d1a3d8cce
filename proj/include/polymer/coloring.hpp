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

// Ordered bipartition (A, B) of the colors [q] as bitmasks; A colors the
// odd side, B the even side in the ground state.
struct Pattern {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::size_t a_size() const;
  std::size_t b_size() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

inline constexpr std::size_t kMaxColors = 16;
// Largest |S+| enumerated for a coloring weight.
inline constexpr std::size_t kColoringClosureCap = 20;

// All 2^q - 2 patterns, ordered by the mask of A.
std::vector<Pattern> enumerate_patterns(std::size_t q);

struct ColoringParams {
  std::size_t q = 3;
  // Constant of the degree threshold Delta >= C q^2 ln^2 q.
  double c = 6500.0;
  // Desk-scale mode: explicit polymer size cap and g(S) = |S|.
  bool override_caps = false;
  std::size_t size_cap = 2;
};

// Number of colorings of G[S+] that are proper, disagree with (A, B) on S
// and agree with it on dS. Throws Error("weight-cap") past the closure cap.
std::uint64_t chi_hat_count(const Graph& g, const VertexSet& s, const Pattern& pat, std::size_t q);

// Allowed colors of v: disagreeing (v in S) or agreeing (v in dS) with (A, B).
std::uint32_t allowed_colors(const Graph& g, Vertex v, bool in_polymer, const Pattern& pat);

// log(|chi_hat| / (|A|^{|S+ n O|} |B|^{|S+ n E|})); -infinity when zero.
double coloring_log_weight(const Graph& g, const VertexSet& s, const Pattern& pat, std::size_t q);

// floor(4 q ln(Delta) / Delta * |side|).
std::size_t coloring_little_cap(const Graph& g, std::size_t q);
// Delta / (10 q^2 ln Delta), or 1 in override mode.
double coloring_decay_slope(const Graph& g, const ColoringParams& p);

PolymerModelSpec coloring_spec(const Graph& g, const ColoringParams& p, const Pattern& pat);
PolymerIndex coloring_index(const Graph& g, const ColoringParams& p, const Pattern& pat, double m);

// Number of proper q-colorings by q^n enumeration (brute-force branch).
std::uint64_t coloring_brute_count(const Graph& g, std::size_t q);

bool coloring_uses_brute(std::size_t n, std::size_t q, double eps);

// log of |A|^m |B|^m Xi_{A,B} estimates, one per pattern.
std::vector<double> coloring_pattern_terms(const Graph& g, const ColoringParams& p, double m,
                                           const RunOptions& opt = {}, ApproxResult* r = nullptr);

ApproxResult coloring_count(const Graph& g, const ColoringParams& p, double eps, const RunOptions& opt = {});

class ColoringSampler {
 public:
  ColoringSampler(const Graph& g, const ColoringParams& p, double eps, const RunOptions& opt = {});
  ColoringSampler(const ColoringSampler&) = delete;
  ColoringSampler& operator=(const ColoringSampler&) = delete;

  std::vector<std::uint32_t> draw(Rng& rng);
  Method method() const { return brute_ ? Method::kBrute : Method::kPolymer; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const PolymerIndex& index(std::size_t pattern) const { return indexes_[pattern]; }
  std::size_t last_pattern() const { return last_pattern_; }
  const std::vector<PolymerId>& last_polymers() const { return last_; }

 private:
  const Graph& g_;
  ColoringParams p_;
  bool brute_;
  std::uint64_t brute_total_ = 0;
  std::vector<Pattern> patterns_;
  std::vector<double> pattern_cdf_;
  std::vector<PolymerIndex> indexes_;
  std::vector<std::optional<PolymerSampler>> samplers_;
  std::size_t last_pattern_ = 0;
  std::vector<PolymerId> last_;
};

std::vector<std::uint32_t> coloring_sample(const Graph& g, const ColoringParams& p, double eps, Rng& rng);

bool is_proper(const Graph& g, const std::vector<std::uint32_t>& colors);

}  // namespace polymer
