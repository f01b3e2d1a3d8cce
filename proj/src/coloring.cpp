#include "polymer/coloring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "polymer/clusters.hpp"
#include "polymer/kernels.hpp"

namespace polymer {

std::size_t Pattern::a_size() const { return static_cast<std::size_t>(std::popcount(a)); }
std::size_t Pattern::b_size() const { return static_cast<std::size_t>(std::popcount(b)); }

namespace {

constexpr int kOdd = 0;

void check_q(std::size_t q) {
  if (q < 3 || q > kMaxColors) throw Error("bad-parameter", "colorings need 3 <= q <= 16");
}

void check_graph(const Graph& g) {
  if (!g.bipartite()) throw Error("non-bipartite", "coloring polymer models need a bipartite graph");
  g.side_size();
}

// Visits every extension counted by chi_hat_count; `colors` is indexed like
// the closure vector.
template <class F>
void for_each_extension(const Graph& g, const VertexSet& s, const Pattern& pat, F&& visit) {
  const VertexSet closure = s | vertex_boundary(g, s);
  if (closure.size() > kColoringClosureCap)
    throw Error("weight-cap", "coloring weight enumerates |S+| <= " + std::to_string(kColoringClosureCap));
  const auto verts = closure.to_vector();
  const std::size_t k = verts.size();
  std::vector<std::uint32_t> allowed(k);
  std::vector<std::vector<std::size_t>> earlier(k);
  for (std::size_t i = 0; i < k; ++i) {
    allowed[i] = allowed_colors(g, verts[i], s.contains(verts[i]), pat);
    for (std::size_t j = 0; j < i; ++j)
      if (g.adjacent(verts[i], verts[j])) earlier[i].push_back(j);
  }
  std::vector<std::uint32_t> colors(k, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      visit(verts, colors);
      return;
    }
    std::uint32_t options = allowed[i];
    for (std::size_t j : earlier[i]) options &= ~(std::uint32_t{1} << colors[j]);
    for (; options; options &= options - 1) {
      colors[i] = static_cast<std::uint32_t>(std::countr_zero(options));
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

std::uint64_t checked_power(std::size_t base, std::size_t exp) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (total > (std::uint64_t{1} << 40) / base) throw Error("brute-cap", "q^n exceeds 2^40");
    total *= base;
  }
  return total;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(std::size_t q) {
  check_q(q);
  const std::uint32_t full = (std::uint32_t{1} << q) - 1;
  std::vector<Pattern> out;
  for (std::uint32_t a = 1; a < full; ++a) out.push_back(Pattern{a, full & ~a});
  return out;
}

std::uint32_t allowed_colors(const Graph& g, Vertex v, bool in_polymer, const Pattern& pat) {
  const bool odd = g.side_of(v) == kOdd;
  const std::uint32_t ground = odd ? pat.a : pat.b;
  const std::uint32_t other = odd ? pat.b : pat.a;
  return in_polymer ? other : ground;
}

std::uint64_t chi_hat_count(const Graph& g, const VertexSet& s, const Pattern& pat, std::size_t q) {
  std::uint64_t count = 0;
  check_q(q);
  for_each_extension(g, s, pat, [&](const auto&, const auto&) { ++count; });
  return count;
}

double coloring_log_weight(const Graph& g, const VertexSet& s, const Pattern& pat, std::size_t q) {
  const std::uint64_t count = chi_hat_count(g, s, pat, q);
  if (count == 0) return -std::numeric_limits<double>::infinity();
  const VertexSet closure = s | vertex_boundary(g, s);
  double odd = 0, even = 0;
  closure.for_each([&](Vertex v) { (g.side_of(v) == kOdd ? odd : even) += 1.0; });
  return std::log(static_cast<double>(count)) - odd * std::log(static_cast<double>(pat.a_size())) -
         even * std::log(static_cast<double>(pat.b_size()));
}

std::size_t coloring_little_cap(const Graph& g, std::size_t q) {
  const double d = static_cast<double>(std::max<std::size_t>(g.max_degree(), 2));
  const double half = static_cast<double>(g.n()) / 2.0;
  return static_cast<std::size_t>(std::floor(4.0 * static_cast<double>(q) * std::log(d) / d * half + 1e-9));
}

double coloring_decay_slope(const Graph& g, const ColoringParams& p) {
  if (p.override_caps) return 1.0;
  const double d = static_cast<double>(std::max<std::size_t>(g.max_degree(), 2));
  return d / (10.0 * static_cast<double>(p.q * p.q) * std::log(d));
}

PolymerModelSpec coloring_spec(const Graph& g, const ColoringParams& p, const Pattern& pat) {
  check_q(p.q);
  check_graph(g);
  PolymerModelSpec spec;
  spec.power = 3;
  spec.allowed = g.all();
  const std::size_t cap = p.override_caps ? p.size_cap : coloring_little_cap(g, p.q);
  spec.admissible = [cap](const VertexSet& s) { return s.size() <= cap; };
  const std::size_t q = p.q;
  spec.log_weight = [&g, pat, q](const VertexSet& s) { return coloring_log_weight(g, s, pat, q); };
  const double rho = coloring_decay_slope(g, p);
  spec.decay = [rho](const VertexSet& s) { return rho * static_cast<double>(s.size()); };
  spec.decay_slope = rho;
  spec.label = "colorings";
  return spec;
}

PolymerIndex coloring_index(const Graph& g, const ColoringParams& p, const Pattern& pat, double m) {
  PolymerModelSpec spec = coloring_spec(g, p, pat);
  std::size_t cap = p.override_caps ? p.size_cap : coloring_little_cap(g, p.q);
  cap = std::min({cap, largest_below(m / spec.decay_slope), g.n()});
  return enumerate_polymers(g, spec, cap);
}

std::uint64_t coloring_brute_count(const Graph& g, std::size_t q) {
  check_q(q);
  const std::size_t cap = brute_cap(18);
  if (g.n() > cap) throw Error("brute-cap", "brute-force colorings capped at n <= " + std::to_string(cap));
  checked_power(q, g.n());
  std::vector<kernels::EdgeIndex> edges;
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return kernels::monochromatic_histogram(g.n(), edges, static_cast<std::uint32_t>(q))[0];
}

bool coloring_uses_brute(std::size_t n, std::size_t q, double eps) {
  return eps < std::exp(-static_cast<double>(n) / (8.0 * static_cast<double>(q)));
}

std::vector<double> coloring_pattern_terms(const Graph& g, const ColoringParams& p, double m,
                                           const RunOptions& opt, ApproxResult* r) {
  check_graph(g);
  const double side = static_cast<double>(g.side_size());
  const double delta = static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
  ExpansionOptions eo;
  eo.threads = opt.threads;
  std::vector<double> terms;
  for (const Pattern& pat : enumerate_patterns(p.q)) {
    PolymerIndex index = coloring_index(g, p, pat, m);
    const ExpansionResult t = truncated_expansion(index, m, eo);
    terms.push_back(side * (std::log(static_cast<double>(pat.a_size())) + std::log(static_cast<double>(pat.b_size()))) +
                    t.value);
    if (!r) continue;
    r->size_cap = std::max(r->size_cap, index.max_polymer_size());
    r->polymer_count += index.size();
    r->cluster_count += t.cluster_count;
    if (opt.empirical_kp)
      r->empirical.emplace_back("pattern " + std::to_string(pat.a),
                                kp_empirical(index, 1.0 / (delta * delta * delta), index.max_polymer_size()));
  }
  return terms;
}

ApproxResult coloring_count(const Graph& g, const ColoringParams& p, double eps, const RunOptions& opt) {
  check_q(p.q);
  check_graph(g);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  ApproxResult r;
  r.eps = eps;
  const std::size_t n = g.n();
  r.analytic = analytic_kp_coloring(p.q, std::max<std::size_t>(g.max_degree(), 2), p.c);
  r.binding = r.analytic->binding;
  for (const auto& w : r.analytic->warnings) r.warnings.push_back(w);
  if (!r.analytic->threshold_met) r.warnings.push_back("Delta below C q^2 ln^2 q; outside the certified regime");
  if (p.override_caps) r.warnings.push_back("size caps overridden (desk-scale mode, g(S) = |S|)");

  if (coloring_uses_brute(n, p.q, eps)) {
    r.method = Method::kBrute;
    r.log_value = std::log(static_cast<double>(coloring_brute_count(g, p.q)));
    r.kp_status = r.analytic->holds ? KpStatus::kAnalytic : KpStatus::kUnchecked;
    return r;
  }
  r.method = Method::kPolymer;
  r.truncation = std::log(static_cast<double>(n) / (eps / 3.0));
  r.log_value = log_sum(coloring_pattern_terms(g, p, r.truncation, opt, &r));
  std::vector<const KpReport*> reps;
  for (const auto& e : r.empirical) reps.push_back(&e.second);
  r.kp_status = combine_kp(p.override_caps ? std::nullopt : r.analytic, reps);
  if (r.kp_status == KpStatus::kViolated) r.warnings.push_back("empirical KP condition violated");
  return r;
}

ColoringSampler::ColoringSampler(const Graph& g, const ColoringParams& p, double eps, const RunOptions& opt)
    : g_(g), p_(p), brute_(coloring_uses_brute(g.n(), p.q, eps)) {
  check_q(p.q);
  check_graph(g);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  if (brute_) {
    brute_total_ = coloring_brute_count(g, p.q);
    if (brute_total_ == 0) throw Error("no-coloring", "graph has no proper coloring");
    return;
  }
  // Pattern weights at eps/3, configurations at eps/3.
  const double third = eps / 3.0;
  const double n = static_cast<double>(g.n());
  const double m_weights = std::log(n / third);
  const double m_draw = std::log(2.0 * n / third);
  const double side = static_cast<double>(g.side_size());
  patterns_ = enumerate_patterns(p.q);
  ExpansionOptions eo;
  eo.threads = opt.threads;
  std::vector<double> terms;
  indexes_.reserve(patterns_.size());
  for (const Pattern& pat : patterns_) {
    indexes_.push_back(coloring_index(g, p, pat, std::max(m_weights, m_draw)));
    const ExpansionResult t = truncated_expansion(indexes_.back(), m_weights, eo);
    terms.push_back(side * (std::log(static_cast<double>(pat.a_size())) + std::log(static_cast<double>(pat.b_size()))) +
                    t.value);
  }
  const double total = log_sum(terms);
  double acc = 0.0;
  for (double t : terms) pattern_cdf_.push_back(acc += std::exp(t - total));
  samplers_.resize(patterns_.size());
  for (std::size_t i = 0; i < patterns_.size(); ++i) samplers_[i].emplace(indexes_[i], third);
}

std::vector<std::uint32_t> ColoringSampler::draw(Rng& rng) {
  const std::size_t n = g_.n();
  std::vector<std::uint32_t> colors(n, 0);
  if (brute_) {
    std::uint64_t rank = rng.below(brute_total_);
    const std::uint64_t total = checked_power(p_.q, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (auto& c : colors) {
        c = static_cast<std::uint32_t>(x % p_.q);
        x /= p_.q;
      }
      if (!is_proper(g_, colors)) continue;
      if (rank-- == 0) return colors;
    }
    throw Error("internal", "brute-force coloring sampler ran past the count");
  }
  const double u = rng.uniform();
  auto it = std::upper_bound(pattern_cdf_.begin(), pattern_cdf_.end(), u);
  last_pattern_ = it == pattern_cdf_.end() ? patterns_.size() - 1 : static_cast<std::size_t>(it - pattern_cdf_.begin());
  const Pattern& pat = patterns_[last_pattern_];
  const PolymerIndex& index = indexes_[last_pattern_];
  last_ = samplers_[last_pattern_]->draw(rng);

  VertexSet covered;
  for (PolymerId id : last_) {
    const VertexSet& s = index[id].set;
    // Uniform extension: count, then walk to a uniform rank.
    const std::uint64_t count = chi_hat_count(g_, s, pat, p_.q);
    std::uint64_t rank = rng.below(count);
    for_each_extension(g_, s, pat, [&](const std::vector<Vertex>& verts, const std::vector<std::uint32_t>& cols) {
      if (rank-- == 0)
        for (std::size_t i = 0; i < verts.size(); ++i) colors[verts[i]] = cols[i];
    });
    covered |= s | vertex_boundary(g_, s);
  }
  (g_.all() - covered).for_each([&](Vertex v) {
    const std::uint32_t mask = g_.side_of(v) == kOdd ? pat.a : pat.b;
    std::uint64_t pick = rng.below(static_cast<std::uint64_t>(std::popcount(mask)));
    std::uint32_t m = mask;
    while (pick--) m &= m - 1;
    colors[v] = static_cast<std::uint32_t>(std::countr_zero(m));
  });
  if (!is_proper(g_, colors)) throw Error("internal", "coloring sampler produced an improper coloring");
  return colors;
}

std::vector<std::uint32_t> coloring_sample(const Graph& g, const ColoringParams& p, double eps, Rng& rng) {
  ColoringSampler s(g, p, eps);
  return s.draw(rng);
}

bool is_proper(const Graph& g, const std::vector<std::uint32_t>& colors) {
  for (const auto& [u, v] : g.edges())
    if (colors[u] == colors[v]) return false;
  return true;
}

}  // namespace polymer
