#include "polymer/potts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymer/clusters.hpp"
#include "polymer/kernels.hpp"

namespace polymer {

namespace {

void check_params(const PottsParams& p) {
  if (p.q < 2) throw Error("bad-parameter", "Potts needs q >= 2");
  if (!(p.beta > 0.0)) throw Error("bad-parameter", "Potts needs beta > 0");
  if (p.alpha < 0.0) throw Error("bad-parameter", "alpha must be nonnegative");
}

std::vector<kernels::EdgeIndex> local_edges(const Graph& g, const std::vector<Vertex>& verts) {
  std::vector<std::uint32_t> local(g.n(), ~std::uint32_t{0});
  for (std::uint32_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;
  std::vector<kernels::EdgeIndex> out;
  for (const auto& [u, v] : g.edges())
    if (local[u] != ~std::uint32_t{0} && local[v] != ~std::uint32_t{0}) out.push_back({local[u], local[v]});
  return out;
}

// colors^count, or max() when above 2^40.
std::uint64_t checked_power(std::size_t colors, std::size_t count) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (colors != 0 && total > (std::uint64_t{1} << 40) / colors) return std::numeric_limits<std::uint64_t>::max();
    total *= colors;
  }
  return total;
}

std::vector<double> normalized_cdf(const std::vector<double>& logs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double l : logs) hi = std::max(hi, l);
  std::vector<double> cdf(logs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    acc += std::exp(logs[i] - hi);
    cdf[i] = acc;
  }
  for (double& c : cdf) c /= acc;
  return cdf;
}

std::size_t draw_cdf(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

std::vector<std::uint64_t> induced_mono_histogram(const Graph& g, const VertexSet& s, std::size_t colors) {
  auto verts = s.to_vector();
  auto edges = local_edges(g, verts);
  if (checked_power(colors, verts.size()) == std::numeric_limits<std::uint64_t>::max())
    throw Error("weight-cap", "exhaustive inner sum over " + std::to_string(colors) + "^" +
                                  std::to_string(verts.size()) + " colorings is too large");
  return kernels::monochromatic_histogram(verts.size(), edges, static_cast<std::uint32_t>(colors));
}

double log_histogram_sum(const std::vector<std::uint64_t>& hist, double beta) {
  std::vector<double> terms;
  for (std::size_t k = 0; k < hist.size(); ++k)
    if (hist[k]) terms.push_back(std::log(static_cast<double>(hist[k])) + beta * static_cast<double>(k));
  return log_sum(terms);
}

double potts_log_weight(const Graph& g, const VertexSet& s, const PottsParams& p) {
  if (s.size() > kPottsWeightCap)
    throw Error("weight-cap", "Potts polymer weight needs |S| <= " + std::to_string(kPottsWeightCap));
  const Boundaries b = boundaries(g, s);
  const auto hist = induced_mono_histogram(g, s, p.q - 1);
  return -p.beta * static_cast<double>(b.incident_edges) + log_histogram_sum(hist, p.beta);
}

LaurentPoly potts_weight_polynomial(const Graph& g, const VertexSet& s, std::size_t q) {
  if (s.size() > kPottsWeightCap)
    throw Error("weight-cap", "Potts polymer weight needs |S| <= " + std::to_string(kPottsWeightCap));
  const auto hist = induced_mono_histogram(g, s, q - 1);
  std::vector<LaurentPoly::Coeff> coeffs(hist.begin(), hist.end());
  return LaurentPoly::from_coeffs(-static_cast<int>(boundaries(g, s).incident_edges), std::move(coeffs));
}

PolymerModelSpec potts_spec(const Graph& g, const PottsParams& p) {
  check_params(p);
  PolymerModelSpec spec;
  spec.power = 1;
  spec.allowed = g.all();
  const std::size_t n = g.n();
  spec.admissible = [n](const VertexSet& s) { return 2 * s.size() <= n; };
  spec.log_weight = [&g, p](const VertexSet& s) { return potts_log_weight(g, s, p); };
  spec.decay_slope = 1.0;
  spec.label = "potts";
  return spec;
}

PolymerIndex potts_index(const Graph& g, const PottsParams& p, double m) {
  return enumerate_polymers(g, potts_spec(g, p), std::min(largest_below(m), g.n() / 2));
}

std::vector<std::uint64_t> potts_brute_histogram(const Graph& g, std::size_t q) {
  const std::size_t cap = brute_cap(20);
  if (g.n() > cap) throw Error("brute-cap", "brute-force Potts capped at n <= " + std::to_string(cap));
  return induced_mono_histogram(g, g.all(), q);
}

bool potts_uses_brute(std::size_t n, double eps) { return eps <= std::exp(-static_cast<double>(n) / 2.0); }

ApproxResult potts_count(const Graph& g, const PottsParams& p, double eps, const RunOptions& opt) {
  check_params(p);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  ApproxResult r;
  r.eps = eps;
  const std::size_t n = g.n();
  const std::size_t delta = std::max<std::size_t>(g.max_degree(), 1);
  if (p.alpha > 0.0) {
    r.analytic = analytic_kp_potts(p.q, delta, p.alpha, p.beta);
    r.binding = r.analytic->binding;
    for (const auto& w : r.analytic->warnings) r.warnings.push_back(w);
    if (!r.analytic->threshold_met)
      r.warnings.push_back("beta below (4 + 2 ln(q Delta)) / alpha; KP not analytically certified");
    const double weak = 2.0 * std::log(std::exp(1.0) * static_cast<double>(p.q)) / p.alpha;
    r.info.push_back(std::string("approximation lemma condition beta > 2 ln(e q)/alpha ") +
                     (p.beta > weak ? "holds" : "fails"));
  } else {
    r.binding = "beta >= (4 + 2 ln(q Delta)) / alpha (alpha not supplied)";
  }

  if (potts_uses_brute(n, eps)) {
    r.method = Method::kBrute;
    r.log_value = log_histogram_sum(potts_brute_histogram(g, p.q), p.beta);
    r.kp_status = r.analytic && r.analytic->holds ? KpStatus::kAnalytic : KpStatus::kUnchecked;
    return r;
  }

  r.method = Method::kPolymer;
  r.truncation = std::log(static_cast<double>(n) / (eps / 2.0));
  PolymerIndex index = potts_index(g, p, r.truncation);
  r.size_cap = std::min(largest_below(r.truncation), n / 2);
  r.polymer_count = index.size();
  ExpansionOptions eo;
  eo.threads = opt.threads;
  const ExpansionResult t = truncated_expansion(index, r.truncation, eo);
  r.cluster_count = t.cluster_count;
  r.log_value = std::log(static_cast<double>(p.q)) + p.beta * static_cast<double>(g.edge_count()) + t.value;
  if (opt.empirical_kp)
    r.empirical.emplace_back("potts", kp_empirical(index, 1.0 / (static_cast<double>(delta) + 1.0), r.size_cap));
  std::vector<const KpReport*> reps;
  for (const auto& e : r.empirical) reps.push_back(&e.second);
  r.kp_status = combine_kp(r.analytic, reps);
  if (r.kp_status == KpStatus::kViolated) r.warnings.push_back("empirical KP condition violated");
  return r;
}

PottsCertificate potts_certified_count(const Graph& g, std::size_t q, double beta, double eps,
                                       const RunOptions& opt) {
  if (!g.is_regular()) throw Error("non-regular", "certification needs a regular graph");
  PottsCertificate c;
  c.spectral = expansion_spectral(g, 1.0 / 100.0);
  c.spectral_ok = c.spectral.friedman_ok.value_or(false);
  const double delta = static_cast<double>(g.max_degree());
  c.beta_required = 200.0 * std::log(static_cast<double>(q) * delta) / delta;
  c.beta_ok = beta > c.beta_required;
  if (!c.spectral_ok) {
    c.reason = "spectral-bound";
    return c;
  }
  c.alpha = delta / 40.0;
  if (!c.beta_ok) {
    c.reason = "beta-below-threshold";
    return c;
  }
  c.certified = true;
  c.result = potts_count(g, PottsParams{q, beta, c.alpha}, eps, opt);
  return c;
}

PottsSampler::PottsSampler(const Graph& g, const PottsParams& p, double eps)
    : g_(g), p_(p), brute_(potts_uses_brute(g.n(), eps)) {
  check_params(p);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  if (brute_) {
    brute_hist_ = potts_brute_histogram(g, p.q);
    std::vector<double> logs(brute_hist_.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < brute_hist_.size(); ++k)
      if (brute_hist_[k]) logs[k] = std::log(static_cast<double>(brute_hist_[k])) + p.beta * static_cast<double>(k);
    brute_cdf_ = normalized_cdf(logs);
    return;
  }
  const double half = eps / 2.0;
  const double m = std::log(2.0 * static_cast<double>(std::max<std::size_t>(g.n(), 1)) / half);
  index_ = potts_index(g, p, m);
  sampler_.emplace(index_, half);
  inner_cdf_.resize(index_.size());
}

const std::vector<double>& PottsSampler::inner_distribution(PolymerId id) {
  auto& cdf = inner_cdf_[id];
  if (!cdf.empty()) return cdf;
  const auto verts = index_[id].set.to_vector();
  const auto edges = local_edges(g_, verts);
  const std::size_t colors = p_.q - 1;
  const std::uint64_t total = checked_power(colors, verts.size());
  if (total > (std::uint64_t{1} << 22)) throw Error("weight-cap", "polymer too large for exact recoloring");
  std::vector<double> logs(total);
  std::vector<std::uint32_t> col(verts.size());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (auto& c : col) {
      c = static_cast<std::uint32_t>(x % colors);
      x /= colors;
    }
    std::size_t mono = 0;
    for (const auto& e : edges) mono += col[e.u] == col[e.v];
    logs[idx] = p_.beta * static_cast<double>(mono);
  }
  cdf = normalized_cdf(logs);
  return cdf;
}

std::vector<std::uint32_t> PottsSampler::draw(Rng& rng) {
  const std::size_t n = g_.n();
  std::vector<std::uint32_t> colors(n, 0);
  if (brute_) {
    // Pick the monochromatic count, then a uniform coloring with that count.
    const std::size_t k = draw_cdf(brute_cdf_, rng);
    std::uint64_t rank = rng.below(brute_hist_[k]);
    const std::uint64_t total = checked_power(p_.q, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (auto& c : colors) {
        c = static_cast<std::uint32_t>(x % p_.q);
        x /= p_.q;
      }
      if (monochromatic_edges(g_, colors) != k) continue;
      if (rank-- == 0) return colors;
    }
    throw Error("internal", "brute-force Potts sampler ran past its class");
  }
  const auto r = static_cast<std::uint32_t>(rng.below(p_.q));
  std::fill(colors.begin(), colors.end(), r);
  last_ = sampler_->draw(rng);
  for (PolymerId id : last_) {
    const auto verts = index_[id].set.to_vector();
    std::uint64_t x = draw_cdf(inner_distribution(id), rng);
    for (Vertex v : verts) {
      auto c = static_cast<std::uint32_t>(x % (p_.q - 1));
      x /= (p_.q - 1);
      colors[v] = c < r ? c : c + 1;
    }
  }
  return colors;
}

std::vector<std::uint32_t> potts_sample(const Graph& g, const PottsParams& p, double eps, Rng& rng) {
  PottsSampler s(g, p, eps);
  return s.draw(rng);
}

std::size_t monochromatic_edges(const Graph& g, const std::vector<std::uint32_t>& colors) {
  std::size_t mono = 0;
  for (const auto& [u, v] : g.edges()) mono += colors[u] == colors[v];
  return mono;
}

}  // namespace polymer
