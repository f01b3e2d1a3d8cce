#include "polymer/hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymer/clusters.hpp"

namespace polymer {

const char* variant_name(HardCoreVariant v) {
  return v == HardCoreVariant::kRandomRegular ? "random" : "expander";
}

namespace {

void check(const Graph& g, const HardCoreParams& p) {
  if (!(p.lambda > 0.0)) throw Error("bad-parameter", "hard-core needs lambda > 0");
  if (p.alpha < 0.0) throw Error("bad-parameter", "alpha must be nonnegative");
  if (!g.bipartite()) throw Error("non-bipartite", "hard-core polymer models need a bipartite graph");
  if (p.variant == HardCoreVariant::kRandomRegular) {
    if (!g.is_regular() || g.max_degree() < 2)
      throw Error("variant-precondition", "random-regular variant needs a regular graph of degree >= 2");
    if (g.sides().odd.size() != g.sides().even.size())
      throw Error("variant-precondition", "random-regular variant needs equal sides");
  }
}

std::size_t side_count(const Graph& g, int side) {
  return side == kOddSide ? g.sides().odd.size() : g.sides().even.size();
}

using Poly = std::vector<std::uint64_t>;

Poly poly_add(Poly a, const Poly& b, std::size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  return a;
}

Poly independence_poly(const Graph& g, const VertexSet& rest) {
  Vertex best = 0;
  std::size_t best_deg = 0;
  rest.for_each([&](Vertex v) {
    std::size_t d = (g.neighbor_set(v) & rest).size();
    if (d > best_deg) {
      best_deg = d;
      best = v;
    }
  });
  if (best_deg == 0) {
    // Edgeless remainder: binomial coefficients.
    const std::size_t k = rest.size();
    Poly out(k + 1, 0);
    out[0] = 1;
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = i; j > 0; --j) out[j] += out[j - 1];
    return out;
  }
  VertexSet without = rest;
  without.erase(best);
  VertexSet closed = without - g.neighbor_set(best);
  return poly_add(independence_poly(g, without), independence_poly(g, closed), 1);
}

void list_independent(const Graph& g, Vertex v, VertexSet& cur, const VertexSet& blocked,
                      std::vector<VertexSet>& out) {
  if (v == g.n()) {
    out.push_back(cur);
    return;
  }
  list_independent(g, v + 1, cur, blocked, out);
  if (!blocked.contains(v)) {
    cur.insert(v);
    list_independent(g, v + 1, cur, blocked | g.neighbor_set(v), out);
    cur.erase(v);
  }
}

}  // namespace

double hc_log_weight(const Graph& g, const VertexSet& s, double lambda) {
  const double boundary = static_cast<double>(vertex_boundary(g, s).size());
  return static_cast<double>(s.size()) * std::log(lambda) - boundary * std::log1p(lambda);
}

std::size_t hc_small_cap(const Graph& g, int side) { return side_count(g, side) / 2; }

std::size_t hc_tiny_cap(const Graph& g, int side) {
  const double d = static_cast<double>(std::max<std::size_t>(g.max_degree(), 2));
  const double raw = 4.0 * std::log(d) / d * static_cast<double>(side_count(g, side));
  const auto tiny = static_cast<std::size_t>(std::floor(raw + 1e-9));
  return std::min(tiny, hc_small_cap(g, side));
}

double hc_decay_slope(const Graph& g, const HardCoreParams& p) {
  if (p.variant == HardCoreVariant::kExpander) return 1.0;
  const double d = static_cast<double>(g.max_degree());
  return d * std::log1p(p.lambda) / (10.0 * std::log(d));
}

PolymerModelSpec hc_spec(const Graph& g, const HardCoreParams& p, int side) {
  check(g, p);
  PolymerModelSpec spec;
  spec.power = 2;
  spec.allowed = g.side_set(side);
  const std::size_t cap = p.variant == HardCoreVariant::kExpander ? hc_small_cap(g, side) : hc_tiny_cap(g, side);
  spec.admissible = [cap](const VertexSet& s) { return s.size() <= cap; };
  const double lambda = p.lambda;
  spec.log_weight = [&g, lambda](const VertexSet& s) { return hc_log_weight(g, s, lambda); };
  const double rho = hc_decay_slope(g, p);
  spec.decay = [rho](const VertexSet& s) { return rho * static_cast<double>(s.size()); };
  spec.decay_slope = rho;
  spec.label = side == kEvenSide ? "hardcore-even" : "hardcore-odd";
  return spec;
}

PolymerIndex hc_index(const Graph& g, const HardCoreParams& p, int side, double m) {
  PolymerModelSpec spec = hc_spec(g, p, side);
  const std::size_t cap = p.variant == HardCoreVariant::kExpander ? hc_small_cap(g, side) : hc_tiny_cap(g, side);
  return enumerate_polymers(g, spec, std::min(cap, largest_below(m / spec.decay_slope)));
}

std::vector<std::uint64_t> hc_brute_counts(const Graph& g) {
  const std::size_t cap = brute_cap(40);
  if (g.n() > cap) throw Error("brute-cap", "brute-force hard-core capped at n <= " + std::to_string(cap));
  return independence_poly(g, g.all());
}

double log_independence_polynomial(const std::vector<std::uint64_t>& counts, double lambda) {
  std::vector<double> terms;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k]) terms.push_back(std::log(static_cast<double>(counts[k])) + static_cast<double>(k) * std::log(lambda));
  return log_sum(terms);
}

bool hc_uses_brute(std::size_t n, double eps) { return eps < std::ldexp(1.0, -static_cast<int>(n)); }

namespace {

struct Analytic {
  std::optional<AnalyticKp> kp;
  std::string binding;
  std::vector<std::string> warnings;
};

Analytic hc_analytic(const Graph& g, const HardCoreParams& p) {
  Analytic a;
  const std::size_t delta = std::max<std::size_t>(g.max_degree(), 2);
  if (p.variant == HardCoreVariant::kRandomRegular) {
    a.kp = analytic_kp_hardcore_random(delta, p.lambda);
    a.binding = a.kp->binding;
  } else if (p.alpha > 0.0) {
    a.kp = analytic_kp_hardcore(delta, p.alpha, p.lambda);
    a.binding = a.kp->binding;
    if (p.lambda <= *a.kp->secondary_threshold)
      a.warnings.push_back("lambda <= e^(11/alpha); the two-ground-state approximation is not certified");
  } else {
    a.binding = "lambda > max((2 e^3 Delta^4)^(1/alpha), e^(11/alpha)) (alpha not supplied)";
  }
  if (a.kp) {
    for (const auto& w : a.kp->warnings) a.warnings.push_back(w);
    if (!a.kp->threshold_met) a.warnings.push_back("lambda below the KP threshold; KP not analytically certified");
  }
  if (p.variant == HardCoreVariant::kRandomRegular) {
    const double raw = 4.0 * std::log(static_cast<double>(delta)) / static_cast<double>(delta) *
                       static_cast<double>(g.sides().odd.size());
    if (raw > static_cast<double>(hc_small_cap(g, kOddSide)))
      a.warnings.push_back("tiny cap exceeds the small cap at this degree; using the small cap");
  }
  return a;
}

}  // namespace

HardCoreBranches hc_branches(const Graph& g, const HardCoreParams& p, double m, const RunOptions& opt,
                             ApproxResult* r) {
  const double l1 = std::log1p(p.lambda);
  const double delta = static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
  ExpansionOptions eo;
  eo.threads = opt.threads;
  double terms[2];
  for (int side : {kEvenSide, kOddSide}) {
    PolymerIndex index = hc_index(g, p, side, m);
    const ExpansionResult t = truncated_expansion(index, m, eo);
    const int ground = side == kEvenSide ? kOddSide : kEvenSide;
    terms[side] = static_cast<double>(side_count(g, ground)) * l1 + t.value;
    if (!r) continue;
    r->size_cap = std::max(r->size_cap, index.max_polymer_size());
    r->polymer_count += index.size();
    r->cluster_count += t.cluster_count;
    if (opt.empirical_kp)
      r->empirical.emplace_back(side == kEvenSide ? "even" : "odd",
                                kp_empirical(index, 1.0 / (delta * delta), index.max_polymer_size()));
  }
  return {terms[kEvenSide], terms[kOddSide]};
}

ApproxResult hc_count(const Graph& g, const HardCoreParams& p, double eps, const RunOptions& opt,
                      HardCoreBranches* branches) {
  check(g, p);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  ApproxResult r;
  r.eps = eps;
  Analytic a = hc_analytic(g, p);
  r.analytic = a.kp;
  r.binding = a.binding;
  r.warnings = a.warnings;
  const std::size_t n = g.n();

  if (hc_uses_brute(n, eps)) {
    r.method = Method::kBrute;
    r.log_value = log_independence_polynomial(hc_brute_counts(g), p.lambda);
    r.kp_status = r.analytic && r.analytic->holds ? KpStatus::kAnalytic : KpStatus::kUnchecked;
    return r;
  }

  r.method = Method::kPolymer;
  r.truncation = std::log(static_cast<double>(n) / (eps / 2.0));
  const HardCoreBranches b = hc_branches(g, p, r.truncation, opt, &r);
  r.log_value = log_add(b.log_even_term, b.log_odd_term);
  if (branches) *branches = b;
  std::vector<const KpReport*> reps;
  for (const auto& e : r.empirical) reps.push_back(&e.second);
  r.kp_status = combine_kp(r.analytic, reps);
  if (r.kp_status == KpStatus::kViolated) r.warnings.push_back("empirical KP condition violated");
  return r;
}

HardCoreSampler::HardCoreSampler(const Graph& g, const HardCoreParams& p, double eps, const RunOptions& opt)
    : g_(g), p_(p), brute_(hc_uses_brute(g.n(), eps)) {
  check(g, p);
  if (!(eps > 0.0)) throw Error("bad-parameter", "eps must be positive");
  if (brute_) {
    if (g.n() > brute_cap(22)) throw Error("brute-cap", "brute-force hard-core sampling capped at n <= 22");
    VertexSet cur;
    list_independent(g, 0, cur, VertexSet{}, brute_sets_);
    double acc = 0.0;
    const double ll = std::log(p.lambda);
    std::vector<double> logs;
    for (const auto& s : brute_sets_) logs.push_back(static_cast<double>(s.size()) * ll);
    const double hi = *std::max_element(logs.begin(), logs.end());
    for (double l : logs) brute_cdf_.push_back(acc += std::exp(l - hi));
    for (double& c : brute_cdf_) c /= acc;
    return;
  }
  // Side weights at eps/8, configurations at eps/4.
  const HardCoreBranches b = hc_branches(g, p, std::log(static_cast<double>(g.n()) / (eps / 8.0)), opt, nullptr);
  p_even_ = std::exp(b.log_even_term - log_add(b.log_even_term, b.log_odd_term));
  const double quarter = eps / 4.0;
  const double m = std::log(2.0 * static_cast<double>(g.n()) / quarter);
  even_ = hc_index(g, p, kEvenSide, m);
  odd_ = hc_index(g, p, kOddSide, m);
  even_sampler_.emplace(even_, quarter);
  odd_sampler_.emplace(odd_, quarter);
}

VertexSet HardCoreSampler::draw(Rng& rng) {
  VertexSet out;
  if (brute_) {
    const double u = rng.uniform();
    auto it = std::upper_bound(brute_cdf_.begin(), brute_cdf_.end(), u);
    out = brute_sets_[it == brute_cdf_.end() ? brute_sets_.size() - 1 : static_cast<std::size_t>(it - brute_cdf_.begin())];
  } else {
    last_side_ = rng.uniform() < p_even_ ? kEvenSide : kOddSide;
    const PolymerIndex& index = last_side_ == kEvenSide ? even_ : odd_;
    PolymerSampler& sampler = last_side_ == kEvenSide ? *even_sampler_ : *odd_sampler_;
    last_ = sampler.draw(rng);
    VertexSet blocked;
    for (PolymerId id : last_) {
      out |= index[id].set;
      blocked |= vertex_boundary(g_, index[id].set);
    }
    const int ground = last_side_ == kEvenSide ? kOddSide : kEvenSide;
    const double keep = p_.lambda / (1.0 + p_.lambda);
    (g_.side_set(ground) - blocked).for_each([&](Vertex v) {
      if (rng.bernoulli(keep)) out.insert(v);
    });
  }
  if (!is_independent(g_, out)) throw Error("internal", "hard-core sampler produced a dependent set");
  return out;
}

VertexSet hc_sample(const Graph& g, const HardCoreParams& p, double eps, Rng& rng) {
  HardCoreSampler s(g, p, eps);
  return s.draw(rng);
}

bool is_independent(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (g.neighbor_set(v).intersects(s)) ok = false;
  });
  return ok;
}

}  // namespace polymer
