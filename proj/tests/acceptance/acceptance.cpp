// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polymer/clusters.hpp"
#include "polymer/coloring.hpp"
#include "polymer/connected_sets.hpp"
#include "polymer/expansion.hpp"
#include "polymer/hardcore.hpp"
#include "polymer/kp.hpp"
#include "polymer/oracle.hpp"
#include "polymer/potts.hpp"
#include "polymer/random_regular.hpp"
#include "polymer/sampler.hpp"
#include "polymer/ursell.hpp"
#include "test_support.hpp"

using namespace polymer;
using oracle::Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& line) { details.push_back(line); }
  void require(bool ok, const std::string& line) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Rational power(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// ---------------------------------------------------------------------------

Outcome ursell_exactness() {
  Outcome out;
  out.require(ursell_phi(SmallGraph::complete(2)) == Rational(-1, 2), "phi(K2) = -1/2");
  out.require(ursell_phi(SmallGraph::path(3)) == Rational(1, 6), "phi(P3) = 1/6");
  out.require(ursell_phi(SmallGraph::complete(3)) == Rational(1, 3), "phi(K3) = 1/3");

  // Random abstract polymers; clusters are multisets of them, with copies
  // of one polymer always incompatible.
  Rng rng(2024, 1);
  std::size_t checked = 0, mismatches = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t k = 2 + rng.below(5);
    std::vector<std::vector<bool>> inc(k, std::vector<bool>(k, true));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inc[i][j] = inc[j][i] = rng.bernoulli(0.5);
    const std::size_t size = 1 + rng.below(6);
    std::vector<std::size_t> cluster;
    for (std::size_t i = 0; i < size; ++i) cluster.push_back(rng.below(k));
    std::sort(cluster.begin(), cluster.end());
    SmallGraph h(size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b)
        if (inc[cluster[a]][cluster[b]]) h.add_edge(a, b);
    if (!h.connected()) continue;
    const std::int64_t brute = testing_support::ursell_by_edge_subsets(h);
    if (ursell_sum(h) != brute || ursell_phi(h) != Rational(brute, factorial(size))) ++mismatches;
    ++checked;
  }
  out.require(mismatches == 0 && checked > 500,
              fmt("%zu connected cluster graphs (<= 6 nodes) equal the edge-subset sum", checked));
  return out;
}

Outcome series_identity() {
  Outcome out;
  double worst = 0.0;
  for (double w : {0.05, 0.1}) {
    const std::vector<std::vector<bool>> all(3, std::vector<bool>(3, true));
    const PolymerIndex three = abstract_index(std::vector<double>(3, std::log(w)), all);
    const PolymerIndex one = abstract_index({std::log(w)}, {{true}});
    for (int j = 1; j <= 10; ++j) {
      double t3 = 0.0, t1 = 0.0;
      for (int t = 1; t <= j; ++t) {
        const double sign = t % 2 == 1 ? 1.0 : -1.0;
        t3 += sign * std::pow(3.0 * w, t) / t;
        t1 += sign * std::pow(w, t) / t;
      }
      worst = std::max(worst, std::abs(truncated_expansion(three, j + 0.5).value - t3));
      worst = std::max(worst, std::abs(truncated_expansion(one, j + 0.5).value - t1));
    }
  }
  out.require(worst <= 1e-12, fmt("max |T - Taylor_j| = %.3g over j <= 10, w in {0.05, 0.1}", worst));
  return out;
}

Outcome potts_exactness() {
  Outcome out;
  const Graph k3 = graphs::complete(3);
  const std::size_t q = 2;
  const PolymerIndex index = potts_index(k3, PottsParams{q, 1.0, 0.0}, 1e9);
  std::vector<LaurentPoly> w;
  oracle::Incompatibility inc(index.size(), std::vector<bool>(index.size(), false));
  for (PolymerId i = 0; i < index.size(); ++i) {
    w.push_back(potts_weight_polynomial(k3, index[i].set, q));
    for (PolymerId j : index.incompatible_with(i)) inc[i][j] = true;
  }
  const LaurentPoly lhs = LaurentPoly(2) * LaurentPoly::monomial(3, 1) * oracle::exact_xi(w, inc);
  const LaurentPoly z = oracle::potts_polynomial(k3, q);
  out.require(lhs == z, "q x^3 Xi = " + lhs.str() + " equals oracle Z = " + z.str());

  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double beta = 0.5 * i;
    const PolymerIndex idx = potts_index(k3, PottsParams{q, beta, 0.0}, 1e9);
    const double approx = std::exp(std::log(2.0) + 3.0 * beta + xi_exact(idx));
    const double exact = std::exp(oracle::exact_potts(k3, q, beta).log_value);
    worst = std::max(worst, std::abs(approx - exact) / exact);
  }
  out.require(worst <= 1e-10, fmt("numeric relative error %.3g for beta in {0.5, ..., 5}", worst));
  return out;
}

Outcome hardcore_identity() {
  Outcome out;
  auto side_term = [](const Graph& g, const Rational& lambda, int side) {
    HardCoreParams p;
    p.lambda = lambda.convert_to<double>();
    const PolymerIndex index = hc_index(g, p, side, 1e9);
    std::vector<Rational> w;
    oracle::Incompatibility inc(index.size(), std::vector<bool>(index.size(), false));
    for (PolymerId i = 0; i < index.size(); ++i) {
      w.push_back(power(lambda, index[i].set.size()) /
                  power(1 + lambda, boundaries(g, index[i].set).vertex_boundary.size()));
      for (PolymerId j : index.incompatible_with(i)) inc[i][j] = true;
    }
    const std::size_t ground = side == kEvenSide ? g.sides().odd.size() : g.sides().even.size();
    return power(1 + lambda, ground) * oracle::exact_xi(w, inc);
  };
  auto z_tilde = [&](const Graph& g, const Rational& lambda) {
    return side_term(g, lambda, kEvenSide) + side_term(g, lambda, kOddSide);
  };

  const Graph k33 = graphs::complete_bipartite(3, 3);
  const Rational zt = z_tilde(k33, 10);
  const Rational z = *oracle::exact_hardcore(k33, Rational(10)).value;
  out.require(zt == 2722 && z == 2661 && zt - z == 61,
              "K33, lambda = 10: Z~ = " + zt.str() + ", Z = " + z.str() + ", correction " + Rational(zt - z).str());

  std::size_t instances = 0, general_ok = 0, literal_ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t a = 3 + seed % 4;
    const Graph g = testing_support::random_bipartite(a, 12 - a, 0.35, seed);
    for (const Rational lambda : {Rational(1), Rational(10)}) {
      const Rational diff = z_tilde(g, lambda) - *oracle::exact_hardcore(g, lambda).value;
      const auto sums =
          oracle::hardcore_sparse_sums(g, lambda, hc_small_cap(g, kOddSide), hc_small_cap(g, kEvenSide));
      ++instances;
      if (diff == sums.both - sums.neither) ++general_ok;
      if (diff == sums.both) ++literal_ok;
    }
  }
  out.require(general_ok == instances,
              fmt("%zu/%zu random (graph, lambda) pairs: Z~ - Z = sum(sparse both sides) - sum(sparse neither side)",
                  general_ok, instances));
  // On expanders no independent set is large on both sides, so the second
  // sum vanishes; random sparse graphs may break that.
  out.note(fmt("     the second sum vanishes on %zu/%zu pairs", literal_ok, instances));
  return out;
}

Outcome epsilon_contract() {
  Outcome out;
  std::size_t runs = 0, within = 0, unexplained = 0;
  for (std::size_t n : {10, 12, 14}) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const Graph g = random_regular(n, 3, true, seed);
      const double exact_hc = oracle::exact_hardcore(g, 50.0).log_value;
      const double h = expansion_exact(g).edge_expansion->value();
      const double beta = potts_beta_threshold(2, 3, h);
      const double exact_potts = oracle::exact_potts(g, 2, beta).log_value;
      for (double eps : {0.1, 0.01}) {
        HardCoreParams p;
        p.lambda = 50.0;
        const ApproxResult hc = hc_count(g, p, eps);
        const ApproxResult po = potts_count(g, PottsParams{2, beta, h}, eps);
        for (const auto& [name, r, exact] : {std::tuple{"hard-core", &hc, exact_hc}, std::tuple{"potts", &po, exact_potts}}) {
          const double err = std::abs(r->log_value - exact);
          const bool ok = err <= eps;
          ++runs;
          within += ok;
          const bool violated = r->kp_status == KpStatus::kViolated;
          if (!ok && !violated) ++unexplained;
          out.note(fmt("     %-9s n=%zu seed=%llu eps=%-5g %-7s kp=%-18s |err|=%.3g%s", name, n,
                       static_cast<unsigned long long>(seed), eps, method_name(r->method), kp_status_name(r->kp_status),
                       err, ok ? "" : (violated ? "  (KP violated)" : "  (UNEXPLAINED)")));
        }
      }
    }
  }
  out.require(unexplained == 0, fmt("%zu/%zu runs within eps; every miss has a violated KP report", within, runs));
  return out;
}

Outcome coloring_identity() {
  Outcome out;
  Rng rng(606);
  std::size_t checked = 0, bad = 0;
  const auto patterns = enumerate_patterns(3);
  for (std::uint64_t seed = 1; checked < 20; ++seed) {
    const std::size_t a = 4 + seed % 2;
    const Graph g = testing_support::random_bipartite(a, 10 - a, 0.35, seed);
    // Little G^3-connected set grown from a random root.
    const Vertex root = static_cast<Vertex>(rng.below(g.n()));
    VertexSet s{root};
    for (Vertex v = 0; v < g.n() && s.size() < 3; ++v)
      if (v != root && within_distance(g, s, VertexSet{v}, 3) && rng.bernoulli(0.4)) s.insert(v);
    const Pattern pat = patterns[rng.below(patterns.size())];
    const std::uint64_t chi = oracle::chi_count(g, s, pat.a, pat.b, 3);
    const std::uint64_t hat = oracle::chi_hat_count(g, s, pat.a, pat.b, 3);
    // |chi| / (|A|^{|O|} |B|^{|E|}) = |chi_hat| / (|A|^{|S+ n O|} |B|^{|S+ n E|})
    // compared as chi * |A|^{|S+ n O|} |B|^{|S+ n E|} = chi_hat * |A|^{|O|} |B|^{|E|}.
    VertexSet closure = s;
    s.for_each([&](Vertex v) {
      for (Vertex u : g.neighbors(v)) closure.insert(u);
    });
    Rational lhs = chi, rhs = hat;
    for (Vertex v = 0; v < g.n(); ++v) {
      const std::size_t side_colors = g.side_of(v) == kOddSide ? pat.a_size() : pat.b_size();
      rhs *= side_colors;
      if (closure.contains(v)) lhs *= side_colors;
    }
    const bool lib_ok = chi_hat_count(g, s, pat, 3) == hat;
    if (lhs != rhs || !lib_ok) ++bad;
    ++checked;
  }
  out.require(bad == 0, fmt("%zu little sets, q = 3: chi/chi_hat identity by double enumeration", checked));

  const Graph k33 = graphs::complete_bipartite(3, 3);
  const double w = std::exp(coloring_log_weight(k33, VertexSet{0}, Pattern{1U, 6U}, 3));
  out.require(std::abs(w - 0.25) <= 1e-15, fmt("single vertex, Delta = 3, A = {1}, B = {2, 3}: w = %.17g = 2^(1-3)", w));
  return out;
}

Outcome sampler_tv() {
  Outcome out;
  const double eps = 0.02;
  const std::size_t draws = 100000;

  {
    const oracle::Incompatibility all(3, std::vector<bool>(3, true));
    const std::vector<double> log_w{std::log(0.05), std::log(0.1), std::log(0.15)};
    const PolymerIndex index = abstract_index(log_w, all);
    PolymerSampler sampler(index, eps);
    std::map<oracle::Atom, std::uint64_t> counts;
    bool structural = true;
    for (std::size_t i = 0; i < draws; ++i) {
      Rng rng(7, i);
      auto ids = sampler.draw(rng);
      structural = structural && pairwise_compatible(index, ids);
      std::sort(ids.begin(), ids.end());
      ++counts[oracle::Atom(ids.begin(), ids.end())];
    }
    const auto nu = oracle::exact_nu(log_w, all);
    const double tv = oracle::total_variation(nu, counts);
    const double bound = eps + 3.0 * std::sqrt(static_cast<double>(nu.size()) / draws);
    out.require(tv <= bound && structural, fmt("3 incompatible polymers: TV %.4f <= %.4f, all draws compatible", tv, bound));
  }
  {
    const Graph k33 = graphs::complete_bipartite(3, 3);
    HardCoreParams p;
    p.lambda = 10.0;
    HardCoreSampler sampler(k33, p, eps);
    std::map<oracle::Atom, std::uint64_t> counts;
    bool structural = true;
    for (std::size_t i = 0; i < draws; ++i) {
      Rng rng(8, i);
      const VertexSet s = sampler.draw(rng);
      structural = structural && is_independent(k33, s);
      oracle::Atom atom;
      s.for_each([&](Vertex v) { atom.push_back(v); });
      ++counts[atom];
    }
    const auto mu = oracle::hardcore_measure(k33, 10.0);
    const double tv = oracle::total_variation(mu, counts);
    const double bound = eps + 3.0 * std::sqrt(static_cast<double>(mu.size()) / draws);
    out.require(tv <= bound && structural && sampler.method() == Method::kPolymer,
                fmt("K33 hard-core lambda = 10 (%s): TV %.4f <= %.4f, all draws independent",
                    method_name(sampler.method()), tv, bound));
  }
  return out;
}

Outcome threshold_arithmetic() {
  Outcome out;
  auto line = [&](const std::string& name, const AnalyticKp& at, const AnalyticKp& below) {
    out.require(at.holds && !below.holds,
                fmt("%-16s %s = %.6g: threshold %s, sum %.3g vs target %.3g; 10%% below %s", name.c_str(),
                    at.parameter_name.c_str(), at.parameter, at.threshold_met ? "met" : "missed", at.geometric_sum,
                    at.target, below.holds ? "accepted" : "rejected"));
  };
  {
    const double alpha = 2.0;
    const double beta = potts_beta_threshold(2, 3, alpha);
    line("Potts", analytic_kp_potts(2, 3, alpha, beta), analytic_kp_potts(2, 3, alpha, 0.9 * beta));
  }
  {
    const double alpha = 1.0;
    const double lambda = hardcore_lambda_threshold(3, alpha);
    line("hard-core", analytic_kp_hardcore(3, alpha, lambda), analytic_kp_hardcore(3, alpha, 0.9 * lambda));
  }
  {
    const std::size_t d = 1024;
    const double lambda = hardcore_random_lambda_threshold(d);
    line("random-regular", analytic_kp_hardcore_random(d, lambda), analytic_kp_hardcore_random(d, 0.9 * lambda));
  }
  {
    const std::size_t q = 3;
    const double c = 6500.0;
    const auto d = static_cast<std::size_t>(std::ceil(coloring_degree_threshold(q, c)));
    line("colorings", analytic_kp_coloring(q, d, c),
         analytic_kp_coloring(q, static_cast<std::size_t>(0.9 * static_cast<double>(d)), c));
  }
  return out;
}

double independent_lambda(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.n()), static_cast<Eigen::Index>(g.n()));
  for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(ev.size() - 2)), std::abs(ev(0)));
}

Outcome spectral_certification() {
  Outcome out;
  std::vector<std::pair<std::string, Graph>> corpus{
      {"petersen", graphs::petersen()},       {"K4", graphs::complete(4)},
      {"K5", graphs::complete(5)},            {"K33", graphs::complete_bipartite(3, 3)},
      {"K44", graphs::complete_bipartite(4, 4)}, {"C5", graphs::cycle(5)},
      {"C8", graphs::cycle(8)},               {"C15", graphs::cycle(15)}};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    corpus.emplace_back(fmt("3-reg-16-%llu", static_cast<unsigned long long>(seed)), random_regular(16, 3, false, seed));
    corpus.emplace_back(fmt("3-reg-bip-14-%llu", static_cast<unsigned long long>(seed)), random_regular(14, 3, true, seed));
    corpus.emplace_back(fmt("4-reg-12-%llu", static_cast<unsigned long long>(seed)), random_regular(12, 4, false, seed));
  }
  std::size_t cheeger_ok = 0, trigger_ok = 0, triggered = 0;
  for (const auto& [name, g] : corpus) {
    const ExpansionReport spec = expansion_spectral(g, 0.01);
    const double h = expansion_exact(g).edge_expansion->value();
    if (*spec.cheeger_lb <= h + 1e-9) ++cheeger_ok;
    const double d = static_cast<double>(g.max_degree());
    const bool expect = independent_lambda(g) <= 2.0 * std::sqrt(d - 1.0) + 0.01;
    // beta above 200 ln(q Delta) / Delta so only the spectral test gates.
    const double beta = 200.0 * std::log(2.0 * d) / d + 1.0;
    const PottsCertificate c = potts_certified_count(g, 2, beta, 0.9);
    if (c.certified == expect) ++trigger_ok;
    triggered += c.certified;
  }
  out.require(cheeger_ok == corpus.size(), fmt("cheeger_lb <= exact h on %zu/%zu corpus graphs (n <= 16)", cheeger_ok, corpus.size()));
  const ExpansionReport p = expansion_spectral(graphs::petersen(), 0.01);
  out.require(std::abs(*p.lambda2 - 1.0) <= 1e-9 && std::abs(*p.cheeger_lb - 1.0) <= 1e-9,
              fmt("Petersen lambda2 = %.12g, cheeger_lb = %.12g", *p.lambda2, *p.cheeger_lb));
  out.require(trigger_ok == corpus.size(),
              fmt("Delta/40 path matches lambda(G) <= 2 sqrt(Delta-1) + 1/100 on %zu/%zu graphs (%zu certified)",
                  trigger_ok, corpus.size(), triggered));
  return out;
}

Outcome brute_equivalence() {
  Outcome out;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  std::size_t potts_ok = 0, hc_ok = 0, col_ok = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    ++total;
    const Graph g = testing_support::random_graph(10, 0.4, seed);
    const double eps = std::exp(-5.0);
    const ApproxResult r = potts_count(g, PottsParams{3, 0.7, 0.0}, eps);
    if (r.method == Method::kBrute && close(r.log_value, oracle::exact_potts(g, 3, 0.7).log_value)) ++potts_ok;

    const Graph b = testing_support::random_bipartite(6, 6, 0.4, seed);
    HardCoreParams hp;
    hp.lambda = 2.5;
    const ApproxResult h = hc_count(b, hp, std::ldexp(0.99, -12));
    if (h.method == Method::kBrute && close(h.log_value, oracle::exact_hardcore(b, 2.5).log_value)) ++hc_ok;

    const Graph c = testing_support::random_bipartite(4, 4, 0.5, seed);
    const double ceps = 0.99 * std::exp(-8.0 / 24.0);
    const ApproxResult cr = coloring_count(c, ColoringParams{}, ceps);
    const auto exact = *oracle::exact_colorings(c, 3).value;
    if (cr.method == Method::kBrute && std::llround(std::exp(cr.log_value)) == exact.convert_to<long long>() &&
        close(cr.log_value, std::log(exact.convert_to<double>())))
      ++col_ok;
  }
  out.require(potts_ok == total, fmt("Potts, eps <= e^(-n/2): %zu/%zu match the oracle", potts_ok, total));
  out.require(hc_ok == total, fmt("hard-core, eps < 2^(-n): %zu/%zu match the oracle", hc_ok, total));
  out.require(col_ok == total, fmt("colorings, eps < e^(-n/(8q)): %zu/%zu match the oracle", col_ok, total));
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Ursell exactness", 5, ursell_exactness},
      {2, "cluster-expansion series identity", 1, series_identity},
      {3, "Potts exactness on K3", 1, potts_exactness},
      {4, "hard-core correction identity", 10, hardcore_identity},
      {5, "end-to-end eps contract", 120, epsilon_contract},
      {6, "coloring extension identity", 30, coloring_identity},
      {7, "sampler total variation", 180, sampler_tv},
      {8, "threshold arithmetic", 1, threshold_arithmetic},
      {9, "spectral certification", 10, spectral_certification},
      {10, "brute-force branch equivalence", 30, brute_equivalence},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] %2d %s (%.2fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_seconds,
                in_time ? "" : ", over budget");
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
