#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polymer/clusters.hpp"
#include "polymer/coloring.hpp"
#include "polymer/expansion.hpp"
#include "polymer/graph.hpp"
#include "polymer/graph_io.hpp"
#include "polymer/hardcore.hpp"
#include "polymer/kp.hpp"
#include "polymer/oracle.hpp"
#include "polymer/potts.hpp"
#include "polymer/random_regular.hpp"
#include "polymer/rng.hpp"
#include "polymer/sampler.hpp"

namespace {

using nlohmann::json;
using namespace polymer;
using Clock = std::chrono::steady_clock;

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotCertified = 2;

// Options shared by the model subcommands.
struct Common {
  std::string graph;
  double eps = 0.01;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t samples = 1;
  bool no_empirical_kp = false;
};

struct Context {
  std::vector<std::string> argv;
  Clock::time_point start = Clock::now();
};

json graph_summary(const Graph& g) {
  json j{{"n", g.n()}, {"edges", g.edge_count()}, {"max_degree", g.max_degree()},
         {"regular", g.is_regular()}, {"bipartite", g.bipartite()}};
  if (g.bipartite()) j["sides"] = {g.sides().odd.size(), g.sides().even.size()};
  return j;
}

json analytic_json(const AnalyticKp& a) {
  json j{{"model", a.model},
         {"parameter", a.parameter_name},
         {"value", a.parameter},
         {"threshold", a.threshold},
         {"threshold_met", a.threshold_met},
         {"at_threshold", a.at_threshold},
         {"base", a.base},
         {"geometric_sum", a.geometric_sum},
         {"target", a.target},
         {"sum_ok", a.sum_ok},
         {"holds", a.holds},
         {"binding", a.binding},
         {"warnings", a.warnings}};
  if (a.secondary_threshold) j["secondary_threshold"] = *a.secondary_threshold;
  return j;
}

json kp_report_json(const std::string& name, const KpReport& r) {
  return json{{"index", name},
              {"status", kp_status_name(r.status)},
              {"max_per_vertex", r.max_per_vertex},
              {"per_vertex_target", r.per_vertex_target},
              {"per_vertex_ok", r.per_vertex_ok},
              {"max_aggregate_ratio", r.max_aggregate_ratio},
              {"aggregate_ok", r.aggregate_ok},
              {"cutoff", r.cutoff},
              {"polymers_checked", r.polymers_checked},
              {"tail_unbounded", r.tail_unbounded}};
}

json approx_json(const ApproxResult& r) {
  json j{{"log_Z", r.log_value},
         {"eps", r.eps},
         {"method", method_name(r.method)},
         {"kp_status", kp_status_name(r.kp_status)},
         {"truncation", r.truncation},
         {"size_cap", r.size_cap},
         {"cluster_count", r.cluster_count},
         {"polymer_count", r.polymer_count},
         {"binding", r.binding},
         {"warnings", r.warnings},
         {"info", r.info}};
  if (r.analytic) j["analytic_kp"] = analytic_json(*r.analytic);
  json emp = json::array();
  for (const auto& [name, rep] : r.empirical) emp.push_back(kp_report_json(name, rep));
  j["empirical_kp"] = emp;
  return j;
}

json expansion_json(const ExpansionReport& e) {
  json j{{"method", e.method == ExpansionMethod::kExact ? "exact" : "spectral"}};
  if (e.edge_expansion) j["edge_expansion"] = {{"num", e.edge_expansion->num}, {"den", e.edge_expansion->den}, {"value", e.edge_expansion->value()}};
  if (e.vertex_expansion)
    j["vertex_expansion"] = {{"num", e.vertex_expansion->num}, {"den", e.vertex_expansion->den}, {"value", e.vertex_expansion->value()}};
  if (e.bipartite_alpha) j["bipartite_alpha"] = *e.bipartite_alpha;
  if (e.lambda2) j["lambda2"] = *e.lambda2;
  if (e.lambda_min) j["lambda_min"] = *e.lambda_min;
  if (e.lambda) j["lambda"] = *e.lambda;
  if (e.cheeger_lb) j["cheeger_lb"] = *e.cheeger_lb;
  if (e.tanner_alpha) j["tanner_alpha"] = *e.tanner_alpha;
  if (e.friedman_ok) {
    j["friedman_ok"] = *e.friedman_ok;
    j["friedman_bound"] = e.friedman_bound;
  }
  return j;
}

json set_json(const VertexSet& s) {
  json a = json::array();
  s.for_each([&](Vertex v) { a.push_back(v); });
  return a;
}

json polymers_json(const PolymerIndex& index, const std::vector<PolymerId>& ids) {
  json a = json::array();
  for (PolymerId id : ids) a.push_back(set_json(index[id].set));
  return a;
}

json base_report(const Context& ctx, const std::string& command) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"argv", ctx.argv}};
}

void emit(json report, const Context& ctx) {
  report["timings"] = {{"seconds", std::chrono::duration<double>(Clock::now() - ctx.start).count()}};
  std::cout << report.dump(2) << '\n';
}

RunOptions run_options(const Common& c) {
  RunOptions o;
  o.threads = c.threads;
  o.empirical_kp = !c.no_empirical_kp;
  return o;
}

void add_common(CLI::App* app, Common& c, bool sampling) {
  app->add_option("--graph", c.graph, "graph file (edge list or JSON)")->required();
  app->add_option("--eps", c.eps, "relative error / total-variation target")->check(CLI::PositiveNumber);
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1U, 256U));
  app->add_flag("--no-empirical-kp", c.no_empirical_kp, "skip the empirical KP check");
  if (sampling) {
    app->add_option("--seed", c.seed, "random seed");
    app->add_option("--samples", c.samples, "number of draws")->check(CLI::Range(std::size_t{1}, std::size_t{10'000'000}));
  }
}

// Parses "7", "-3/4" or "0.125" into an exact rational.
oracle::Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos)
      return oracle::Rational(oracle::BigInt(text.substr(0, slash)), oracle::BigInt(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot == std::string::npos) return oracle::Rational(oracle::BigInt(text));
    const std::string frac = text.substr(dot + 1);
    oracle::BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string digits = text.substr(0, dot) + frac;
    return oracle::Rational(oracle::BigInt(digits), den);
  } catch (const std::exception&) {
    throw Error("bad-parameter", "not a rational number: " + text);
  }
}

double rational_to_double(const oracle::Rational& r) { return r.convert_to<double>(); }

std::string rational_str(const oracle::Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json exact_json(const oracle::ExactValue& v) {
  json j{{"log_value", v.log_value}, {"count", v.count}};
  if (v.value) {
    j["value"] = rational_str(*v.value);
    j["value_float"] = rational_to_double(*v.value);
  } else {
    j["value"] = std::exp(v.log_value);
  }
  j["oracle_seconds"] = v.seconds;
  return j;
}

HardCoreVariant parse_variant(const std::string& s) {
  if (s == "expander") return HardCoreVariant::kExpander;
  if (s == "random") return HardCoreVariant::kRandomRegular;
  throw Error("bad-parameter", "variant must be expander or random");
}

// Empirical distribution helpers for sample-suite.
using Counts = std::map<oracle::Atom, std::uint64_t>;

oracle::Atom atom_of(const VertexSet& s) {
  oracle::Atom a;
  s.for_each([&](Vertex v) { a.push_back(v); });
  return a;
}

json tv_json(const oracle::Distribution& exact, const Counts& counts, std::size_t samples, double eps) {
  const double tv = oracle::total_variation(exact, counts);
  const double bound = eps + 3.0 * std::sqrt(static_cast<double>(exact.size()) / static_cast<double>(samples));
  return json{{"support", exact.size()}, {"observed_atoms", counts.size()}, {"tv", tv}, {"tv_bound", bound},
              {"tv_ok", tv <= bound}};
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  for (int i = 1; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"Polymer-model approximate counting and sampling"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string gen_family = "regular", gen_out;
  std::size_t gen_n = 0, gen_delta = 3, gen_a = 3, gen_b = 3;
  bool gen_bipartite = false;
  std::uint64_t gen_seed = 1;
  gen->add_option("--family", gen_family, "regular|complete|bipartite-complete|cycle|path|petersen")
      ->check(CLI::IsMember({"regular", "complete", "bipartite-complete", "cycle", "path", "petersen"}));
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--delta", gen_delta, "degree (regular family)");
  gen->add_option("--a", gen_a, "first side (bipartite-complete)");
  gen->add_option("--b", gen_b, "second side (bipartite-complete)");
  gen->add_flag("--bipartite", gen_bipartite, "bipartite configuration model");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("-o,--output", gen_out, "output file (.json for JSON, else edge list)");

  // expansion
  auto* exp_cmd = app.add_subcommand("expansion", "measure or certify expansion");
  std::string exp_graph, exp_method = "auto";
  double exp_eps = 0.01;
  std::optional<double> exp_sigma, exp_rho;
  exp_cmd->add_option("--graph", exp_graph)->required();
  exp_cmd->add_option("--method", exp_method)->check(CLI::IsMember({"auto", "exact", "spectral", "both"}));
  exp_cmd->add_option("--eps", exp_eps, "slack in the Friedman bound");
  exp_cmd->add_option("--sigma", exp_sigma, "(sigma, rho)-expander query");
  exp_cmd->add_option("--rho", exp_rho);

  // potts
  auto* potts = app.add_subcommand("potts", "ferromagnetic Potts model");
  potts->require_subcommand(1);
  Common pc;
  PottsParams pp;
  auto* potts_count_cmd = potts->add_subcommand("count");
  auto* potts_sample_cmd = potts->add_subcommand("sample");
  auto* potts_certify_cmd = potts->add_subcommand("certify");
  for (auto* sub : {potts_count_cmd, potts_sample_cmd, potts_certify_cmd}) {
    add_common(sub, pc, sub == potts_sample_cmd);
    sub->add_option("--q", pp.q)->check(CLI::Range(std::size_t{2}, std::size_t{32}));
    sub->add_option("--beta", pp.beta)->check(CLI::PositiveNumber);
    if (sub != potts_certify_cmd) sub->add_option("--alpha", pp.alpha, "certified edge expansion");
  }

  // hardcore
  auto* hc = app.add_subcommand("hardcore", "hard-core model on bipartite graphs");
  hc->require_subcommand(1);
  Common hcc;
  HardCoreParams hp;
  std::string hc_variant = "expander";
  auto* hc_count_cmd = hc->add_subcommand("count");
  auto* hc_sample_cmd = hc->add_subcommand("sample");
  for (auto* sub : {hc_count_cmd, hc_sample_cmd}) {
    add_common(sub, hcc, sub == hc_sample_cmd);
    sub->add_option("--lambda", hp.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--variant", hc_variant)->check(CLI::IsMember({"expander", "random"}));
    sub->add_option("--alpha", hp.alpha, "bipartite expansion");
  }

  // colorings
  auto* col = app.add_subcommand("colorings", "proper q-colorings of bipartite graphs");
  col->require_subcommand(1);
  Common cc;
  ColoringParams cp;
  auto* col_count_cmd = col->add_subcommand("count");
  auto* col_sample_cmd = col->add_subcommand("sample");
  for (auto* sub : {col_count_cmd, col_sample_cmd}) {
    add_common(sub, cc, sub == col_sample_cmd);
    sub->add_option("--q", cp.q)->check(CLI::Range(std::size_t{3}, kMaxColors));
    sub->add_option("--c", cp.c, "constant of the degree threshold");
    sub->add_flag("--override-caps", cp.override_caps, "desk-scale mode: explicit size cap, g(S) = |S|");
    sub->add_option("--size-cap", cp.size_cap, "polymer size cap in override mode");
  }

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive ground truth");
  orc->require_subcommand(1);
  std::string or_graph, or_lambda = "1", or_model = "hardcore", or_side = "even";
  std::size_t or_q = 3, or_pattern = 0;
  double or_beta = 1.0;
  unsigned or_threads = 1;
  bool or_override = false;
  std::size_t or_size_cap = 2;
  auto* or_hc = orc->add_subcommand("hardcore");
  auto* or_potts = orc->add_subcommand("potts");
  auto* or_col = orc->add_subcommand("colorings");
  auto* or_xi = orc->add_subcommand("xi");
  for (auto* sub : {or_hc, or_potts, or_col, or_xi}) {
    sub->add_option("--graph", or_graph)->required();
    sub->add_option("--threads", or_threads)->check(CLI::Range(1U, 256U));
  }
  or_hc->add_option("--lambda", or_lambda, "rational fugacity, e.g. 10 or 1/2");
  or_potts->add_option("--q", or_q);
  or_potts->add_option("--beta", or_beta);
  or_col->add_option("--q", or_q);
  or_xi->add_option("--model", or_model)->check(CLI::IsMember({"hardcore", "potts", "colorings"}));
  or_xi->add_option("--side", or_side)->check(CLI::IsMember({"even", "odd"}));
  or_xi->add_option("--lambda", or_lambda);
  or_xi->add_option("--q", or_q);
  or_xi->add_option("--beta", or_beta);
  or_xi->add_option("--pattern", or_pattern, "pattern index (colorings)");
  or_xi->add_flag("--override-caps", or_override);
  or_xi->add_option("--size-cap", or_size_cap);

  // kp
  auto* kp = app.add_subcommand("kp", "analytic and empirical KP checks");
  std::string kp_model = "potts", kp_graph;
  std::size_t kp_q = 3, kp_delta = 3, kp_cutoff = 0;
  double kp_alpha = 1.0, kp_beta = 1.0, kp_lambda = 1.0, kp_c = ColoringParams{}.c;
  kp->add_option("--model", kp_model)->check(CLI::IsMember({"potts", "hardcore", "hardcore-random", "colorings"}));
  kp->add_option("--q", kp_q);
  kp->add_option("--delta", kp_delta, "maximum degree (ignored with --graph)");
  kp->add_option("--alpha", kp_alpha);
  kp->add_option("--beta", kp_beta);
  kp->add_option("--lambda", kp_lambda);
  kp->add_option("--c", kp_c);
  kp->add_option("--graph", kp_graph, "also run the empirical check on this graph");
  kp->add_option("--cutoff", kp_cutoff, "largest polymer size examined empirically");

  // sample-suite
  auto* suite = app.add_subcommand("sample-suite", "repeated draws, structural checks and TV against the oracle");
  std::string su_model = "hardcore", su_graph;
  std::size_t su_samples = 10000, su_q = 3, su_polymers = 3;
  double su_eps = 0.02, su_lambda = 10.0, su_beta = 1.0, su_weight = 0.1;
  std::uint64_t su_seed = 1;
  bool su_override = false;
  suite->add_option("--model", su_model)->check(CLI::IsMember({"hardcore", "potts", "colorings", "nu"}));
  suite->add_option("--graph", su_graph);
  suite->add_option("--samples", su_samples)->check(CLI::Range(std::size_t{1}, std::size_t{10'000'000}));
  suite->add_option("--eps", su_eps)->check(CLI::PositiveNumber);
  suite->add_option("--seed", su_seed);
  suite->add_option("--lambda", su_lambda);
  suite->add_option("--beta", su_beta);
  suite->add_option("--q", su_q);
  suite->add_option("--weight", su_weight, "polymer weight (nu model)");
  suite->add_option("--polymers", su_polymers, "mutually incompatible polymers (nu model)");
  suite->add_flag("--override-caps", su_override);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*gen) {
      Graph g;
      if (gen_family == "regular") {
        g = random_regular(gen_n, gen_delta, gen_bipartite, gen_seed);
      } else if (gen_family == "complete") {
        g = graphs::complete(gen_n);
      } else if (gen_family == "bipartite-complete") {
        g = graphs::complete_bipartite(gen_a, gen_b);
      } else if (gen_family == "cycle") {
        g = graphs::cycle(gen_n);
      } else if (gen_family == "path") {
        g = graphs::path(gen_n);
      } else {
        g = graphs::petersen();
      }
      json r = base_report(ctx, "gen");
      r["family"] = gen_family;
      r["seed"] = gen_seed;
      r["graph"] = graph_summary(g);
      if (gen_out.empty()) {
        r["graph_data"] = graph_to_json(g);
      } else {
        save_graph(gen_out, g);
        r["output"] = gen_out;
      }
      emit(r, ctx);
    } else if (*exp_cmd) {
      const Graph g = load_graph(exp_graph);
      json r = base_report(ctx, "expansion");
      r["graph"] = graph_summary(g);
      const bool exact = exp_method == "exact" || exp_method == "both" ||
                         (exp_method == "auto" && g.n() <= exact_expansion_cap());
      const bool spectral = exp_method == "spectral" || exp_method == "both" || (exp_method == "auto" && g.is_regular());
      if (exact) r["exact"] = expansion_json(expansion_exact(g));
      if (spectral) r["spectral"] = expansion_json(expansion_spectral(g, exp_eps));
      if (exp_sigma && exp_rho) {
        r["sigma_rho"] = {{"sigma", *exp_sigma}, {"rho", *exp_rho},
                          {"holds", is_sigma_rho_expander(g, *exp_sigma, *exp_rho)}};
        try {
          r["sigma_rho"]["bassalygo_threshold"] = bassalygo_threshold(*exp_sigma, *exp_rho);
        } catch (const Error& e) {
          r["sigma_rho"]["bassalygo_threshold"] = e.code();
        }
      }
      emit(r, ctx);
    } else if (*potts) {
      const Graph g = load_graph(pc.graph);
      json r = base_report(ctx, std::string("potts ") + (*potts_count_cmd ? "count" : *potts_sample_cmd ? "sample" : "certify"));
      r["graph"] = graph_summary(g);
      r["params"] = {{"q", pp.q}, {"beta", pp.beta}, {"alpha", pp.alpha}, {"eps", pc.eps}};
      if (*potts_count_cmd) {
        r["result"] = approx_json(potts_count(g, pp, pc.eps, run_options(pc)));
      } else if (*potts_certify_cmd) {
        const PottsCertificate c = potts_certified_count(g, pp.q, pp.beta, pc.eps, run_options(pc));
        json cert = expansion_json(c.spectral);
        cert["spectral_ok"] = c.spectral_ok;
        cert["alpha"] = c.alpha;
        cert["beta_required"] = c.beta_required;
        cert["beta_ok"] = c.beta_ok;
        cert["certified"] = c.certified;
        if (!c.reason.empty()) cert["reason"] = c.reason;
        cert["binding"] = "lambda(G) <= 2 sqrt(Delta - 1) + 1/100 gives alpha = Delta / 40; beta > 200 ln(q Delta) / Delta";
        r["certification"] = cert;
        if (c.result) r["result"] = approx_json(*c.result);
        if (!c.certified) exit_code = kExitNotCertified;
      } else {
        PottsSampler sampler(g, pp, pc.eps);
        r["seed"] = pc.seed;
        r["method"] = method_name(sampler.method());
        json draws = json::array();
        for (std::size_t i = 0; i < pc.samples; ++i) {
          Rng rng(pc.seed, i);
          auto colors = sampler.draw(rng);
          json d{{"reconstruction", colors}, {"monochromatic_edges", monochromatic_edges(g, colors)}};
          if (sampler.method() == Method::kPolymer) d["polymers"] = polymers_json(sampler.index(), sampler.last_polymers());
          draws.push_back(d);
        }
        r["draws"] = draws;
      }
      emit(r, ctx);
    } else if (*hc) {
      const Graph g = load_graph(hcc.graph);
      hp.variant = parse_variant(hc_variant);
      json r = base_report(ctx, std::string("hardcore ") + (*hc_count_cmd ? "count" : "sample"));
      r["graph"] = graph_summary(g);
      r["params"] = {{"lambda", hp.lambda}, {"variant", variant_name(hp.variant)}, {"alpha", hp.alpha}, {"eps", hcc.eps}};
      if (*hc_count_cmd) {
        HardCoreBranches br;
        const ApproxResult res = hc_count(g, hp, hcc.eps, run_options(hcc), &br);
        r["result"] = approx_json(res);
        if (res.method == Method::kPolymer)
          r["result"]["branches"] = {{"log_even_term", br.log_even_term}, {"log_odd_term", br.log_odd_term}};
      } else {
        HardCoreSampler sampler(g, hp, hcc.eps, run_options(hcc));
        r["seed"] = hcc.seed;
        r["method"] = method_name(sampler.method());
        if (sampler.method() == Method::kPolymer) r["even_probability"] = sampler.even_probability();
        json draws = json::array();
        for (std::size_t i = 0; i < hcc.samples; ++i) {
          Rng rng(hcc.seed, i);
          const VertexSet s = sampler.draw(rng);
          if (!is_independent(g, s)) throw Error("internal", "sampled set is not independent");
          json d{{"reconstruction", set_json(s)}};
          if (sampler.method() == Method::kPolymer) {
            d["side"] = sampler.last_side() == kEvenSide ? "even" : "odd";
            d["polymers"] = polymers_json(sampler.index(sampler.last_side()), sampler.last_polymers());
          }
          draws.push_back(d);
        }
        r["draws"] = draws;
      }
      emit(r, ctx);
    } else if (*col) {
      const Graph g = load_graph(cc.graph);
      json r = base_report(ctx, std::string("colorings ") + (*col_count_cmd ? "count" : "sample"));
      r["graph"] = graph_summary(g);
      r["params"] = {{"q", cp.q}, {"c", cp.c}, {"override_caps", cp.override_caps}, {"eps", cc.eps}};
      if (cp.override_caps) r["params"]["size_cap"] = cp.size_cap;
      if (*col_count_cmd) {
        r["result"] = approx_json(coloring_count(g, cp, cc.eps, run_options(cc)));
      } else {
        ColoringSampler sampler(g, cp, cc.eps, run_options(cc));
        r["seed"] = cc.seed;
        r["method"] = method_name(sampler.method());
        json draws = json::array();
        for (std::size_t i = 0; i < cc.samples; ++i) {
          Rng rng(cc.seed, i);
          const auto colors = sampler.draw(rng);
          if (!is_proper(g, colors)) throw Error("internal", "sampled coloring is not proper");
          json d{{"reconstruction", colors}};
          if (sampler.method() == Method::kPolymer) {
            const Pattern& pat = sampler.patterns()[sampler.last_pattern()];
            d["pattern"] = {{"a", pat.a}, {"b", pat.b}};
            d["polymers"] = polymers_json(sampler.index(sampler.last_pattern()), sampler.last_polymers());
          }
          draws.push_back(d);
        }
        r["draws"] = draws;
      }
      emit(r, ctx);
    } else if (*orc) {
      const Graph g = load_graph(or_graph);
      json r = base_report(ctx, "oracle");
      r["graph"] = graph_summary(g);
      if (*or_hc) {
        r["command"] = "oracle hardcore";
        const auto lambda = parse_rational(or_lambda);
        r["params"] = {{"lambda", rational_str(lambda)}};
        r["result"] = exact_json(oracle::exact_hardcore(g, lambda));
      } else if (*or_potts) {
        r["command"] = "oracle potts";
        r["params"] = {{"q", or_q}, {"beta", or_beta}};
        r["result"] = exact_json(oracle::exact_potts(g, or_q, or_beta, or_threads));
        r["result"]["polynomial"] = oracle::potts_polynomial(g, or_q, or_threads).str();
      } else if (*or_col) {
        r["command"] = "oracle colorings";
        r["params"] = {{"q", or_q}};
        r["result"] = exact_json(oracle::exact_colorings(g, or_q, or_threads));
      } else {
        r["command"] = "oracle xi";
        PolymerIndex index;
        std::optional<std::vector<oracle::Rational>> exact_weights;
        const double far = 1e9;  // no truncation: every admissible polymer
        if (or_model == "hardcore") {
          const auto lambda = parse_rational(or_lambda);
          HardCoreParams p;
          p.lambda = rational_to_double(lambda);
          const int side = or_side == "even" ? kEvenSide : kOddSide;
          index = hc_index(g, p, side, far);
          std::vector<oracle::Rational> w;
          for (std::size_t i = 0; i < index.size(); ++i) {
            const Boundaries b = boundaries(g, index[i].set);
            oracle::Rational v = 1;
            for (std::size_t k = 0; k < index[i].set.size(); ++k) v *= lambda;
            for (std::size_t k = 0; k < b.vertex_boundary.size(); ++k) v /= (1 + lambda);
            w.push_back(v);
          }
          exact_weights = w;
          r["params"] = {{"model", "hardcore"}, {"side", or_side}, {"lambda", rational_str(lambda)}};
        } else if (or_model == "potts") {
          PottsParams p;
          p.q = or_q;
          p.beta = or_beta;
          index = potts_index(g, p, far);
          r["params"] = {{"model", "potts"}, {"q", or_q}, {"beta", or_beta}};
        } else {
          ColoringParams p;
          p.q = or_q;
          p.override_caps = or_override;
          p.size_cap = or_size_cap;
          const auto pats = enumerate_patterns(or_q);
          if (or_pattern >= pats.size()) throw Error("bad-parameter", "pattern index out of range");
          index = coloring_index(g, p, pats[or_pattern], far);
          r["params"] = {{"model", "colorings"}, {"q", or_q}, {"pattern", {{"a", pats[or_pattern].a}, {"b", pats[or_pattern].b}}}};
        }
        oracle::Incompatibility inc(index.size(), std::vector<bool>(index.size(), false));
        for (std::size_t i = 0; i < index.size(); ++i)
          for (PolymerId j : index.incompatible_with(static_cast<PolymerId>(i))) inc[i][j] = true;
        std::uint64_t count = 0;
        json res{{"polymers", index.size()}};
        if (exact_weights) {
          const auto xi = oracle::exact_xi<oracle::Rational>(*exact_weights, inc, &count);
          res["value"] = rational_str(xi);
          res["value_float"] = rational_to_double(xi);
          res["log_value"] = std::log(rational_to_double(xi));
        } else {
          std::vector<double> w;
          for (std::size_t i = 0; i < index.size(); ++i) w.push_back(std::exp(index[i].log_weight));
          const double xi = oracle::exact_xi<double>(w, inc, &count);
          res["value"] = xi;
          res["log_value"] = std::log(xi);
        }
        res["count"] = count;
        r["result"] = res;
      }
      emit(r, ctx);
    } else if (*kp) {
      json r = base_report(ctx, "kp");
      std::optional<Graph> g;
      if (!kp_graph.empty()) {
        g = load_graph(kp_graph);
        kp_delta = g->max_degree();
        r["graph"] = graph_summary(*g);
      }
      AnalyticKp a;
      if (kp_model == "potts") a = analytic_kp_potts(kp_q, kp_delta, kp_alpha, kp_beta);
      else if (kp_model == "hardcore") a = analytic_kp_hardcore(kp_delta, kp_alpha, kp_lambda);
      else if (kp_model == "hardcore-random") a = analytic_kp_hardcore_random(kp_delta, kp_lambda);
      else a = analytic_kp_coloring(kp_q, kp_delta, kp_c);
      r["analytic_kp"] = analytic_json(a);
      r["binding"] = a.binding;
      std::vector<KpReport> reports;
      std::vector<std::string> names;
      if (g) {
        std::vector<std::pair<std::string, PolymerIndex>> indexes;
        if (kp_model == "potts") {
          PottsParams p{kp_q, kp_beta, kp_alpha};
          indexes.emplace_back("potts", potts_index(*g, p, 1e9));
        } else if (kp_model == "hardcore" || kp_model == "hardcore-random") {
          HardCoreParams p;
          p.lambda = kp_lambda;
          p.alpha = kp_alpha;
          p.variant = kp_model == "hardcore" ? HardCoreVariant::kExpander : HardCoreVariant::kRandomRegular;
          indexes.emplace_back("even", hc_index(*g, p, kEvenSide, 1e9));
          indexes.emplace_back("odd", hc_index(*g, p, kOddSide, 1e9));
        } else {
          ColoringParams p;
          p.q = kp_q;
          p.c = kp_c;
          const auto pats = enumerate_patterns(kp_q);
          indexes.emplace_back("pattern-0", coloring_index(*g, p, pats.front(), 1e9));
        }
        json emp = json::array();
        for (auto& [name, index] : indexes) {
          const std::size_t cutoff = kp_cutoff ? kp_cutoff : index.max_polymer_size();
          reports.push_back(kp_empirical(index, 1.0, cutoff));
          emp.push_back(kp_report_json(name, reports.back()));
        }
        r["empirical_kp"] = emp;
      }
      std::vector<const KpReport*> ptrs;
      for (const auto& rep : reports) ptrs.push_back(&rep);
      const KpStatus st = combine_kp(std::optional<AnalyticKp>(a), ptrs);
      r["kp_status"] = kp_status_name(st);
      if (st == KpStatus::kViolated || (st != KpStatus::kAnalytic && ptrs.empty())) exit_code = kExitNotCertified;
      emit(r, ctx);
    } else if (*suite) {
      json r = base_report(ctx, "sample-suite");
      r["params"] = {{"model", su_model}, {"samples", su_samples}, {"eps", su_eps}, {"seed", su_seed}};
      Counts counts;
      bool structural_ok = true;
      oracle::Distribution exact;
      if (su_model == "nu") {
        std::vector<double> lw(su_polymers, std::log(su_weight));
        oracle::Incompatibility inc(su_polymers, std::vector<bool>(su_polymers, true));
        const PolymerIndex index = abstract_index(lw, inc);
        PolymerSampler sampler(index, su_eps);
        for (std::size_t i = 0; i < su_samples; ++i) {
          Rng rng(su_seed, i);
          auto ids = sampler.draw(rng);
          structural_ok = structural_ok && pairwise_compatible(index, ids);
          std::sort(ids.begin(), ids.end());
          ++counts[oracle::Atom(ids.begin(), ids.end())];
        }
        exact = oracle::exact_nu(lw, inc);
        r["params"]["weight"] = su_weight;
        r["params"]["polymers"] = su_polymers;
      } else {
        if (su_graph.empty()) throw Error("bad-parameter", "--graph is required for model " + su_model);
        const Graph g = load_graph(su_graph);
        r["graph"] = graph_summary(g);
        if (su_model == "hardcore") {
          HardCoreParams p;
          p.lambda = su_lambda;
          HardCoreSampler sampler(g, p, su_eps);
          r["method"] = method_name(sampler.method());
          for (std::size_t i = 0; i < su_samples; ++i) {
            Rng rng(su_seed, i);
            const VertexSet s = sampler.draw(rng);
            structural_ok = structural_ok && is_independent(g, s);
            ++counts[atom_of(s)];
          }
          exact = oracle::hardcore_measure(g, su_lambda);
          r["params"]["lambda"] = su_lambda;
        } else if (su_model == "potts") {
          PottsParams p;
          p.q = su_q;
          p.beta = su_beta;
          PottsSampler sampler(g, p, su_eps);
          r["method"] = method_name(sampler.method());
          for (std::size_t i = 0; i < su_samples; ++i) {
            Rng rng(su_seed, i);
            auto c = sampler.draw(rng);
            structural_ok = structural_ok && c.size() == g.n();
            ++counts[c];
          }
          exact = oracle::potts_measure(g, su_q, su_beta);
          r["params"]["q"] = su_q;
          r["params"]["beta"] = su_beta;
        } else {
          ColoringParams p;
          p.q = su_q;
          p.override_caps = su_override;
          ColoringSampler sampler(g, p, su_eps);
          r["method"] = method_name(sampler.method());
          for (std::size_t i = 0; i < su_samples; ++i) {
            Rng rng(su_seed, i);
            auto c = sampler.draw(rng);
            structural_ok = structural_ok && is_proper(g, c);
            ++counts[c];
          }
          exact = oracle::coloring_measure(g, su_q);
          r["params"]["q"] = su_q;
          r["params"]["override_caps"] = su_override;
        }
      }
      json res = tv_json(exact, counts, su_samples, su_eps);
      res["structural_ok"] = structural_ok;
      r["result"] = res;
      if (!structural_ok) throw Error("internal", "a sample failed its structural check");
      emit(r, ctx);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
