#include "polymer/kp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymer/graph.hpp"

namespace polymer {

const char* kp_status_name(KpStatus s) {
  switch (s) {
    case KpStatus::kAnalytic: return "analytic";
    case KpStatus::kVerifiedToCutoff: return "verified-to-cutoff";
    case KpStatus::kViolated: return "violated";
    case KpStatus::kUnchecked: return "unchecked";
  }
  return "unchecked";
}

double geometric_tail(double base) {
  if (!(base < 1.0)) return std::numeric_limits<double>::infinity();
  return base / (1.0 - base);
}

double potts_beta_threshold(std::size_t q, std::size_t max_degree, double alpha) {
  return (4.0 + 2.0 * std::log(static_cast<double>(q * max_degree))) / alpha;
}

double hardcore_lambda_threshold(std::size_t max_degree, double alpha) {
  const double d = static_cast<double>(max_degree);
  return std::pow(2.0 * std::exp(3.0) * std::pow(d, 4.0), 1.0 / alpha);
}

double hardcore_lemma_threshold(double alpha) { return std::exp(11.0 / alpha); }

double hardcore_random_lambda_threshold(std::size_t max_degree) {
  const double ld = std::log(static_cast<double>(max_degree));
  return 50.0 * ld * ld / static_cast<double>(max_degree);
}

double coloring_degree_threshold(std::size_t q, double c) {
  const double lq = std::log(static_cast<double>(q));
  return c * static_cast<double>(q * q) * lq * lq;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error("bad-parameter", what);
}

void finish(AnalyticKp& r) {
  const double slack = kThresholdRelTol * std::max(1.0, std::fabs(r.threshold));
  r.at_threshold = std::fabs(r.parameter - r.threshold) <= slack;
  r.threshold_met = r.parameter >= r.threshold - slack;
  r.geometric_sum = geometric_tail(r.base);
  r.sum_ok = r.geometric_sum <= r.target * (1.0 + kThresholdRelTol);
  r.holds = r.threshold_met && r.sum_ok;
  if (r.at_threshold) r.warnings.push_back(r.parameter_name + " sits exactly on its threshold");
}

}  // namespace

AnalyticKp analytic_kp_potts(std::size_t q, std::size_t max_degree, double alpha, double beta) {
  require(q >= 2 && max_degree >= 1 && alpha > 0 && beta > 0, "potts KP needs q>=2, degree>=1, alpha>0, beta>0");
  AnalyticKp r;
  r.model = "potts";
  r.parameter_name = "beta";
  r.parameter = beta;
  r.threshold = potts_beta_threshold(q, max_degree, alpha);
  const double d = static_cast<double>(max_degree);
  r.base = static_cast<double>(q - 1) * d * std::exp(3.0 - alpha * beta);
  r.target = 1.0 / (d + 1.0);
  r.binding = "beta >= (4 + 2 ln(q Delta)) / alpha";
  finish(r);
  return r;
}

AnalyticKp analytic_kp_hardcore(std::size_t max_degree, double alpha, double lambda) {
  require(max_degree >= 1 && alpha > 0 && lambda > 0, "hard-core KP needs degree>=1, alpha>0, lambda>0");
  AnalyticKp r;
  r.model = "hardcore";
  r.parameter_name = "lambda";
  r.parameter = lambda;
  r.threshold = hardcore_lambda_threshold(max_degree, alpha);
  const double d = static_cast<double>(max_degree);
  r.base = std::exp(3.0) * d * d * std::pow(1.0 + lambda, -alpha);
  r.target = 1.0 / (d * d);
  r.secondary_threshold = hardcore_lemma_threshold(alpha);
  r.binding = *r.secondary_threshold > r.threshold ? "lambda > e^(11/alpha)"
                                                   : "lambda > (2 e^3 Delta^4)^(1/alpha)";
  finish(r);
  return r;
}

AnalyticKp analytic_kp_hardcore_random(std::size_t max_degree, double lambda) {
  require(max_degree >= 2 && lambda > 0, "random-regular hard-core KP needs degree>=2, lambda>0");
  AnalyticKp r;
  r.model = "hardcore-random";
  r.parameter_name = "lambda";
  r.parameter = lambda;
  r.threshold = hardcore_random_lambda_threshold(max_degree);
  const double d = static_cast<double>(max_degree);
  const double ld = std::log(d);
  r.base = std::exp(2.0 * ld + 2.0 - d / (10.0 * ld) * std::log1p(lambda) + std::log(lambda));
  r.target = 1.0 / (d * d);
  r.binding = "lambda >= 50 ln^2(Delta) / Delta";
  finish(r);
  return r;
}

AnalyticKp analytic_kp_coloring(std::size_t q, std::size_t max_degree, double c) {
  require(q >= 3 && max_degree >= 2 && c > 0, "coloring KP needs q>=3, degree>=2, C>0");
  AnalyticKp r;
  r.model = "colorings";
  r.parameter_name = "Delta";
  r.parameter = static_cast<double>(max_degree);
  r.threshold = coloring_degree_threshold(q, c);
  const double d = static_cast<double>(max_degree);
  const double qq = static_cast<double>(q * q);
  r.base = std::exp(2.0) * d * d * d * std::exp(-d / (10.0 * qq * std::log(d)));
  r.target = 1.0 / (d * d * d);
  r.binding = "Delta >= C q^2 ln^2 q";
  finish(r);
  return r;
}

KpReport kp_empirical(const PolymerIndex& index, double per_vertex_target, std::size_t cutoff) {
  KpReport r;
  r.per_vertex_target = per_vertex_target;
  r.cutoff = cutoff;
  r.per_vertex_sums.assign(index.vertex_count(), 0.0);
  std::vector<double> mass(index.size(), 0.0);
  for (PolymerId i = 0; i < index.size(); ++i) {
    const Polymer& p = index[i];
    if (p.size > cutoff) continue;
    ++r.polymers_checked;
    mass[i] = std::exp(p.log_weight + static_cast<double>(p.size) + p.g);
    p.set.for_each([&](Vertex v) { r.per_vertex_sums[v] += mass[i]; });
  }
  for (double s : r.per_vertex_sums) r.max_per_vertex = std::max(r.max_per_vertex, s);
  r.per_vertex_ok = r.max_per_vertex <= per_vertex_target;

  for (PolymerId i = 0; i < index.size(); ++i) {
    const Polymer& p = index[i];
    if (p.size > cutoff) continue;
    double sum = mass[i];
    for (PolymerId j : index.incompatible_with(i)) sum += mass[j];
    r.max_aggregate_ratio = std::max(r.max_aggregate_ratio, sum / static_cast<double>(p.size));
  }
  r.aggregate_ok = r.max_aggregate_ratio <= 1.0;
  r.tail_unbounded = index.max_polymer_size() >= cutoff;
  r.status = r.aggregate_ok ? KpStatus::kVerifiedToCutoff : KpStatus::kViolated;
  return r;
}

KpStatus combine_kp(const std::optional<AnalyticKp>& analytic, const std::vector<const KpReport*>& empirical) {
  if (analytic && analytic->holds) return KpStatus::kAnalytic;
  bool any = false;
  for (const KpReport* e : empirical) {
    if (!e || e->status == KpStatus::kUnchecked) continue;
    if (e->status == KpStatus::kViolated) return KpStatus::kViolated;
    any = true;
  }
  return any ? KpStatus::kVerifiedToCutoff : KpStatus::kUnchecked;
}

}  // namespace polymer
