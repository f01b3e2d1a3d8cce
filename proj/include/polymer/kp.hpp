#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polymer/polymer_model.hpp"

namespace polymer {

enum class KpStatus { kAnalytic, kVerifiedToCutoff, kViolated, kUnchecked };

const char* kp_status_name(KpStatus s);

// Relative slack under which a parameter counts as sitting on its threshold.
inline constexpr double kThresholdRelTol = 1e-12;

// Closed-form sufficient condition for one model: the parameter must reach
// its threshold and the per-vertex geometric sum sum_{t>=1} base^t must not
// exceed the target.
struct AnalyticKp {
  std::string model;
  std::string parameter_name;
  double parameter = 0.0;
  double threshold = 0.0;
  bool threshold_met = false;
  bool at_threshold = false;  // within kThresholdRelTol; accepted with a warning
  double base = 0.0;
  double geometric_sum = 0.0;  // +inf when base >= 1
  double target = 0.0;
  bool sum_ok = false;
  bool holds = false;
  // Name of the inequality that gates the run.
  std::string binding;
  // Additional threshold that the approximation lemma needs (hard-core
  // expander variant only); reported, enforced by the model pipeline.
  std::optional<double> secondary_threshold;
  std::vector<std::string> warnings;
};

double geometric_tail(double base);

double potts_beta_threshold(std::size_t q, std::size_t max_degree, double alpha);
double hardcore_lambda_threshold(std::size_t max_degree, double alpha);
double hardcore_lemma_threshold(double alpha);
double hardcore_random_lambda_threshold(std::size_t max_degree);
double coloring_degree_threshold(std::size_t q, double c);

AnalyticKp analytic_kp_potts(std::size_t q, std::size_t max_degree, double alpha, double beta);
AnalyticKp analytic_kp_hardcore(std::size_t max_degree, double alpha, double lambda);
AnalyticKp analytic_kp_hardcore_random(std::size_t max_degree, double lambda);
AnalyticKp analytic_kp_coloring(std::size_t q, std::size_t max_degree, double c);

// Empirical check over the polymers of an index up to `cutoff` size. The
// per-vertex form sums w e^{|S|+g(S)} over polymers containing each vertex and
// compares with `per_vertex_target`; the aggregate form sums over polymers
// incompatible with each polymer (itself included) against its size. The
// status follows the aggregate form, which is the condition the expansion
// needs; the per-vertex form is the stronger sufficient one.
struct KpReport {
  KpStatus status = KpStatus::kUnchecked;
  std::vector<double> per_vertex_sums;
  double per_vertex_target = 0.0;
  double max_per_vertex = 0.0;
  bool per_vertex_ok = true;
  double max_aggregate_ratio = 0.0;  // max over polymers of sum / |polymer|
  bool aggregate_ok = true;
  std::size_t cutoff = 0;
  std::size_t polymers_checked = 0;
  bool tail_unbounded = true;  // larger polymers were not examined
  std::optional<AnalyticKp> analytic;
};

KpReport kp_empirical(const PolymerIndex& index, double per_vertex_target, std::size_t cutoff);

// Status of a model run: analytic when the closed form holds, otherwise the
// empirical verdict.
KpStatus combine_kp(const std::optional<AnalyticKp>& analytic, const std::vector<const KpReport*>& empirical);

}  // namespace polymer
