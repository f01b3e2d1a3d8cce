#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymer/kp.hpp"

namespace polymer {

enum class Method { kPolymer, kBrute };

inline const char* method_name(Method m) { return m == Method::kBrute ? "brute" : "polymer"; }

struct RunOptions {
  unsigned threads = 1;
  bool empirical_kp = true;
};

// Estimate of a log partition function with the evidence behind it.
struct ApproxResult {
  double log_value = 0.0;
  double eps = 0.0;
  Method method = Method::kPolymer;
  KpStatus kp_status = KpStatus::kUnchecked;
  std::optional<AnalyticKp> analytic;
  // One empirical report per polymer index (branch / side / pattern).
  std::vector<std::pair<std::string, KpReport>> empirical;
  double truncation = 0.0;  // m
  std::size_t size_cap = 0;
  std::size_t cluster_count = 0;
  std::size_t polymer_count = 0;
  std::string binding;
  std::vector<std::string> warnings;
  std::vector<std::string> info;
};

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);
double log_sum(const std::vector<double>& xs);

// Largest integer strictly below x (and at least 0).
std::size_t largest_below(double x);

}  // namespace polymer
