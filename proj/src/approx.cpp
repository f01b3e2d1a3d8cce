#include "polymer/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polymer {

double log_add(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum(const std::vector<double>& xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (std::isinf(hi)) return hi;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

std::size_t largest_below(double x) {
  if (!(x > 0.0)) return 0;
  double f = std::ceil(x) - 1.0;
  if (f < 0.0) return 0;
  if (f > 1e9) return static_cast<std::size_t>(1e9);
  return static_cast<std::size_t>(f);
}

}  // namespace polymer
