#include <cmath>

#include "doctest.h"
#include "polymer/hardcore.hpp"
#include "polymer/kp.hpp"
#include "test_support.hpp"

using namespace polymer;
using testing_support::error_code;

TEST_CASE("Potts threshold") {
  const double beta = 2.0 + std::log(6.0);
  CHECK(potts_beta_threshold(2, 3, 2.0) == doctest::Approx(beta).epsilon(1e-15));
  const AnalyticKp at = analytic_kp_potts(2, 3, 2.0, beta);
  CHECK(at.holds);
  CHECK(at.at_threshold);
  CHECK_FALSE(at.warnings.empty());
  // Independent evaluation of the geometric sum at the threshold.
  const double base = 3.0 * std::exp(3.0 - 2.0 * beta);
  CHECK(at.geometric_sum == doctest::Approx(base / (1.0 - base)));
  CHECK(at.geometric_sum <= 0.25);
  CHECK_FALSE(analytic_kp_potts(2, 3, 2.0, 0.9 * beta).holds);
  CHECK(analytic_kp_potts(2, 3, 2.0, 1.5 * beta).holds);
  CHECK_FALSE(analytic_kp_potts(2, 3, 2.0, 1.5 * beta).at_threshold);
}

TEST_CASE("hard-core thresholds") {
  for (std::size_t d : {3, 5, 10}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double lambda = std::pow(2.0 * std::exp(3.0) * std::pow(d, 4.0), 1.0 / alpha);
      const AnalyticKp at = analytic_kp_hardcore(d, alpha, lambda);
      CHECK(at.holds);
      CHECK(at.geometric_sum <= 1.0 / (d * d));
      CHECK_FALSE(analytic_kp_hardcore(d, alpha, 0.9 * lambda).holds);
      REQUIRE(at.secondary_threshold);
      CHECK(*at.secondary_threshold == doctest::Approx(std::exp(11.0 / alpha)));
    }
  }
  // Large alpha: the lemma threshold e^{11/alpha} dominates.
  CHECK(analytic_kp_hardcore(3, 20.0, 10.0).binding == "lambda > e^(11/alpha)");
  CHECK(analytic_kp_hardcore(10, 2.0, 10.0).binding == "lambda > (2 e^3 Delta^4)^(1/alpha)");
  CHECK(hardcore_random_lambda_threshold(1024) ==
        doctest::Approx(50.0 * std::pow(std::log(1024.0), 2) / 1024.0));
}

TEST_CASE("coloring threshold") {
  // Pick C so that the threshold lands on an integer degree.
  const std::size_t q = 3;
  const std::size_t d = 70605;
  const double c = d / (9.0 * std::pow(std::log(3.0), 2));
  const AnalyticKp at = analytic_kp_coloring(q, d, c);
  CHECK(at.threshold_met);
  CHECK(at.sum_ok);
  CHECK(at.geometric_sum <= 1.0 / std::pow(d, 3.0));
  CHECK_FALSE(analytic_kp_coloring(q, static_cast<std::size_t>(0.9 * d), c).holds);
}

TEST_CASE("analytic KP parameter errors") {
  CHECK(error_code([] { analytic_kp_potts(1, 3, 1.0, 1.0); }) == "bad-parameter");
  CHECK(error_code([] { analytic_kp_hardcore(3, 0.0, 1.0); }) == "bad-parameter");
  CHECK(error_code([] { analytic_kp_coloring(2, 3, 1.0); }) == "bad-parameter");
  CHECK(std::isinf(geometric_tail(1.0)));
}

TEST_CASE("empirical KP on K33") {
  const Graph g = graphs::complete_bipartite(3, 3);
  HardCoreParams p;
  p.lambda = 10.0;
  const PolymerIndex even = hc_index(g, p, kEvenSide, 100.0);
  const KpReport r = kp_empirical(even, 1.0 / 9.0, 10);
  const double one = 10.0 / 1331.0 * std::exp(2.0);
  CHECK(r.max_per_vertex == doctest::Approx(one));
  CHECK(r.per_vertex_ok);
  // All three singletons are pairwise incompatible in G^2.
  CHECK(r.max_aggregate_ratio == doctest::Approx(3.0 * one));
  CHECK(r.max_aggregate_ratio == doctest::Approx(0.1665).epsilon(1e-3));
  CHECK(r.status == KpStatus::kVerifiedToCutoff);
  CHECK(r.polymers_checked == 3);

  p.lambda = 0.5;
  // w = 0.5 / 1.5^3 makes the aggregate sum about 3.3 > 1.
  const KpReport heavy = kp_empirical(hc_index(g, p, kEvenSide, 100.0), 1.0 / 9.0, 10);
  CHECK(heavy.status == KpStatus::kViolated);
  CHECK_FALSE(heavy.per_vertex_ok);

  // Heavy abstract weights violate the aggregate condition.
  const std::vector<std::vector<bool>> all(3, std::vector<bool>(3, true));
  const KpReport bad = kp_empirical(abstract_index(std::vector<double>(3, 0.0), all), 1.0, 5);
  CHECK(bad.status == KpStatus::kViolated);
  CHECK(bad.max_aggregate_ratio == doctest::Approx(3.0 * std::exp(2.0)));
}

TEST_CASE("combining KP evidence") {
  KpReport ok, bad, none;
  ok.status = KpStatus::kVerifiedToCutoff;
  bad.status = KpStatus::kViolated;
  const AnalyticKp holds = analytic_kp_potts(2, 3, 2.0, 10.0);
  const AnalyticKp fails = analytic_kp_potts(2, 3, 2.0, 1.0);
  CHECK(combine_kp(holds, {&bad}) == KpStatus::kAnalytic);
  CHECK(combine_kp(fails, {&ok}) == KpStatus::kVerifiedToCutoff);
  CHECK(combine_kp(fails, {&ok, &bad}) == KpStatus::kViolated);
  CHECK(combine_kp(std::nullopt, {&none}) == KpStatus::kUnchecked);
  CHECK(std::string(kp_status_name(KpStatus::kVerifiedToCutoff)) == "verified-to-cutoff");
}
