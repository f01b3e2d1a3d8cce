#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "polymer/oracle.hpp"
#include "polymer/sampler.hpp"
#include "test_support.hpp"

using namespace polymer;
using testing_support::error_code;

namespace {

double sampled_tv(const PolymerIndex& index, const std::vector<double>& log_w, const oracle::Incompatibility& inc,
                  double eps, std::size_t draws, std::uint64_t seed) {
  PolymerSampler sampler(index, eps);
  std::map<oracle::Atom, std::uint64_t> counts;
  for (std::size_t i = 0; i < draws; ++i) {
    Rng rng(seed, i);
    auto ids = sampler.draw(rng);
    CHECK(pairwise_compatible(index, ids));
    std::sort(ids.begin(), ids.end());
    ++counts[oracle::Atom(ids.begin(), ids.end())];
  }
  return oracle::total_variation(oracle::exact_nu(log_w, inc), counts);
}

}  // namespace

TEST_CASE("sampler matches nu on three incompatible polymers") {
  const oracle::Incompatibility all(3, std::vector<bool>(3, true));
  const std::vector<double> log_w{std::log(0.05), std::log(0.1), std::log(0.08)};
  const PolymerIndex index = abstract_index(log_w, all);
  const std::size_t draws = 20000;
  const double tv = sampled_tv(index, log_w, all, 0.02, draws, 7);
  CHECK(tv <= 0.02 + 3.0 * std::sqrt(4.0 / draws));
}

TEST_CASE("sampler on compatible polymers draws independently") {
  const oracle::Incompatibility none(2, std::vector<bool>(2, false));
  const std::vector<double> log_w{std::log(0.2), std::log(0.1)};
  const PolymerIndex index = abstract_index(log_w, none);
  const std::size_t draws = 20000;
  CHECK(sampled_tv(index, log_w, none, 0.02, draws, 8) <= 0.02 + 3.0 * std::sqrt(4.0 / draws));
}

TEST_CASE("sampler on a mixed index") {
  const oracle::Incompatibility inc{{false, true, false, false},
                                    {true, false, true, false},
                                    {false, true, false, true},
                                    {false, false, true, false}};
  const std::vector<double> log_w{std::log(0.1), std::log(0.05), std::log(0.12), std::log(0.07)};
  const PolymerIndex index = abstract_index(log_w, inc);
  const std::size_t draws = 20000;
  const std::size_t support = oracle::exact_nu(log_w, inc).size();
  CHECK(support == 8);
  CHECK(sampled_tv(index, log_w, inc, 0.02, draws, 9) <= 0.02 + 3.0 * std::sqrt(double(support) / draws));
}

TEST_CASE("sampler edge cases") {
  const PolymerIndex empty = abstract_index({}, {});
  Rng rng(1);
  CHECK(sample_config(empty, 0.1, rng).empty());
  CHECK(error_code([&] { PolymerSampler(empty, 0.0); }) == "bad-parameter");

  const oracle::Incompatibility all(3, std::vector<bool>(3, true));
  const PolymerIndex index = abstract_index(std::vector<double>(3, std::log(0.1)), all);
  PolymerSampler a(index, 0.05), b(index, 0.05);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng ra(3, i), rb(3, i);
    CHECK(a.draw(ra) == b.draw(rb));
  }
  CHECK(a.truncation() == doctest::Approx(std::log(2.0 * 3 / 0.05)));
  CHECK(a.step_truncation() == doctest::Approx(std::log(8.0 * 9 / 0.05)));
  CHECK(a.universe_size() == 3);
  CHECK(a.max_step_mass() <= 1.0);
}

TEST_CASE("sampler restricts to polymers with g below m") {
  const oracle::Incompatibility none(2, std::vector<bool>(2, false));
  const PolymerIndex index = abstract_index({std::log(0.1), std::log(0.1)}, none, {1.0, 50.0});
  PolymerSampler s(index, 0.1);
  CHECK(s.universe_size() == 1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(4, i);
    for (PolymerId id : s.draw(rng)) CHECK(index[id].g < s.truncation());
  }
}

TEST_CASE("sampler rejects weights outside the convergent regime") {
  // w = 2: the truncated series for log(1 + w) is far off and the step
  // probability exceeds one.
  const PolymerIndex index = abstract_index({std::log(2.0)}, {{true}});
  PolymerSampler s(index, 0.1);
  Rng rng(5);
  CHECK(error_code([&] { s.draw(rng); }) == "kp-failure");
}
