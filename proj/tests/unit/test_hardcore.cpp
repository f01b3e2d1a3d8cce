#include <cmath>
#include <map>

#include "doctest.h"
#include "polymer/clusters.hpp"
#include "polymer/hardcore.hpp"
#include "polymer/oracle.hpp"
#include "test_support.hpp"

using namespace polymer;
using oracle::Rational;
using testing_support::error_code;

namespace {

Rational power(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// (1 + lambda)^{|ground|} Xi^{side} with exact weights.
Rational side_term(const Graph& g, const Rational& lambda, int side) {
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
}

Rational z_tilde(const Graph& g, const Rational& lambda) {
  return side_term(g, lambda, kEvenSide) + side_term(g, lambda, kOddSide);
}

}  // namespace

TEST_CASE("hard-core weights and caps") {
  const Graph k33 = graphs::complete_bipartite(3, 3);
  CHECK(std::exp(hc_log_weight(k33, VertexSet{3}, 1.0)) == doctest::Approx(1.0 / 8.0));
  CHECK(std::exp(hc_log_weight(k33, VertexSet{3}, 10.0)) == doctest::Approx(10.0 / 1331.0));
  CHECK(hc_small_cap(k33, kEvenSide) == 1);
  CHECK(hc_tiny_cap(k33, kEvenSide) <= hc_small_cap(k33, kEvenSide));
  HardCoreParams p;
  p.lambda = 10.0;
  CHECK(hc_decay_slope(k33, p) == 1.0);
  p.variant = HardCoreVariant::kRandomRegular;
  CHECK(hc_decay_slope(k33, p) == doctest::Approx(3.0 * std::log(11.0) / (10.0 * std::log(3.0))));
  CHECK(error_code([] { hc_index(graphs::complete(3), HardCoreParams{}, kEvenSide, 5.0); }) == "non-bipartite");
}

TEST_CASE("hard-core correction on K33") {
  const Graph k33 = graphs::complete_bipartite(3, 3);
  CHECK(z_tilde(k33, 10) == 2722);
  CHECK(*oracle::exact_hardcore(k33, Rational(10)).value == 2661);
  CHECK(z_tilde(k33, 1) == 22);
  const auto sums = oracle::hardcore_sparse_sums(k33, Rational(10), 1, 1);
  CHECK(sums.both == 61);
  CHECK(sums.neither == 0);
}

TEST_CASE("hard-core correction identity on random bipartite graphs") {
  // Z~ - Z = (sparse on both sides) - (sparse on neither side).
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t a = 3 + seed % 4;
    const Graph g = testing_support::random_bipartite(a, 12 - a, 0.35, seed);
    for (const Rational lambda : {Rational(1), Rational(10)}) {
      const Rational z = *oracle::exact_hardcore(g, lambda).value;
      const auto sums = oracle::hardcore_sparse_sums(g, lambda, hc_small_cap(g, kOddSide), hc_small_cap(g, kEvenSide));
      CHECK(z_tilde(g, lambda) - z == sums.both - sums.neither);
    }
  }
}

TEST_CASE("hard-core side symmetry") {
  // On K_{d,d} both sides see the same polymers.
  for (std::size_t d : {2, 3, 4}) {
    const Graph g = graphs::complete_bipartite(d, d);
    CHECK(side_term(g, 7, kEvenSide) == side_term(g, 7, kOddSide));
  }
}

TEST_CASE("hard-core brute branch") {
  const Graph g = testing_support::random_bipartite(5, 6, 0.4, 42);
  CHECK(hc_uses_brute(11, 1e-4));
  CHECK_FALSE(hc_uses_brute(11, 1e-3));
  for (double lambda : {0.5, 3.0, 50.0}) {
    HardCoreParams p;
    p.lambda = lambda;
    const ApproxResult r = hc_count(g, p, 1e-4);
    CHECK(r.method == Method::kBrute);
    CHECK(r.log_value == doctest::Approx(oracle::exact_hardcore(g, lambda).log_value).epsilon(1e-14));
  }
  const auto counts = hc_brute_counts(graphs::complete_bipartite(3, 3));
  CHECK(counts == std::vector<std::uint64_t>{1, 6, 6, 2});
}

TEST_CASE("hard-core polymer branch") {
  const Graph k33 = graphs::complete_bipartite(3, 3);
  HardCoreParams p;
  p.lambda = 10.0;
  HardCoreBranches b;
  const ApproxResult r = hc_count(k33, p, 0.1, {}, &b);
  CHECK(r.method == Method::kPolymer);
  CHECK(r.log_value == doctest::Approx(std::log(2722.0)).epsilon(1e-8));
  CHECK(b.log_even_term == doctest::Approx(b.log_odd_term));
  CHECK(r.kp_status == KpStatus::kVerifiedToCutoff);
  CHECK(r.empirical.size() == 2);
  CHECK(std::abs(r.log_value - std::log(2661.0)) <= 0.1);
}

TEST_CASE("hard-core sampler") {
  const Graph k33 = graphs::complete_bipartite(3, 3);
  HardCoreParams p;
  p.lambda = 10.0;
  HardCoreSampler s(k33, p, 0.05);
  CHECK(s.method() == Method::kPolymer);
  CHECK(s.even_probability() == doctest::Approx(0.5));
  std::map<oracle::Atom, std::uint64_t> counts;
  const std::size_t draws = 10000;
  for (std::size_t i = 0; i < draws; ++i) {
    Rng rng(5, i);
    const VertexSet set = s.draw(rng);
    CHECK(is_independent(k33, set));
    oracle::Atom atom;
    set.for_each([&](Vertex v) { atom.push_back(v); });
    ++counts[atom];
  }
  const auto mu = oracle::hardcore_measure(k33, 10.0);
  CHECK(oracle::total_variation(mu, counts) <= 0.05 + 3.0 * std::sqrt(15.0 / draws));

  HardCoreSampler brute(k33, p, 1e-3);
  CHECK(brute.method() == Method::kBrute);
  Rng rng(9);
  CHECK(is_independent(k33, brute.draw(rng)));
  CHECK_FALSE(is_independent(k33, VertexSet{0, 3}));
}
