#include <cmath>
#include <numeric>

#include "doctest.h"
#include "polymer/oracle.hpp"
#include "test_support.hpp"

using namespace polymer;
using oracle::Rational;
using testing_support::error_code;

TEST_CASE("hard-core oracle on K33") {
  const Graph g = graphs::complete_bipartite(3, 3);
  const auto counts = oracle::hardcore_polynomial(g);
  REQUIRE(counts.size() >= 4);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 6);
  CHECK(counts[2] == 6);
  CHECK(counts[3] == 2);
  const oracle::ExactValue z = oracle::exact_hardcore(g, Rational(10));
  CHECK(*z.value == 2661);
  CHECK(z.count == 15);
  CHECK(z.log_value == doctest::Approx(std::log(2661.0)));
  CHECK(oracle::exact_hardcore(g, 10.0).log_value == doctest::Approx(std::log(2661.0)));
}

TEST_CASE("Potts oracle") {
  const LaurentPoly k3 = oracle::potts_polynomial(graphs::complete(3), 2);
  CHECK(k3 == LaurentPoly::monomial(3, 2) + LaurentPoly::monomial(1, 6));
  CHECK(k3.str() == "2x^3 + 6x^1");
  // Threads split work by the color of the first vertex.
  const Graph p = graphs::petersen();
  CHECK(oracle::potts_polynomial(p, 3, 1) == oracle::potts_polynomial(p, 3, 3));
  const double beta = 0.7;
  const oracle::ExactValue z = oracle::exact_potts(graphs::complete(3), 2, beta);
  CHECK(z.log_value == doctest::Approx(std::log(2 * std::exp(3 * beta) + 6 * std::exp(beta))));
  // Coefficients sum to q^n.
  CHECK(oracle::potts_polynomial(p, 2).eval(1) == 1024);
}

TEST_CASE("coloring oracle") {
  CHECK(*oracle::exact_colorings(graphs::cycle(4), 3).value == 18);
  CHECK(*oracle::exact_colorings(graphs::complete(3), 3).value == 6);
  CHECK(*oracle::exact_colorings(graphs::complete_bipartite(3, 3), 3, 2).value == 42);
  CHECK(error_code([] { oracle::exact_colorings(graphs::cycle(4), 0); }) == "bad-q");
}

TEST_CASE("oracle caps") {
  CHECK(error_code([] { oracle::exact_colorings(graphs::cycle(30), 3); }) == "oracle-cap");
  const std::vector<double> many(40, 0.1);
  const oracle::Incompatibility inc(40, std::vector<bool>(40, false));
  CHECK(error_code([&] { oracle::exact_xi(many, inc); }) == "oracle-cap");
}

TEST_CASE("exact Xi and nu") {
  const oracle::Incompatibility all(3, std::vector<bool>(3, true));
  std::uint64_t count = 0;
  CHECK(oracle::exact_xi(std::vector<Rational>(3, Rational(10, 1331)), all, &count) == Rational(1361, 1331));
  CHECK(count == 4);
  const oracle::Incompatibility none(3, std::vector<bool>(3, false));
  CHECK(oracle::exact_xi(std::vector<Rational>{1, 2, 3}, none) == 24);

  const std::vector<double> log_w{std::log(0.2), std::log(0.5), std::log(0.1)};
  const auto nu = oracle::exact_nu(log_w, none);
  CHECK(nu.size() == 8);
  double total = 0.0;
  for (const auto& [atom, p] : nu) total += p;
  CHECK(total == doctest::Approx(1.0));
  CHECK(nu.at({}) == doctest::Approx(1.0 / (1.2 * 1.5 * 1.1)));
  CHECK(nu.at({0, 2}) == doctest::Approx(0.02 / (1.2 * 1.5 * 1.1)));
}

TEST_CASE("measures") {
  const Graph k33 = graphs::complete_bipartite(3, 3);
  const auto mu = oracle::hardcore_measure(k33, 10.0);
  CHECK(mu.size() == 15);
  CHECK(mu.at({}) == doctest::Approx(1.0 / 2661.0));
  CHECK(mu.at({0, 1, 2}) == doctest::Approx(1000.0 / 2661.0));

  const auto col = oracle::coloring_measure(graphs::cycle(4), 3);
  CHECK(col.size() == 18);
  for (const auto& [atom, p] : col) CHECK(p == doctest::Approx(1.0 / 18.0));

  const auto potts = oracle::potts_measure(graphs::complete(3), 2, 1.0);
  CHECK(potts.size() == 8);
  const double z = 2 * std::exp(3.0) + 6 * std::exp(1.0);
  CHECK(potts.at({0, 0, 0}) == doctest::Approx(std::exp(3.0) / z));

  std::map<oracle::Atom, std::uint64_t> counts{{{0}, 3}, {{1}, 1}};
  const oracle::Distribution half{{{0}, 0.5}, {{1}, 0.5}};
  CHECK(oracle::total_variation(half, counts) == doctest::Approx(0.25));
  counts[{7}] = 4;
  CHECK(oracle::total_variation(half, counts) == doctest::Approx(0.5));
}

TEST_CASE("sparse sums degenerate to Z") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = testing_support::random_bipartite(4, 5, 0.5, seed);
    const auto s = oracle::hardcore_sparse_sums(g, Rational(3), g.n(), g.n());
    CHECK(s.both == *oracle::exact_hardcore(g, Rational(3)).value);
    CHECK(s.neither == 0);
  }
  // Every q-coloring is sparse for every ground color once the cap is n.
  const Graph c5 = graphs::cycle(5);
  CHECK(oracle::potts_sparse_polynomial(c5, 3, 5) == LaurentPoly(3) * oracle::potts_polynomial(c5, 3));
}

TEST_CASE("chi factorises through the closure") {
  // Agreeing vertices outside S+ are free within their side's colors.
  Rng rng(17);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Graph g = testing_support::random_bipartite(4, 4, 0.45, seed);
    for (std::uint32_t a : {1U, 3U, 5U}) {
      const std::uint32_t b = 7U & ~a;
      VertexSet s;
      for (Vertex v = 0; v < g.n(); ++v)
        if (rng.bernoulli(0.3)) s.insert(v);
      VertexSet closure = s;
      s.for_each([&](Vertex v) {
        for (Vertex u : g.neighbors(v)) closure.insert(u);
      });
      std::uint64_t outside = 1;
      for (Vertex v = 0; v < g.n(); ++v)
        if (!closure.contains(v)) outside *= std::popcount(g.side_of(v) == 0 ? a : b);
      CHECK(oracle::chi_count(g, s, a, b, 3) == oracle::chi_hat_count(g, s, a, b, 3) * outside);
      ++checked;
    }
  }
  CHECK(checked == 24);
}
