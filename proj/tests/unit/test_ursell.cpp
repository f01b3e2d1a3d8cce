#include "doctest.h"
#include "polymer/rng.hpp"
#include "polymer/ursell.hpp"
#include "test_support.hpp"

using namespace polymer;
using testing_support::error_code;
using testing_support::ursell_by_edge_subsets;

TEST_CASE("Ursell spot values") {
  CHECK(ursell_phi(SmallGraph::complete(2)) == Rational(-1, 2));
  CHECK(ursell_phi(SmallGraph::path(3)) == Rational(1, 6));
  CHECK(ursell_phi(SmallGraph::complete(3)) == Rational(1, 3));
  CHECK(ursell_sum(SmallGraph::complete(1)) == 1);
  // U(K_n) = (-1)^{n-1} (n-1)!.
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::int64_t want = (n % 2 == 1 ? 1 : -1) * factorial(n - 1);
    CHECK(ursell_sum(SmallGraph::complete(n)) == want);
  }
  // Trees: U = (-1)^{n-1}.
  for (std::size_t n = 1; n <= 15; ++n) CHECK(ursell_sum(SmallGraph::path(n)) == (n % 2 == 1 ? 1 : -1));
}

TEST_CASE("Ursell sum matches edge-subset enumeration") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    SmallGraph h(n);
    const double p = 0.3 + 0.6 * rng.uniform();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (rng.bernoulli(p)) h.add_edge(a, b);
    if (!h.connected() || h.edge_count() > 18) continue;
    CHECK(ursell_sum(h) == ursell_by_edge_subsets(h));
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("Ursell errors") {
  SmallGraph two(2);
  CHECK(error_code([&] { ursell_sum(two); }) == "disconnected");
  CHECK(error_code([] { ursell_sum(SmallGraph::complete(kMaxUrsellNodes + 1)); }) == "too-large");
}
