#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "polymer/clusters.hpp"
#include "polymer/coloring.hpp"
#include "polymer/connected_sets.hpp"
#include "polymer/hardcore.hpp"
#include "polymer/oracle.hpp"
#include "test_support.hpp"

using namespace polymer;
using testing_support::error_code;

TEST_CASE("patterns") {
  CHECK(enumerate_patterns(3).size() == 6);
  CHECK(enumerate_patterns(4).size() == 14);
  for (const Pattern& p : enumerate_patterns(4)) {
    CHECK((p.a & p.b) == 0);
    CHECK((p.a | p.b) == 0xFU);
    CHECK(p.a_size() + p.b_size() == 4);
  }
}

TEST_CASE("single-vertex coloring weight") {
  // A = {0}, B = {1, 2}: the vertex takes 1 or 2 and forces its neighbors.
  for (std::size_t d : {2, 3, 4}) {
    const Graph g = graphs::complete_bipartite(d, d);
    const Pattern pat{1U, 6U};
    CHECK(chi_hat_count(g, VertexSet{0}, pat, 3) == 2);
    CHECK(std::exp(coloring_log_weight(g, VertexSet{0}, pat, 3)) == doctest::Approx(std::pow(2.0, 1.0 - d)));
  }
  // |B| = 1: the vertex must take the color its neighbors are forced to.
  const Graph g = graphs::complete_bipartite(3, 3);
  CHECK(chi_hat_count(g, VertexSet{0}, Pattern{6U, 1U}, 3) == 0);
  CHECK(std::isinf(coloring_log_weight(g, VertexSet{0}, Pattern{6U, 1U}, 3)));
  ColoringParams p;
  p.override_caps = true;
  p.size_cap = 1;
  // Odd singletons are dropped; even singletons keep weight 2^{-2}.
  const PolymerIndex index = coloring_index(g, p, Pattern{6U, 1U}, 10.0);
  CHECK(index.size() == 3);
  for (const Polymer& poly : index.polymers()) CHECK(g.side_of(poly.set.min()) == kEvenSide);
}

TEST_CASE("extension identity by double enumeration") {
  Rng rng(77);
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 20; ++seed) {
    const Graph g = testing_support::random_bipartite(5, 5, 0.4, seed);
    VertexSet s;
    const Vertex root = static_cast<Vertex>(rng.below(g.n()));
    s.insert(root);
    if (rng.bernoulli(0.5)) {
      // Grow within G^3 distance.
      for (Vertex v = 0; v < g.n(); ++v)
        if (v != root && within_distance(g, VertexSet{root}, VertexSet{v}, 3) && rng.bernoulli(0.3)) s.insert(v);
    }
    const auto pats = enumerate_patterns(3);
    const Pattern pat = pats[rng.below(pats.size())];
    VertexSet closure = s;
    s.for_each([&](Vertex v) {
      for (Vertex u : g.neighbors(v)) closure.insert(u);
    });
    const std::uint64_t hat = chi_hat_count(g, s, pat, 3);
    CHECK(hat == oracle::chi_hat_count(g, s, pat.a, pat.b, 3));
    // chi / (|A|^m |B|^m) = chi_hat / (|A|^{|S+ n O|} |B|^{|S+ n E|}).
    double log_rhs = std::log(static_cast<double>(oracle::chi_count(g, s, pat.a, pat.b, 3)));
    for (Vertex v = 0; v < g.n(); ++v)
      log_rhs -= std::log(static_cast<double>(g.side_of(v) == kOddSide ? pat.a_size() : pat.b_size()));
    if (hat == 0) {
      CHECK(oracle::chi_count(g, s, pat.a, pat.b, 3) == 0);
    } else {
      CHECK(coloring_log_weight(g, s, pat, 3) == doctest::Approx(log_rhs).epsilon(1e-12));
    }
    ++checked;
  }
}

TEST_CASE("weights factorise over G^3 components") {
  const Graph c12 = graphs::cycle(12);
  const Pattern pat{1U, 6U};
  const double joint = coloring_log_weight(c12, VertexSet{0, 6}, pat, 3);
  CHECK(joint == doctest::Approx(coloring_log_weight(c12, VertexSet{0}, pat, 3) +
                                 coloring_log_weight(c12, VertexSet{6}, pat, 3)));
  Rng rng(5);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Graph g = testing_support::random_bipartite(7, 7, 0.15, seed);
    VertexSet s;
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng.bernoulli(0.2)) s.insert(v);
    if (s.empty()) continue;
    double parts = 0.0;
    for (const VertexSet& comp : power_components(g, s, 3)) parts += coloring_log_weight(g, comp, pat, 3);
    const double whole = coloring_log_weight(g, s, pat, 3);
    if (std::isinf(whole)) {
      CHECK(std::isinf(parts));
    } else {
      CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
    }
  }
}

TEST_CASE("pattern symmetry under color relabeling") {
  const Graph g = graphs::cycle(8);
  ColoringParams p;
  p.override_caps = true;
  p.size_cap = 2;
  std::vector<std::uint32_t> perm{0, 1, 2};
  const Pattern base{1U, 6U};
  const double xi = xi_exact(coloring_index(g, p, base, 10.0));
  do {
    auto map = [&](std::uint32_t mask) {
      std::uint32_t out = 0;
      for (std::uint32_t c = 0; c < 3; ++c)
        if ((mask >> c) & 1U) out |= 1U << perm[c];
      return out;
    };
    CHECK(xi_exact(coloring_index(g, p, Pattern{map(base.a), map(base.b)}, 10.0)) == doctest::Approx(xi));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("coloring counts") {
  const Graph c4 = graphs::cycle(4);
  CHECK(coloring_brute_count(c4, 3) == 18);
  ColoringParams p;
  const ApproxResult r = coloring_count(c4, p, 0.1);
  CHECK(r.method == Method::kBrute);
  CHECK(r.log_value == doctest::Approx(std::log(18.0)));
  CHECK(coloring_uses_brute(4, 3, 0.8));
  CHECK_FALSE(coloring_uses_brute(4, 3, 0.9));

  // K2 with no polymers: the pattern mixture sums |A||B| = 12 against Z = 6.
  const Graph k2 = graphs::complete(2);
  ColoringParams none;
  none.override_caps = true;
  none.size_cap = 0;
  const ApproxResult mix = coloring_count(k2, none, 0.95);
  CHECK(mix.method == Method::kPolymer);
  CHECK(mix.log_value == doctest::Approx(std::log(12.0)));
  CHECK(*oracle::exact_colorings(k2, 3).value == 6);
  CHECK(error_code([] { coloring_count(graphs::complete(3), ColoringParams{}, 0.5); }) != "");
}

TEST_CASE("coloring sampler emits proper colorings") {
  const Graph c6 = graphs::cycle(6);
  ColoringParams p;
  p.override_caps = true;
  p.size_cap = 2;
  ColoringSampler s(c6, p, 0.9);
  CHECK(s.method() == Method::kPolymer);
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(6, i);
    const auto c = s.draw(rng);
    CHECK(is_proper(c6, c));
    // Disagreement set equals the union of the drawn polymers.
    const Pattern pat = s.patterns()[s.last_pattern()];
    VertexSet disagree, poly;
    for (Vertex v = 0; v < c6.n(); ++v)
      if (!((c6.side_of(v) == kOddSide ? pat.a : pat.b) >> c[v] & 1U)) disagree.insert(v);
    for (PolymerId id : s.last_polymers()) s.index(s.last_pattern())[id].set.for_each([&](Vertex v) { poly.insert(v); });
    CHECK(disagree == poly);
  }
  ColoringSampler brute(c6, p, 0.01);
  CHECK(brute.method() == Method::kBrute);
  Rng rng(1);
  CHECK(is_proper(c6, brute.draw(rng)));
  CHECK_FALSE(is_proper(c6, {0, 0, 1, 2, 1, 2}));
}
