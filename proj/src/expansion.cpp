#include "polymer/expansion.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace polymer {

namespace {

bool less_ratio(std::int64_t a_num, std::int64_t a_den, const Ratio& b) {
  return a_num * b.den < b.num * a_den;
}

// Exhaustive min |dS|/|S| over nonempty S within `side` with |S| <= limit.
std::optional<Ratio> side_vertex_expansion(const Graph& g, const std::vector<Vertex>& side,
                                           std::size_t limit) {
  std::optional<Ratio> best;
  const std::size_t k = side.size();
  if (k > 30) throw Error("too-large", "side too large for exact vertex expansion");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > limit) continue;
    VertexSet s;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) s.insert(side[i]);
    auto bd = static_cast<std::int64_t>(vertex_boundary(g, s).size());
    auto sz = static_cast<std::int64_t>(size);
    if (!best || less_ratio(bd, sz, *best)) best = Ratio{bd, sz};
  }
  return best;
}

std::size_t sigma_limit(double sigma, std::size_t side) {
  // Largest integer s with s <= sigma*side, guarded against rounding just
  // below an integer.
  double x = sigma * static_cast<double>(side);
  return static_cast<std::size_t>(std::floor(x + 1e-9 * (1.0 + std::fabs(x))));
}

}  // namespace

std::size_t exact_expansion_cap() {
  return brute_cap(24);
}

ExpansionReport expansion_exact(const Graph& g) {
  const std::size_t n = g.n();
  if (n > exact_expansion_cap() || n > 62)
    throw Error("too-large", "exact expansion needs n <= " + std::to_string(exact_expansion_cap()));
  ExpansionReport r;
  r.method = ExpansionMethod::kExact;
  if (n >= 2) {
    // Gray-code walk over all subsets, tracking |S| and the cut size.
    std::vector<std::uint64_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
      nbr[u] |= std::uint64_t{1} << v;
      nbr[v] |= std::uint64_t{1} << u;
    }
    std::uint64_t s = 0;
    std::int64_t cut = 0;
    std::int64_t size = 0;
    Ratio best{std::numeric_limits<std::int64_t>::max() / 4, 1};
    bool found = false;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
      auto v = static_cast<unsigned>(std::countr_zero(i));
      std::uint64_t bit = std::uint64_t{1} << v;
      auto inside = static_cast<std::int64_t>(std::popcount(nbr[v] & s));
      auto deg = static_cast<std::int64_t>(g.degree(v));
      if (s & bit) {
        s &= ~bit;
        --size;
        cut -= deg - 2 * inside;
      } else {
        s |= bit;
        ++size;
        cut += deg - 2 * inside;
      }
      if (2 * static_cast<std::size_t>(size) <= n && (!found || less_ratio(cut, size, best))) {
        best = Ratio{cut, size};
        found = true;
      }
    }
    const std::int64_t d = std::gcd(best.num, best.den);
    r.edge_expansion = Ratio{best.num / d, best.den / d};
  }
  if (g.bipartite() && n <= kMaxVertices) {
    r.vertex_expansion = vertex_expansion_exact(g, 0.5);
    if (r.vertex_expansion) r.bipartite_alpha = r.vertex_expansion->value() - 1.0;
  }
  return r;
}

std::optional<Ratio> vertex_expansion_exact(const Graph& g, double sigma) {
  const auto& sides = g.sides();
  std::optional<Ratio> best;
  for (const auto* side : {&sides.odd, &sides.even}) {
    std::size_t limit = sigma_limit(sigma, side->size());
    if (limit == 0) continue;
    auto r = side_vertex_expansion(g, *side, limit);
    if (r && (!best || less_ratio(r->num, r->den, *best))) best = r;
  }
  return best;
}

bool is_sigma_rho_expander(const Graph& g, double sigma, double rho) {
  auto r = vertex_expansion_exact(g, sigma);
  return !r || r->value() >= rho;
}

std::vector<double> adjacency_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver", "symmetric eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ExpansionReport expansion_spectral(const Graph& g, double eps) {
  if (!g.is_regular()) throw Error("non-regular", "spectral bounds need a regular graph");
  if (g.n() < 2) throw Error("too-small", "spectral bounds need at least two vertices");
  ExpansionReport r;
  r.method = ExpansionMethod::kSpectral;
  auto spec = adjacency_spectrum(g);
  const double delta = static_cast<double>(g.max_degree());
  const double l2 = spec[spec.size() - 2];
  const double ln = spec.front();
  r.lambda2 = l2;
  r.lambda_min = ln;
  r.lambda = std::max(std::fabs(l2), std::fabs(ln));
  r.cheeger_lb = (delta - l2) / 2.0;
  r.friedman_bound = 2.0 * std::sqrt(std::max(delta - 1.0, 0.0)) + eps;
  r.friedman_ok = *r.lambda <= r.friedman_bound;
  if (g.bipartite() && g.is_connected() && delta > 0)
    r.tanner_alpha = (delta * delta - l2 * l2) / (delta * delta + l2 * l2);
  return r;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double bassalygo_threshold(double sigma, double rho) {
  if (!(sigma > 0.0 && sigma < 1.0) || !(rho > 1.0) || !(sigma * rho < 1.0))
    throw Error("infeasible", "need 0 < sigma < 1, rho > 1 and sigma*rho < 1");
  double num = binary_entropy(sigma) + binary_entropy(sigma * rho);
  double den = binary_entropy(sigma) - sigma * rho * binary_entropy(1.0 / rho);
  if (!(den > 0.0)) throw Error("infeasible", "non-positive denominator in Bassalygo threshold");
  return num / den;
}

std::pair<double, double> random_regular_expansion_params(double delta) {
  double l = std::log(delta);
  return {4.0 * l / delta, delta / (4.0 * l) - 0.5};
}

}  // namespace polymer
