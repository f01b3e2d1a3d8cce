#include "polymer/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

namespace polymer::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> nb(g.n(), 0);
  for (const auto& [u, v] : g.edges()) {
    nb[u] |= std::uint64_t{1} << v;
    nb[v] |= std::uint64_t{1} << u;
  }
  return nb;
}

void check_n(const Graph& g, std::size_t cap, const char* what) {
  if (g.n() > brute_cap(cap) || g.n() > 63)
    throw CapExceeded(std::string(what) + " on " + std::to_string(g.n()) + " vertices");
}

void check_q(std::size_t q) {
  if (q < 1 || q > 32) throw Error("bad-q", "q must lie in [1, 32]");
}

// Visits every independent set as a bitmask: vertex i is either skipped or,
// when no chosen neighbour blocks it, taken.
template <class F>
void for_each_independent(const std::vector<std::uint64_t>& nb, F&& visit) {
  const std::size_t n = nb.size();
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t chosen,
                                                                           std::uint64_t blocked) {
    if (i == n) {
      visit(chosen);
      return;
    }
    rec(i + 1, chosen, blocked);
    if (!((blocked >> i) & 1U)) rec(i + 1, chosen | (std::uint64_t{1} << i), blocked | nb[i]);
  };
  rec(0, 0, 0);
}

// Visits all q^n color vectors whose first entry is `first`.
template <class F>
void for_each_assignment(std::size_t n, std::size_t q, std::uint32_t first, F&& visit) {
  std::vector<std::uint32_t> c(n, 0);
  if (n == 0) {
    visit(c);
    return;
  }
  c[0] = first;
  while (true) {
    visit(c);
    std::size_t i = 1;
    while (i < n && ++c[i] == q) c[i++] = 0;
    if (i == n) return;
  }
}

// Splits the q^n assignments by the color of vertex 0 across threads and
// merges per-color results in color order.
template <class Acc, class F>
std::vector<Acc> by_first_color(std::size_t n, std::size_t q, std::size_t threads, F&& body) {
  const std::size_t firsts = n == 0 ? 1 : q;
  std::vector<Acc> out(firsts);
  auto work = [&](std::size_t t) {
    for (std::size_t c = t; c < firsts; c += threads) {
      for_each_assignment(n, q, static_cast<std::uint32_t>(c),
                          [&](const std::vector<std::uint32_t>& col) { body(out[c], col); });
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, firsts));
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::size_t mono_count(const Graph& g, const std::vector<std::uint32_t>& c) {
  std::size_t m = 0;
  for (const auto& [u, v] : g.edges()) m += c[u] == c[v];
  return m;
}

double log_rational(const Rational& r) {
  if (r <= 0) return r == 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  auto log_int = [](const BigInt& x) {
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 60) return std::log(x.convert_to<double>());
    const std::size_t shift = bits - 60;
    return std::log(BigInt(x >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
  };
  return log_int(num) - log_int(den);
}

double log_sum(const std::vector<double>& terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (double t : terms) top = std::max(top, t);
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

Distribution normalize(std::vector<std::pair<Atom, double>> log_atoms) {
  std::vector<double> logs;
  logs.reserve(log_atoms.size());
  for (const auto& [a, l] : log_atoms) logs.push_back(l);
  const double z = log_sum(logs);
  Distribution d;
  for (auto& [a, l] : log_atoms) d.emplace(std::move(a), std::exp(l - z));
  return d;
}

Atom mask_atom(std::uint64_t mask) {
  Atom a;
  for (std::uint32_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) a.push_back(i);
  return a;
}

// Sizes of the connected components of `set` in the graph given by `nb`.
std::vector<std::size_t> component_sizes(std::uint64_t set, const std::vector<std::uint64_t>& nb) {
  std::vector<std::size_t> sizes;
  while (set) {
    std::uint64_t comp = set & (~set + 1);
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= nb[static_cast<std::size_t>(std::countr_zero(f))];
      next &= set & ~comp;
      comp |= next;
      frontier = next;
    }
    sizes.push_back(static_cast<std::size_t>(std::popcount(comp)));
    set &= ~comp;
  }
  return sizes;
}

bool components_within(std::uint64_t set, const std::vector<std::uint64_t>& nb, std::size_t cap) {
  for (std::size_t s : component_sizes(set, nb))
    if (s > cap) return false;
  return true;
}

std::uint32_t pattern_set(const Graph& g, Vertex v, std::uint32_t a, std::uint32_t b) {
  return g.side_of(v) == 0 ? a : b;
}

}  // namespace

std::vector<BigInt> hardcore_polynomial(const Graph& g) {
  check_n(g, kHardcoreCap, "hard-core enumeration");
  std::vector<std::uint64_t> counts(g.n() + 1, 0);
  for_each_independent(neighbor_masks(g), [&](std::uint64_t s) { ++counts[static_cast<std::size_t>(std::popcount(s))]; });
  return {counts.begin(), counts.end()};
}

ExactValue exact_hardcore(const Graph& g, const Rational& lambda) {
  const auto start = Clock::now();
  const auto counts = hardcore_polynomial(g);
  ExactValue r;
  Rational z = 0;
  Rational power = 1;
  for (const auto& c : counts) {
    z += Rational(c) * power;
    power *= lambda;
    r.count += c.convert_to<std::uint64_t>();
  }
  r.value = z;
  r.log_value = log_rational(z);
  r.seconds = elapsed(start);
  return r;
}

ExactValue exact_hardcore(const Graph& g, double lambda) {
  const auto start = Clock::now();
  const auto counts = hardcore_polynomial(g);
  ExactValue r;
  std::vector<double> terms;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    terms.push_back(std::log(counts[k].convert_to<double>()) + static_cast<double>(k) * std::log(lambda));
    r.count += counts[k].convert_to<std::uint64_t>();
  }
  r.log_value = log_sum(terms);
  r.seconds = elapsed(start);
  return r;
}

LaurentPoly potts_polynomial(const Graph& g, std::size_t q, std::size_t threads) {
  check_n(g, kColoringCap, "Potts enumeration");
  check_q(q);
  const std::size_t e = g.edge_count();
  auto parts = by_first_color<std::vector<std::uint64_t>>(
      g.n(), q, threads, [&](std::vector<std::uint64_t>& hist, const std::vector<std::uint32_t>& c) {
        if (hist.empty()) hist.assign(e + 1, 0);
        ++hist[mono_count(g, c)];
      });
  std::vector<LaurentPoly::Coeff> coeffs(e + 1);
  for (const auto& hist : parts)
    for (std::size_t k = 0; k < hist.size(); ++k) coeffs[k] += hist[k];
  return LaurentPoly::from_coeffs(0, std::move(coeffs));
}

ExactValue exact_potts(const Graph& g, std::size_t q, double beta, std::size_t threads) {
  const auto start = Clock::now();
  const LaurentPoly z = potts_polynomial(g, q, threads);
  ExactValue r;
  r.log_value = z.log_eval_exp(beta);
  r.count = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), static_cast<double>(g.n())));
  r.seconds = elapsed(start);
  return r;
}

ExactValue exact_colorings(const Graph& g, std::size_t q, std::size_t threads) {
  const auto start = Clock::now();
  check_n(g, kColoringCap, "coloring enumeration");
  check_q(q);
  auto parts = by_first_color<std::uint64_t>(g.n(), q, threads, [&](std::uint64_t& n, const std::vector<std::uint32_t>& c) {
    n += mono_count(g, c) == 0;
  });
  std::uint64_t proper = 0;
  for (auto p : parts) proper += p;
  ExactValue r;
  r.value = Rational(proper);
  r.log_value = proper == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(proper));
  r.count = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), static_cast<double>(g.n())));
  r.seconds = elapsed(start);
  return r;
}

Distribution exact_nu(const std::vector<double>& log_weights, const Incompatibility& incompatible) {
  const std::size_t k = log_weights.size();
  if (k > brute_cap(kXiCap)) throw CapExceeded("nu over " + std::to_string(k) + " polymers");
  std::vector<std::pair<Atom, double>> atoms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    bool ok = true;
    double lw = 0.0;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!((mask >> i) & 1U)) continue;
      lw += log_weights[i];
      for (std::size_t j = i + 1; j < k; ++j)
        if (((mask >> j) & 1U) && incompatible[i][j]) ok = false;
    }
    if (ok) atoms.emplace_back(mask_atom(mask), lw);
  }
  return normalize(std::move(atoms));
}

Distribution hardcore_measure(const Graph& g, double lambda) {
  check_n(g, kMeasureCap, "hard-core measure");
  std::vector<std::pair<Atom, double>> atoms;
  const double ll = std::log(lambda);
  for_each_independent(neighbor_masks(g), [&](std::uint64_t s) {
    atoms.emplace_back(mask_atom(s), static_cast<double>(std::popcount(s)) * ll);
  });
  return normalize(std::move(atoms));
}

Distribution potts_measure(const Graph& g, std::size_t q, double beta) {
  check_n(g, kMeasureCap, "Potts measure");
  check_q(q);
  if (std::pow(static_cast<double>(q), static_cast<double>(g.n())) > 1 << 24) throw CapExceeded("Potts measure support");
  std::vector<std::pair<Atom, double>> atoms;
  for (std::uint32_t first = 0; first < (g.n() == 0 ? 1 : q); ++first)
    for_each_assignment(g.n(), q, first, [&](const std::vector<std::uint32_t>& c) {
      atoms.emplace_back(c, beta * static_cast<double>(mono_count(g, c)));
    });
  return normalize(std::move(atoms));
}

Distribution coloring_measure(const Graph& g, std::size_t q) {
  check_n(g, kMeasureCap, "coloring measure");
  check_q(q);
  if (std::pow(static_cast<double>(q), static_cast<double>(g.n())) > 1 << 26) throw CapExceeded("coloring measure support");
  std::vector<std::pair<Atom, double>> atoms;
  for (std::uint32_t first = 0; first < (g.n() == 0 ? 1 : q); ++first)
    for_each_assignment(g.n(), q, first, [&](const std::vector<std::uint32_t>& c) {
      if (mono_count(g, c) == 0) atoms.emplace_back(c, 0.0);
    });
  return normalize(std::move(atoms));
}

double total_variation(const Distribution& exact, const std::map<Atom, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [a, c] : counts) total += c;
  double tv = 0.0;
  for (const auto& [a, p] : exact) {
    auto it = counts.find(a);
    const double emp = it == counts.end() || total == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    tv += std::abs(p - emp);
  }
  for (const auto& [a, c] : counts)
    if (!exact.count(a)) tv += static_cast<double>(c) / static_cast<double>(total);
  return tv / 2.0;
}

HardcoreSparseSums hardcore_sparse_sums(const Graph& g, const Rational& lambda, std::size_t odd_cap,
                                        std::size_t even_cap) {
  check_n(g, kHardcoreCap, "sparse-set enumeration");
  if (!g.bipartite()) throw Error("non-bipartite", "sparse sums need a bipartition");
  // Adjacency of G^2.
  const auto nb = neighbor_masks(g);
  std::vector<std::uint64_t> nb2(g.n(), 0);
  for (std::size_t v = 0; v < g.n(); ++v) {
    std::uint64_t r = nb[v];
    for (std::uint64_t f = nb[v]; f; f &= f - 1) r |= nb[static_cast<std::size_t>(std::countr_zero(f))];
    nb2[v] = r & ~(std::uint64_t{1} << v);
  }
  std::uint64_t odd = 0;
  for (Vertex v : g.sides().odd) odd |= std::uint64_t{1} << v;
  const std::uint64_t even = ~odd;
  std::vector<std::uint64_t> both(g.n() + 1, 0), neither(g.n() + 1, 0);
  for_each_independent(nb, [&](std::uint64_t s) {
    const bool so = components_within(s & odd, nb2, odd_cap);
    const bool se = components_within(s & even, nb2, even_cap);
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (so && se) ++both[k];
    if (!so && !se) ++neither[k];
  });
  HardcoreSparseSums r;
  Rational power = 1;
  for (std::size_t k = 0; k <= g.n(); ++k) {
    r.both += Rational(both[k]) * power;
    r.neither += Rational(neither[k]) * power;
    power *= lambda;
  }
  return r;
}

LaurentPoly potts_sparse_polynomial(const Graph& g, std::size_t q, std::size_t cap) {
  check_n(g, kColoringCap, "Potts sparse enumeration");
  check_q(q);
  const auto nb = neighbor_masks(g);
  std::vector<LaurentPoly::Coeff> coeffs(g.edge_count() + 1);
  for (std::uint32_t first = 0; first < (g.n() == 0 ? 1 : q); ++first)
    for_each_assignment(g.n(), q, first, [&](const std::vector<std::uint32_t>& c) {
      const std::size_t mono = mono_count(g, c);
      for (std::uint32_t ground = 0; ground < q; ++ground) {
        std::uint64_t off = 0;
        for (std::size_t v = 0; v < g.n(); ++v)
          if (c[v] != ground) off |= std::uint64_t{1} << v;
        if (components_within(off, nb, cap)) coeffs[mono] += 1;
      }
    });
  return LaurentPoly::from_coeffs(0, std::move(coeffs));
}

std::uint64_t chi_count(const Graph& g, const VertexSet& s, std::uint32_t a, std::uint32_t b, std::size_t q) {
  check_n(g, kColoringCap, "chi enumeration");
  check_q(q);
  if (!g.bipartite()) throw Error("non-bipartite", "patterns need a bipartition");
  std::uint64_t count = 0;
  for (std::uint32_t first = 0; first < (g.n() == 0 ? 1 : q); ++first)
    for_each_assignment(g.n(), q, first, [&](const std::vector<std::uint32_t>& c) {
      if (mono_count(g, c) != 0) return;
      for (std::size_t v = 0; v < g.n(); ++v) {
        const bool agrees = (pattern_set(g, static_cast<Vertex>(v), a, b) >> c[v]) & 1U;
        if (agrees == s.contains(static_cast<Vertex>(v))) return;
      }
      ++count;
    });
  return count;
}

std::uint64_t chi_hat_count(const Graph& g, const VertexSet& s, std::uint32_t a, std::uint32_t b,
                            std::size_t q) {
  check_q(q);
  if (!g.bipartite()) throw Error("non-bipartite", "patterns need a bipartition");
  VertexSet closure = s;
  s.for_each([&](Vertex v) {
    for (Vertex u : g.neighbors(v)) closure.insert(u);
  });
  std::vector<Vertex> verts;
  closure.for_each([&](Vertex v) { verts.push_back(v); });
  if (verts.size() > brute_cap(kMeasureCap)) throw CapExceeded("chi-hat closure of " + std::to_string(verts.size()));
  std::uint64_t count = 0;
  for (std::uint32_t first = 0; first < (verts.empty() ? 1 : q); ++first)
    for_each_assignment(verts.size(), q, first, [&](const std::vector<std::uint32_t>& c) {
      for (std::size_t i = 0; i < verts.size(); ++i) {
        const bool agrees = (pattern_set(g, verts[i], a, b) >> c[i]) & 1U;
        if (agrees == s.contains(verts[i])) return;
        for (std::size_t j = i + 1; j < verts.size(); ++j)
          if (c[i] == c[j] && g.adjacent(verts[i], verts[j])) return;
      }
      ++count;
    });
  return count;
}

}  // namespace polymer::oracle
