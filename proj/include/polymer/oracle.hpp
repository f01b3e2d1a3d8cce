#pragma once

// Exhaustive ground truth. Shares nothing with the approximate pipeline
// beyond Graph; every routine is a direct sum over its definition.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polymer/graph.hpp"
#include "polymer/polynomial.hpp"

namespace polymer::oracle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ExactValue {
  std::optional<Rational> value;  // set when the inputs are rational
  double log_value = 0.0;
  std::uint64_t count = 0;        // configurations enumerated
  double seconds = 0.0;
};

// Default caps; POLYMER_BRUTE_CAP overrides each of them.
inline constexpr std::size_t kHardcoreCap = 40;
inline constexpr std::size_t kColoringCap = 14;
// Exact Xi visits at most 2^kXiCap configurations; exact nu enumerates
// 2^k subsets and takes at most kXiCap polymers.
inline constexpr std::size_t kXiCap = 25;
inline constexpr std::size_t kXiPolymerCap = 4096;
inline constexpr std::size_t kMeasureCap = 20;

// counts[k] = number of independent sets of size k.
std::vector<BigInt> hardcore_polynomial(const Graph& g);
ExactValue exact_hardcore(const Graph& g, const Rational& lambda);
ExactValue exact_hardcore(const Graph& g, double lambda);

// Z_{G,q} as a polynomial in x = e^beta: coefficient of x^k counts the
// colorings with k monochromatic edges.
LaurentPoly potts_polynomial(const Graph& g, std::size_t q, std::size_t threads = 1);
ExactValue exact_potts(const Graph& g, std::size_t q, double beta, std::size_t threads = 1);

ExactValue exact_colorings(const Graph& g, std::size_t q, std::size_t threads = 1);

// Incompatibility matrix; the diagonal is ignored.
using Incompatibility = std::vector<std::vector<bool>>;

// Xi = sum over pairwise compatible subsets of the product of weights.
template <class W>
W exact_xi(const std::vector<W>& weights, const Incompatibility& incompatible, std::uint64_t* count = nullptr);

// A configuration: sorted polymer ids, sorted vertices, or a color vector.
using Atom = std::vector<std::uint32_t>;
using Distribution = std::map<Atom, double>;

// nu(Gamma) proportional to prod w over compatible Gamma.
Distribution exact_nu(const std::vector<double>& log_weights, const Incompatibility& incompatible);
// mu(I) = lambda^|I| / Z over independent sets.
Distribution hardcore_measure(const Graph& g, double lambda);
// mu(f) proportional to e^{beta * mono(f)} over all q-colorings.
Distribution potts_measure(const Graph& g, std::size_t q, double beta);
// Uniform over proper q-colorings.
Distribution coloring_measure(const Graph& g, std::size_t q);

// sum_x |P(x) - counts(x)/total| / 2 over the union of supports.
double total_variation(const Distribution& exact, const std::map<Atom, std::uint64_t>& counts);

// Sets whose G^2-components inside `side` all have at most `cap` vertices.
struct HardcoreSparseSums {
  Rational both;     // sum of lambda^|I| over I sparse on both sides
  Rational neither;  // sum of lambda^|I| over I sparse on neither side
};
HardcoreSparseSums hardcore_sparse_sums(const Graph& g, const Rational& lambda, std::size_t odd_cap,
                                        std::size_t even_cap);

// Sum over colors c and colorings f whose non-c set has G-components of at
// most `cap` vertices, of x^{mono(f)}. Equals q e^{beta e(G)} Xi when the
// polymers are exactly those components.
LaurentPoly potts_sparse_polynomial(const Graph& g, std::size_t q, std::size_t cap);

// Proper colorings of G disagreeing with (a, b) on S and agreeing off S.
// a colors the odd side, b the even side; both are color bitmasks.
std::uint64_t chi_count(const Graph& g, const VertexSet& s, std::uint32_t a, std::uint32_t b, std::size_t q);
// Proper colorings of G[S+] disagreeing on S and agreeing on dS.
std::uint64_t chi_hat_count(const Graph& g, const VertexSet& s, std::uint32_t a, std::uint32_t b,
                            std::size_t q);

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error("oracle-cap", what) {}
};

template <class W>
W exact_xi(const std::vector<W>& weights, const Incompatibility& incompatible, std::uint64_t* count) {
  // Depth-first over compatible sets in increasing id order, so each
  // configuration is visited once and the cost follows their number.
  const std::size_t k = weights.size();
  if (k > kXiPolymerCap) throw CapExceeded("xi over " + std::to_string(k) + " polymers");
  const std::size_t log_cap = brute_cap(kXiCap);
  const std::uint64_t visit_cap = log_cap >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << log_cap;
  std::vector<std::uint32_t> blocked(k, 0);
  std::uint64_t visited = 0;
  W total = W(0);
  auto rec = [&](auto&& self, std::size_t next, const W& product) -> void {
    if (++visited > visit_cap) throw CapExceeded("xi beyond 2^" + std::to_string(log_cap) + " configurations");
    total = total + product;
    for (std::size_t i = next; i < k; ++i) {
      if (blocked[i]) continue;
      for (std::size_t j = i + 1; j < k; ++j)
        if (incompatible[i][j]) ++blocked[j];
      self(self, i + 1, product * weights[i]);
      for (std::size_t j = i + 1; j < k; ++j)
        if (incompatible[i][j]) --blocked[j];
    }
  };
  rec(rec, 0, W(1));
  if (count) *count = visited;
  return total;
}

}  // namespace polymer::oracle
