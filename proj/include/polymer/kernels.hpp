#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and an AVX2
// variant; the variant is picked at runtime (CPU feature detection, overridable
// with POLYMER_SIMD=scalar) and the pair is equivalence-tested.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polymer::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
// Best supported ISA unless POLYMER_SIMD=scalar.
Isa active_isa();

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if ((sum >= 0 ? sum : -sum) >= (x >= 0 ? x : -x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum);
    add(o.comp);
  }
  double value() const { return sum + comp; }
};

// Colorings are stored structure-of-arrays: colors[v * batch + lane].
// Batch must be a multiple of kLaneBlock.
inline constexpr std::size_t kLaneBlock = 8;

struct EdgeIndex {
  std::uint32_t u;
  std::uint32_t v;
};

// out[lane] = number of edges whose endpoints share a color in coloring `lane`.
void agreement_counts(std::span<const std::int32_t> colors, std::size_t batch,
                      std::span<const EdgeIndex> edges, std::span<std::int32_t> out,
                      Isa isa = active_isa());

// acc += sum_i signs[i] * exp(logs[i]). signs are +1 or -1.
void signed_exp_sum(std::span<const double> signs, std::span<const double> logs,
                    CompensatedSum& acc, Isa isa = active_isa());

// Histogram of monochromatic-edge counts over all colors^n colorings of a
// graph with `n` vertices: hist[k] = #colorings with exactly k monochromatic
// edges. Uses agreement_counts in batches.
std::vector<std::uint64_t> monochromatic_histogram(std::size_t n, std::span<const EdgeIndex> edges,
                                                   std::uint32_t colors, Isa isa = active_isa());

namespace scalar {
void agreement_counts(const std::int32_t* colors, std::size_t batch, const EdgeIndex* edges,
                      std::size_t edge_count, std::int32_t* out);
void signed_exp_sum(const double* signs, const double* logs, std::size_t count,
                    CompensatedSum& acc);
}  // namespace scalar

namespace avx2 {
void agreement_counts(const std::int32_t* colors, std::size_t batch, const EdgeIndex* edges,
                      std::size_t edge_count, std::int32_t* out);
void signed_exp_sum(const double* signs, const double* logs, std::size_t count,
                    CompensatedSum& acc);
// Vector exp used by signed_exp_sum, exposed for accuracy tests.
void exp4(const double* in, double* out);
}  // namespace avx2

}  // namespace polymer::kernels
