#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "polymer/kernels.hpp"

namespace polymer::kernels {

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(POLYMER_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("POLYMER_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
    return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

namespace {
void require(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error(std::string("ISA not supported: ") + isa_name(isa));
}
}  // namespace

void agreement_counts(std::span<const std::int32_t> colors, std::size_t batch,
                      std::span<const EdgeIndex> edges, std::span<std::int32_t> out, Isa isa) {
  if (batch % kLaneBlock != 0 || out.size() < batch)
    throw std::invalid_argument("agreement_counts: batch must be a multiple of the lane block");
  require(isa);
#ifdef POLYMER_HAVE_AVX2
  if (isa == Isa::kAvx2) {
    avx2::agreement_counts(colors.data(), batch, edges.data(), edges.size(), out.data());
    return;
  }
#endif
  scalar::agreement_counts(colors.data(), batch, edges.data(), edges.size(), out.data());
}

void signed_exp_sum(std::span<const double> signs, std::span<const double> logs,
                    CompensatedSum& acc, Isa isa) {
  if (signs.size() != logs.size()) throw std::invalid_argument("signed_exp_sum: size mismatch");
  require(isa);
#ifdef POLYMER_HAVE_AVX2
  if (isa == Isa::kAvx2) {
    avx2::signed_exp_sum(signs.data(), logs.data(), logs.size(), acc);
    return;
  }
#endif
  scalar::signed_exp_sum(signs.data(), logs.data(), logs.size(), acc);
}

std::vector<std::uint64_t> monochromatic_histogram(std::size_t n, std::span<const EdgeIndex> edges,
                                                   std::uint32_t colors, Isa isa) {
  std::vector<std::uint64_t> hist(edges.size() + 1, 0);
  if (colors == 0) return n == 0 ? std::vector<std::uint64_t>{1} : hist;
  // Total colors^n, guarded against overflow.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > (std::uint64_t{1} << 40) / colors)
      throw std::length_error("monochromatic_histogram: too many colorings");
    total *= colors;
  }
  constexpr std::size_t kBatch = 256;
  std::vector<std::int32_t> soa(std::max<std::size_t>(n, 1) * kBatch);
  std::vector<std::int32_t> counts(kBatch);
  for (std::uint64_t base = 0; base < total; base += kBatch) {
    const std::size_t live = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - base));
    for (std::size_t lane = 0; lane < kBatch; ++lane) {
      std::uint64_t idx = base + (lane < live ? lane : 0);
      for (std::size_t v = 0; v < n; ++v) {
        soa[v * kBatch + lane] = static_cast<std::int32_t>(idx % colors);
        idx /= colors;
      }
    }
    agreement_counts(soa, kBatch, edges, counts, isa);
    for (std::size_t lane = 0; lane < live; ++lane) ++hist[static_cast<std::size_t>(counts[lane])];
  }
  return hist;
}

}  // namespace polymer::kernels
