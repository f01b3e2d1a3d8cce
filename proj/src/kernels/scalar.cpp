#include <cmath>
#include <cstring>

#include "polymer/kernels.hpp"

namespace polymer::kernels::scalar {

void agreement_counts(const std::int32_t* colors, std::size_t batch, const EdgeIndex* edges,
                      std::size_t edge_count, std::int32_t* out) {
  std::memset(out, 0, batch * sizeof(std::int32_t));
  for (std::size_t e = 0; e < edge_count; ++e) {
    const std::int32_t* cu = colors + edges[e].u * batch;
    const std::int32_t* cv = colors + edges[e].v * batch;
    for (std::size_t lane = 0; lane < batch; ++lane) out[lane] += cu[lane] == cv[lane];
  }
}

void signed_exp_sum(const double* signs, const double* logs, std::size_t count,
                    CompensatedSum& acc) {
  for (std::size_t i = 0; i < count; ++i) acc.add(signs[i] * std::exp(logs[i]));
}

}  // namespace polymer::kernels::scalar
