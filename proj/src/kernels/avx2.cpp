// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <cstring>

#include "polymer/kernels.hpp"

namespace polymer::kernels::avx2 {

namespace {

// Cephes-style exp: range reduction by ln 2 in two parts, then a (2,3) Pade
// approximant on |r| <= ln(2)/2, scaled by 2^n in two steps so the largest
// finite inputs do not overflow the exponent field.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78271289338397);
  const __m256d lo = _mm256_set1_pd(-708.39641853226408);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  const __m256d overflow = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n = 2^(n/2) * 2^(n - n/2) built from exponent bits.
  __m128i ni = _mm256_cvtpd_epi32(n);
  __m128i n1 = _mm_srai_epi32(ni, 1);
  __m128i n2 = _mm_sub_epi32(ni, n1);
  auto pow2 = [](__m128i k) {
    __m256i k64 = _mm256_cvtepi32_epi64(k);
    k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
    return _mm256_castsi256_pd(_mm256_slli_epi64(k64, 52));
  };
  e = _mm256_mul_pd(_mm256_mul_pd(e, pow2(n1)), pow2(n2));

  e = _mm256_andnot_pd(underflow, e);
  e = _mm256_blendv_pd(e, _mm256_set1_pd(__builtin_inf()), overflow);
  return e;
}

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void exp4(const double* in, double* out) { _mm256_storeu_pd(out, exp_pd(_mm256_loadu_pd(in))); }

void agreement_counts(const std::int32_t* colors, std::size_t batch, const EdgeIndex* edges,
                      std::size_t edge_count, std::int32_t* out) {
  for (std::size_t base = 0; base < batch; base += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t e = 0; e < edge_count; ++e) {
      __m256i cu = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(colors + edges[e].u * batch + base));
      __m256i cv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(colors + edges[e].v * batch + base));
      // Equal lanes compare to -1; subtracting adds one.
      acc = _mm256_sub_epi32(acc, _mm256_cmpeq_epi32(cu, cv));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + base), acc);
  }
}

void signed_exp_sum(const double* signs, const double* logs, std::size_t count,
                    CompensatedSum& acc) {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  auto step = [&](__m256d s, __m256d l) {
    __m256d x = _mm256_mul_pd(s, exp_pd(l));
    __m256d t = _mm256_add_pd(sum, x);
    __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    __m256d c_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c_x, c_sum, big_sum));
    sum = t;
  };
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) step(_mm256_loadu_pd(signs + i), _mm256_loadu_pd(logs + i));
  if (i < count) {
    double s[4] = {0, 0, 0, 0};
    double l[4] = {0, 0, 0, 0};
    std::memcpy(s, signs + i, (count - i) * sizeof(double));
    std::memcpy(l, logs + i, (count - i) * sizeof(double));
    step(_mm256_loadu_pd(s), _mm256_loadu_pd(l));
  }
  alignas(32) double sums[4];
  alignas(32) double comps[4];
  _mm256_store_pd(sums, sum);
  _mm256_store_pd(comps, comp);
  for (int lane = 0; lane < 4; ++lane) acc.merge(CompensatedSum{sums[lane], comps[lane]});
}

}  // namespace polymer::kernels::avx2
