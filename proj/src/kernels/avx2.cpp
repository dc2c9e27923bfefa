#include <immintrin.h>

#include <cmath>

#include "apbounds/kernels.hpp"
#include "apbounds/quad.hpp"

namespace apb::kernels {

namespace {

inline __m256d weight4(__m256d t, Weight w) {
  const __m256d one = _mm256_set1_pd(1.0);
  switch (w) {
    case Weight::inv:
      return _mm256_div_pd(one, t);
    case Weight::inv_square:
      return _mm256_div_pd(one, _mm256_mul_pd(t, t));
    case Weight::inv_norm:
      return _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_add_pd(_mm256_set1_pd(0.25), _mm256_mul_pd(t, t))));
  }
  return _mm256_setzero_pd();
}

double weight_sum_avx2(const double* g, std::size_t n, Weight w) {
  // lane-wise Kahan
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_sub_pd(weight4(_mm256_loadu_pd(g + i), w), c);
    const __m256d t = _mm256_add_pd(s, y);
    c = _mm256_sub_pd(_mm256_sub_pd(t, s), y);
    s = t;
  }
  alignas(32) double ls[4], lc[4];
  _mm256_store_pd(ls, s);
  _mm256_store_pd(lc, c);
  CompensatedSum acc;
  for (int k = 0; k < 4; ++k) {
    acc += ls[k];
    acc += -lc[k];
  }
  for (; i < n; ++i) {
    const double t = g[i];
    switch (w) {
      case Weight::inv: acc += 1.0 / t; break;
      case Weight::inv_square: acc += 1.0 / (t * t); break;
      case Weight::inv_norm: acc += 1.0 / std::sqrt(0.25 + t * t); break;
    }
  }
  return acc.value();
}

std::size_t count_zero_avx2(const std::uint8_t* flags, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t c = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(flags + i));
    const unsigned m = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    c += static_cast<std::size_t>(__builtin_popcount(m));
  }
  for (; i < n; ++i) c += flags[i] == 0;
  return c;
}

std::size_t collect_zero_avx2(const std::uint8_t* flags, std::size_t n, std::uint32_t* out) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t c = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(flags + i));
    unsigned m = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    while (m) {
      out[c++] = static_cast<std::uint32_t>(i + __builtin_ctz(m));
      m &= m - 1;
    }
  }
  for (; i < n; ++i)
    if (flags[i] == 0) out[c++] = static_cast<std::uint32_t>(i);
  return c;
}

}  // namespace

const Table& avx2_table() {
  static const Table t{"avx2", weight_sum_avx2, count_zero_avx2, collect_zero_avx2};
  return t;
}

}  // namespace apb::kernels
