#include "detmatroid/kernels.hpp"

#if defined(DETMATROID_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define DETMATROID_AVX2 __attribute__((target("avx2")))

namespace detmatroid::kernels::avx2 {
namespace {

// Montgomery product of each 64-bit lane's low word: (a * b * 2^-32) mod p,
// result in [0, 2p) in the low word.
DETMATROID_AVX2 inline __m256i mont_lanes(__m256i a, __m256i b, __m256i neg_p_inv, __m256i p) {
  const __m256i t = _mm256_mul_epu32(a, b);
  const __m256i m = _mm256_mul_epu32(t, neg_p_inv);
  const __m256i mp = _mm256_mul_epu32(m, p);
  return _mm256_srli_epi64(_mm256_add_epi64(t, mp), 32);
}

// x in [0, 2p) -> x mod p, unsigned 32-bit lanes.
DETMATROID_AVX2 inline __m256i reduce_once(__m256i x, __m256i p) {
  return _mm256_min_epu32(x, _mm256_sub_epi32(x, p));
}

DETMATROID_AVX2 inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_nibble = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_nibble);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_nibble);
  const __m256i counts =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

}  // namespace

DETMATROID_AVX2 void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                              std::uint32_t c, const ModContext& ctx) {
  const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
  const __m256i p = _mm256_set1_epi32(static_cast<int>(ctx.p));
  const __m256i neg_p_inv = _mm256_set1_epi32(static_cast<int>(ctx.neg_p_inv));
  const __m256i cm = _mm256_set1_epi32(static_cast<int>(ctx.to_montgomery(c)));

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    const __m256i even = mont_lanes(cm, s, neg_p_inv, p);
    const __m256i odd = mont_lanes(cm, _mm256_srli_epi64(s, 32), neg_p_inv, p);
    __m256i prod = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0b10101010);
    prod = reduce_once(prod, p);
    const __m256i sum = reduce_once(_mm256_add_epi32(d, prod), p);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), sum);
  }
  if (i < n) scalar::axpy_mod(dst.subspan(i, n - i), src.subspan(i, n - i), c, ctx);
}

DETMATROID_AVX2 std::int64_t excess_sum(std::span<const RowMask> columns, RowMask subset, int r) {
  const __m256i mask = _mm256_set1_epi64x(static_cast<long long>(subset));
  const __m256i rv = _mm256_set1_epi64x(r);
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t j = 0;
  for (; j + 4 <= columns.size(); j += 4) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(columns.data() + j));
    const __m256i cnt = popcount_epi64(_mm256_and_si256(c, mask));
    // Counts fit in the low 32-bit word of each lane; the high word stays 0.
    const __m256i over = _mm256_max_epi32(_mm256_sub_epi32(cnt, rv), zero);
    acc = _mm256_add_epi64(acc, over);
  }
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  if (j < columns.size()) total += scalar::excess_sum(columns.subspan(j), subset, r);
  return total;
}

}  // namespace detmatroid::kernels::avx2

#endif
