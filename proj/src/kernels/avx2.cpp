// Compiled with -mavx2. Only reached after a runtime CPU check.

#include "ctv/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace ctv::kernels {

namespace {

// x < 2^24 is exact in float, so x * (1/p) truncates to q or q - 1 with
// q = floor(x / p); one conditional add/subtract fixes the remainder.
inline __m256i reduce(__m256i x, __m256 inv_p, __m256i p) {
  __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(x), inv_p));
  __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, p));
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, p));
  __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(p, _mm256_set1_epi32(1)));
  return _mm256_sub_epi32(r, _mm256_and_si256(ge, p));
}

void axpy_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
               std::uint32_t p) {
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  const std::size_t n = dst.size();
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vc));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), reduce(x, inv, vp));
  }
  for (; i < n; ++i) dst[i] = (dst[i] + c * src[i]) % p;
}

void scale_avx2(std::span<std::uint32_t> row, std::uint32_t c, std::uint32_t p) {
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  const std::size_t n = row.size();
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row.data() + i), reduce(_mm256_mullo_epi32(x, vc), inv, vp));
  }
  for (; i < n; ++i) row[i] = (c * row[i]) % p;
}

}  // namespace

const RowKernels* avx2() {
  // p^2 + p < 2^24 keeps every intermediate exact in float.
  static const RowKernels k{Isa::avx2, "avx2", 4093, axpy_avx2, scale_avx2};
  return &k;
}

}  // namespace ctv::kernels

#else

namespace ctv::kernels {
const RowKernels* avx2() { return nullptr; }
}  // namespace ctv::kernels

#endif
