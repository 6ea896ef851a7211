#if defined(__x86_64__)

#include <immintrin.h>

#include "pem/kernels.hpp"

namespace pem::kernels::detail {

void add_row_u8_avx2(std::uint32_t* acc, const std::uint8_t* row, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(row + i));
        __m256i widened = _mm256_cvtepu8_epi32(bytes);
        __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi32(cur, widened));
    }
    for (; i < n; ++i) acc[i] += row[i];
}

// Column-major accumulation order matches the scalar kernel: doubles hold
// exact integers here (counts <= group size), so no rounding divergence.
void column_moments_avx2(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                         double* sum, double* sumsq) {
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
        __m256d s = _mm256_setzero_pd();
        __m256d s2 = _mm256_setzero_pd();
        for (std::size_t r = 0; r < rows; ++r) {
            __m128i ints = _mm_loadu_si128(reinterpret_cast<const __m128i*>(m + r * cols + c));
            __m256d v = _mm256_cvtepi32_pd(ints);
            s = _mm256_add_pd(s, v);
            s2 = _mm256_add_pd(s2, _mm256_mul_pd(v, v));
        }
        _mm256_storeu_pd(sum + c, s);
        _mm256_storeu_pd(sumsq + c, s2);
    }
    for (; c < cols; ++c) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double v = static_cast<double>(m[r * cols + c]);
            s += v;
            s2 += v * v;
        }
        sum[c] = s;
        sumsq[c] = s2;
    }
}

} // namespace pem::kernels::detail

#endif // __x86_64__
