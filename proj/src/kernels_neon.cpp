#if defined(__aarch64__)

#include <arm_neon.h>

#include "pem/kernels.hpp"

namespace pem::kernels::detail {

void add_row_u8_neon(std::uint32_t* acc, const std::uint8_t* row, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint8x8_t bytes = vld1_u8(row + i);
        uint16x8_t half = vmovl_u8(bytes);
        uint32x4_t lo = vmovl_u16(vget_low_u16(half));
        uint32x4_t hi = vmovl_u16(vget_high_u16(half));
        vst1q_u32(acc + i, vaddq_u32(vld1q_u32(acc + i), lo));
        vst1q_u32(acc + i + 4, vaddq_u32(vld1q_u32(acc + i + 4), hi));
    }
    for (; i < n; ++i) acc[i] += row[i];
}

void column_moments_neon(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                         double* sum, double* sumsq) {
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
        float64x2_t s = vdupq_n_f64(0.0);
        float64x2_t s2 = vdupq_n_f64(0.0);
        for (std::size_t r = 0; r < rows; ++r) {
            uint32x2_t ints = vld1_u32(m + r * cols + c);
            float64x2_t v = vcvtq_f64_u64(vmovl_u32(ints));
            s = vaddq_f64(s, v);
            s2 = vaddq_f64(s2, vmulq_f64(v, v));
        }
        vst1q_f64(sum + c, s);
        vst1q_f64(sumsq + c, s2);
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

#endif // __aarch64__
