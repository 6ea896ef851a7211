#include "pem/kernels.hpp"

namespace pem::kernels::detail {

void add_row_u8_scalar(std::uint32_t* acc, const std::uint8_t* row, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
}

void column_moments_scalar(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                           double* sum, double* sumsq) {
    for (std::size_t c = 0; c < cols; ++c) {
        sum[c] = 0.0;
        sumsq[c] = 0.0;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const std::uint32_t* row = m + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            double v = static_cast<double>(row[c]);
            sum[c] += v;
            sumsq[c] += v * v;
        }
    }
}

} // namespace pem::kernels::detail
