#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the matrix and stats code. Scalar
// reference implementations always exist; an AVX2 (x86-64) or NEON (aarch64)
// variant is selected at startup when the CPU supports it. All variants
// produce bitwise-identical results: accumulation order per column is the
// same and every intermediate value is an exactly-representable integer.
namespace pem::kernels {

enum class Backend { Scalar, Avx2, Neon };

Backend active();
const char* backend_name(Backend b);

// Switch backend explicitly (tests, benchmarking). Returns false if the
// requested backend is not compiled in or not supported by this CPU.
bool set_backend(Backend b);

// acc[i] += row[i] for i in [0, n). Rows are 0/1 bytes in practice but any
// u8 value is accepted.
void add_row_u8(std::uint32_t* acc, const std::uint8_t* row, std::size_t n);

// Per-column sum and sum-of-squares over a row-major u32 matrix.
void column_moments(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                    double* sum, double* sumsq);

namespace detail {
void add_row_u8_scalar(std::uint32_t* acc, const std::uint8_t* row, std::size_t n);
void column_moments_scalar(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                           double* sum, double* sumsq);
#if defined(__x86_64__)
void add_row_u8_avx2(std::uint32_t* acc, const std::uint8_t* row, std::size_t n);
void column_moments_avx2(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                         double* sum, double* sumsq);
#endif
#if defined(__aarch64__)
void add_row_u8_neon(std::uint32_t* acc, const std::uint8_t* row, std::size_t n);
void column_moments_neon(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                         double* sum, double* sumsq);
#endif
} // namespace detail

} // namespace pem::kernels
