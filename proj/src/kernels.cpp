#include "pem/kernels.hpp"

namespace pem::kernels {

namespace {

using AddRowFn = void (*)(std::uint32_t*, const std::uint8_t*, std::size_t);
using MomentsFn = void (*)(const std::uint32_t*, std::size_t, std::size_t, double*, double*);

struct Dispatch {
    Backend backend = Backend::Scalar;
    AddRowFn add_row = detail::add_row_u8_scalar;
    MomentsFn moments = detail::column_moments_scalar;
};

Backend detect_backend() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#elif defined(__aarch64__)
    return Backend::Neon; // baseline on aarch64
#endif
    return Backend::Scalar;
}

Dispatch make_dispatch(Backend b) {
    Dispatch d;
    d.backend = b;
    switch (b) {
    case Backend::Scalar:
        break;
#if defined(__x86_64__)
    case Backend::Avx2:
        d.add_row = detail::add_row_u8_avx2;
        d.moments = detail::column_moments_avx2;
        break;
#endif
#if defined(__aarch64__)
    case Backend::Neon:
        d.add_row = detail::add_row_u8_neon;
        d.moments = detail::column_moments_neon;
        break;
#endif
    default:
        break;
    }
    return d;
}

Dispatch& dispatch() {
    static Dispatch d = make_dispatch(detect_backend());
    return d;
}

} // namespace

Backend active() { return dispatch().backend; }

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "?";
}

bool set_backend(Backend b) {
    if (b != Backend::Scalar && b != detect_backend()) return false;
    dispatch() = make_dispatch(b);
    return true;
}

void add_row_u8(std::uint32_t* acc, const std::uint8_t* row, std::size_t n) {
    dispatch().add_row(acc, row, n);
}

void column_moments(const std::uint32_t* m, std::size_t rows, std::size_t cols,
                    double* sum, double* sumsq) {
    dispatch().moments(m, rows, cols, sum, sumsq);
}

} // namespace pem::kernels
