#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace risalloc::kernels {

using cplx = std::complex<double>;

/// Data-parallel inner loops shared by the linear-algebra and solver layers.
/// Every entry operates on contiguous arrays of interleaved complex doubles.
/// Implementations must produce the same results as the scalar reference up
/// to floating-point reassociation.
struct KernelTable {
    /// sum_i a[i]*b[i]
    cplx (*cdotu)(std::size_t n, const cplx* a, const cplx* b);
    /// sum_i conj(a[i])*b[i]
    cplx (*cdotc)(std::size_t n, const cplx* a, const cplx* b);
    /// sum_i |a[i]|*|b[i]|
    double (*abs_prod_sum)(std::size_t n, const cplx* a, const cplx* b);
    /// sum_i conj(a[i])*unit[i]*b[i], unit holding unit-modulus phasors
    cplx (*phased_dot)(std::size_t n, const cplx* a, const cplx* unit, const cplx* b);
    /// y[i] += alpha*x[i]
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /// y[i] += alpha*conj(x[i])
    void (*axpy_conj)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /// plane rotation with phase pre-twist:
    ///   t     = ph*y[i]
    ///   x[i]' = c*x[i] - s*t
    ///   y[i]' = s*x[i] + c*t
    /// with c^2 + s^2 == 1 and |ph| == 1, so the map is unitary.
    void (*rotate_pair)(std::size_t n, cplx* x, cplx* y, double c, double s, cplx ph);
    const char* name;
};

const KernelTable& scalar_table();

bool avx2_compiled();
bool avx2_supported();
#if defined(RISALLOC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

/// Table selected at first use: AVX2 when compiled in and reported by the CPU,
/// scalar otherwise. RISALLOC_KERNELS=scalar|avx2|auto overrides.
const KernelTable& active();

inline cplx cdotu(std::size_t n, const cplx* a, const cplx* b) { return active().cdotu(n, a, b); }
inline cplx cdotc(std::size_t n, const cplx* a, const cplx* b) { return active().cdotc(n, a, b); }
inline double abs_prod_sum(std::size_t n, const cplx* a, const cplx* b) {
    return active().abs_prod_sum(n, a, b);
}
inline cplx phased_dot(std::size_t n, const cplx* a, const cplx* unit, const cplx* b) {
    return active().phased_dot(n, a, unit, b);
}
inline void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    active().axpy(n, alpha, x, y);
}
inline void axpy_conj(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    active().axpy_conj(n, alpha, x, y);
}
inline void rotate_pair(std::size_t n, cplx* x, cplx* y, double c, double s, cplx ph) {
    active().rotate_pair(n, x, y, c, s, ph);
}

}  // namespace risalloc::kernels
