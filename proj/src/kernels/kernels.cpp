#include "risalloc/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace risalloc::kernels {

namespace {

// Scalar reference lane. Real/imag arithmetic is spelled out so the compiler
// does not fall back to the Annex-G complex multiply helpers.

cplx scalar_cdotu(std::size_t n, const cplx* a, const cplx* b) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

cplx scalar_cdotc(std::size_t n, const cplx* a, const cplx* b) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double scalar_abs_prod_sum(std::size_t n, const cplx* a, const cplx* b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ma = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
        const double mb = b[i].real() * b[i].real() + b[i].imag() * b[i].imag();
        acc += std::sqrt(ma * mb);
    }
    return acc;
}

cplx scalar_phased_dot(std::size_t n, const cplx* a, const cplx* unit, const cplx* b) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ur = unit[i].real(), ui = unit[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        const double tr = ur * br - ui * bi;
        const double ti = ur * bi + ui * br;
        const double ar = a[i].real(), ai = a[i].imag();
        re += ar * tr + ai * ti;
        im += ar * ti - ai * tr;
    }
    return {re, im};
}

void scalar_axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double wr = alpha.real(), wi = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + wr * xr - wi * xi, y[i].imag() + wr * xi + wi * xr};
    }
}

void scalar_axpy_conj(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double wr = alpha.real(), wi = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + wr * xr + wi * xi, y[i].imag() + wi * xr - wr * xi};
    }
}

void scalar_rotate_pair(std::size_t n, cplx* x, cplx* y, double c, double s, cplx ph) {
    const double pr = ph.real(), pi = ph.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double yr = y[i].real(), yi = y[i].imag();
        const double tr = pr * yr - pi * yi;
        const double ti = pr * yi + pi * yr;
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = {c * xr - s * tr, c * xi - s * ti};
        y[i] = {s * xr + c * tr, s * xi + c * ti};
    }
}

const KernelTable kScalarTable = {
    scalar_cdotu,  scalar_cdotc,     scalar_abs_prod_sum, scalar_phased_dot,
    scalar_axpy,   scalar_axpy_conj, scalar_rotate_pair,  "scalar",
};

const KernelTable* select_table() {
    const char* pref = std::getenv("RISALLOC_KERNELS");
    if (pref != nullptr && std::strcmp(pref, "scalar") == 0) return &kScalarTable;
#if defined(RISALLOC_HAVE_AVX2)
    if (pref != nullptr && std::strcmp(pref, "avx2") == 0) {
        if (avx2_supported()) return &avx2_table();
        return &kScalarTable;  // requested lane unavailable on this CPU
    }
    if (avx2_supported()) return &avx2_table();
#endif
    return &kScalarTable;
}

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

bool avx2_compiled() {
#if defined(RISALLOC_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelTable& active() {
    static const KernelTable* table = select_table();
    return *table;
}

}  // namespace risalloc::kernels
