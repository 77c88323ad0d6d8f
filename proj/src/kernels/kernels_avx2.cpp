#include "risalloc/kernels.hpp"

#if defined(RISALLOC_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace risalloc::kernels {

namespace {

// Two interleaved complex doubles per 256-bit register. All loads are
// unaligned; tails fall back to the scalar recurrences.

inline double reduce_even(__m256d v) {
    // v = [e0 o0 e1 o1] -> e0 + e1
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(hi);
}

inline double reduce_odd(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    return _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
}

cplx avx2_cdotu(std::size_t n, const cplx* a, const cplx* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d are = _mm256_movedup_pd(va);
        const __m256d aim = _mm256_unpackhi_pd(va, va);
        const __m256d bsw = _mm256_permute_pd(vb, 0x5);
        // even: ar*br - ai*bi, odd: ar*bi + ai*br
        acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, vb, _mm256_mul_pd(aim, bsw)));
    }
    double re = reduce_even(acc), im = reduce_odd(acc);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

cplx avx2_cdotc(std::size_t n, const cplx* a, const cplx* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d are = _mm256_movedup_pd(va);
        const __m256d aim = _mm256_unpackhi_pd(va, va);
        const __m256d bsw = _mm256_permute_pd(vb, 0x5);
        // even: ar*br + ai*bi, odd: ar*bi - ai*br
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(are, vb, _mm256_mul_pd(aim, bsw)));
    }
    double re = reduce_even(acc), im = reduce_odd(acc);
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double avx2_abs_prod_sum(std::size_t n, const cplx* a, const cplx* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d sa = _mm256_mul_pd(va, va);
        const __m256d sb = _mm256_mul_pd(vb, vb);
        // [ |a0|^2 |b0|^2 |a1|^2 |b1|^2 ]
        const __m256d mags = _mm256_hadd_pd(sa, sb);
        const __m256d swapped = _mm256_permute_pd(mags, 0x5);
        const __m256d prod = _mm256_sqrt_pd(_mm256_mul_pd(mags, swapped));
        // prod even lanes carry |a_k||b_k| (odd lanes duplicate them)
        acc = _mm256_add_pd(acc, _mm256_blend_pd(prod, _mm256_setzero_pd(), 0xA));
    }
    double s = reduce_even(acc) + reduce_odd(acc);
    for (; i < n; ++i) {
        const double ma = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
        const double mb = b[i].real() * b[i].real() + b[i].imag() * b[i].imag();
        s += std::sqrt(ma * mb);
    }
    return s;
}

cplx avx2_phased_dot(std::size_t n, const cplx* a, const cplx* unit, const cplx* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pu = reinterpret_cast<const double*>(unit);
    const double* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        const __m256d vu = _mm256_loadu_pd(pu + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d ure = _mm256_movedup_pd(vu);
        const __m256d uim = _mm256_unpackhi_pd(vu, vu);
        const __m256d bsw = _mm256_permute_pd(vb, 0x5);
        const __m256d t = _mm256_fmaddsub_pd(ure, vb, _mm256_mul_pd(uim, bsw));  // unit*b
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d are = _mm256_movedup_pd(va);
        const __m256d aim = _mm256_unpackhi_pd(va, va);
        const __m256d tsw = _mm256_permute_pd(t, 0x5);
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(are, t, _mm256_mul_pd(aim, tsw)));
    }
    double re = reduce_even(acc), im = reduce_odd(acc);
    for (; i < n; ++i) {
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

void avx2_axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d wre = _mm256_set1_pd(alpha.real());
    const __m256d wim = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d xsw = _mm256_permute_pd(vx, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(wre, vx, _mm256_mul_pd(wim, xsw));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    const double wr = alpha.real(), wi = alpha.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + wr * xr - wi * xi, y[i].imag() + wr * xi + wi * xr};
    }
}

void avx2_axpy_conj(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d wre = _mm256_set1_pd(alpha.real());
    const __m256d wim = _mm256_set1_pd(alpha.imag());
    const __m256d flip_odd = _mm256_castsi256_pd(
        _mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
    std::size_t i = 0;
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d xsw = _mm256_permute_pd(vx, 0x5);
        // conj(alpha)*x, then conjugate the product: alpha*conj(x)
        __m256d prod = _mm256_fmsubadd_pd(wre, vx, _mm256_mul_pd(wim, xsw));
        prod = _mm256_xor_pd(prod, flip_odd);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    const double wr = alpha.real(), wi = alpha.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + wr * xr + wi * xi, y[i].imag() + wi * xr - wr * xi};
    }
}

void avx2_rotate_pair(std::size_t n, cplx* x, cplx* y, double c, double s, cplx ph) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d pre = _mm256_set1_pd(ph.real());
    const __m256d pim = _mm256_set1_pd(ph.imag());
    std::size_t i = 0;
    double* px = reinterpret_cast<double*>(x);
    double* py = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        const __m256d vy = _mm256_loadu_pd(py + 2 * i);
        const __m256d ysw = _mm256_permute_pd(vy, 0x5);
        const __m256d t = _mm256_fmaddsub_pd(pre, vy, _mm256_mul_pd(pim, ysw));  // ph*y
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        _mm256_storeu_pd(px + 2 * i, _mm256_fnmadd_pd(vs, t, _mm256_mul_pd(vc, vx)));
        _mm256_storeu_pd(py + 2 * i, _mm256_fmadd_pd(vc, t, _mm256_mul_pd(vs, vx)));
    }
    const double pr = ph.real(), pi = ph.imag();
    for (; i < n; ++i) {
        const double yr = y[i].real(), yi = y[i].imag();
        const double tr = pr * yr - pi * yi;
        const double ti = pr * yi + pi * yr;
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = {c * xr - s * tr, c * xi - s * ti};
        y[i] = {s * xr + c * tr, s * xi + c * ti};
    }
}

const KernelTable kAvx2Table = {
    avx2_cdotu,  avx2_cdotc,     avx2_abs_prod_sum, avx2_phased_dot,
    avx2_axpy,   avx2_axpy_conj, avx2_rotate_pair,  "avx2",
};

}  // namespace

const KernelTable& avx2_table() { return kAvx2Table; }

}  // namespace risalloc::kernels

#endif  // RISALLOC_HAVE_AVX2
