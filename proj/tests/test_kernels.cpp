#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "risalloc/kernels.hpp"

using risalloc::kernels::cplx;
using risalloc::kernels::KernelTable;

namespace {

// deterministic pseudo-random complex data
std::vector<cplx> make_data(std::size_t n, std::uint64_t salt) {
    std::vector<cplx> v(n);
    std::uint64_t state = 0x243F6A8885A308D3ULL ^ salt;
    const auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    for (auto& x : v) x = {next(), next()};
    return v;
}

double mass(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 1e-300;
    for (std::size_t i = 0; i < a.size(); ++i) m += std::abs(a[i]) * std::abs(b[i]);
    return m;
}

void compare_tables(const KernelTable& ref, const KernelTable& alt, std::size_t n) {
    const auto a = make_data(n, 1 + n);
    const auto b = make_data(n, 1000 + n);
    const auto u = [&] {
        auto phases = make_data(n, 7 + n);
        for (auto& x : phases) x = std::polar(1.0, std::arg(x));
        return phases;
    }();
    const double scale = mass(a, b);

    const cplx du_r = ref.cdotu(n, a.data(), b.data());
    const cplx du_a = alt.cdotu(n, a.data(), b.data());
    CHECK(std::abs(du_r - du_a) <= 1e-13 * scale);

    const cplx dc_r = ref.cdotc(n, a.data(), b.data());
    const cplx dc_a = alt.cdotc(n, a.data(), b.data());
    CHECK(std::abs(dc_r - dc_a) <= 1e-13 * scale);

    CHECK(std::abs(ref.abs_prod_sum(n, a.data(), b.data()) -
                   alt.abs_prod_sum(n, a.data(), b.data())) <= 1e-13 * scale);

    const cplx pd_r = ref.phased_dot(n, a.data(), u.data(), b.data());
    const cplx pd_a = alt.phased_dot(n, a.data(), u.data(), b.data());
    CHECK(std::abs(pd_r - pd_a) <= 1e-13 * scale);

    const cplx alpha{0.37, -1.21};
    auto y_r = b, y_a = b;
    ref.axpy(n, alpha, a.data(), y_r.data());
    alt.axpy(n, alpha, a.data(), y_a.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_r[i] - y_a[i]) <= 1e-13 * (1.0 + std::abs(y_r[i])));

    y_r = b;
    y_a = b;
    ref.axpy_conj(n, alpha, a.data(), y_r.data());
    alt.axpy_conj(n, alpha, a.data(), y_a.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_r[i] - y_a[i]) <= 1e-13 * (1.0 + std::abs(y_r[i])));

    auto xr = a, yr = b, xa = a, ya = b;
    const double c = 0.8, s = 0.6;
    const cplx ph = std::polar(1.0, 0.41);
    ref.rotate_pair(n, xr.data(), yr.data(), c, s, ph);
    alt.rotate_pair(n, xa.data(), ya.data(), c, s, ph);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(xr[i] - xa[i]) <= 1e-13 * (1.0 + std::abs(xr[i])));
        CHECK(std::abs(yr[i] - ya[i]) <= 1e-13 * (1.0 + std::abs(yr[i])));
    }
}

}  // namespace

TEST_CASE("scalar kernels match naive complex arithmetic") {
    const std::size_t n = 37;
    const auto a = make_data(n, 5);
    const auto b = make_data(n, 6);
    cplx du{0, 0}, dc{0, 0};
    double aps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        du += a[i] * b[i];
        dc += std::conj(a[i]) * b[i];
        aps += std::abs(a[i]) * std::abs(b[i]);
    }
    const auto& t = risalloc::kernels::scalar_table();
    CHECK(std::abs(t.cdotu(n, a.data(), b.data()) - du) <= 1e-12 * mass(a, b));
    CHECK(std::abs(t.cdotc(n, a.data(), b.data()) - dc) <= 1e-12 * mass(a, b));
    CHECK(t.abs_prod_sum(n, a.data(), b.data()) == doctest::Approx(aps).epsilon(1e-13));
}

TEST_CASE("phased_dot equals explicit three-factor sum") {
    const std::size_t n = 19;
    const auto a = make_data(n, 11);
    const auto b = make_data(n, 12);
    auto u = make_data(n, 13);
    for (auto& x : u) x = std::polar(1.0, std::arg(x));
    cplx want{0, 0};
    for (std::size_t i = 0; i < n; ++i) want += std::conj(a[i]) * u[i] * b[i];
    const cplx got = risalloc::kernels::scalar_table().phased_dot(n, a.data(), u.data(), b.data());
    CHECK(std::abs(got - want) <= 1e-12 * mass(a, b));
}

TEST_CASE("rotate_pair is unitary on the pair") {
    const std::size_t n = 24;
    auto x = make_data(n, 21);
    auto y = make_data(n, 22);
    const auto& t = risalloc::kernels::scalar_table();
    const double nx = t.cdotc(n, x.data(), x.data()).real();
    const double ny = t.cdotc(n, y.data(), y.data()).real();
    t.rotate_pair(n, x.data(), y.data(), 0.6, 0.8, std::polar(1.0, -1.1));
    const double nx2 = t.cdotc(n, x.data(), x.data()).real();
    const double ny2 = t.cdotc(n, y.data(), y.data()).real();
    CHECK(nx + ny == doctest::Approx(nx2 + ny2).epsilon(1e-12));
}

TEST_CASE("simd lane agrees with scalar reference on many sizes") {
    if (!risalloc::kernels::avx2_compiled() || !risalloc::kernels::avx2_supported()) {
        MESSAGE("avx2 lane unavailable; dispatch falls back to scalar");
        CHECK(std::string(risalloc::kernels::active().name) == "scalar");
        return;
    }
#if defined(RISALLOC_HAVE_AVX2)
    const auto& scalar = risalloc::kernels::scalar_table();
    const auto& simd = risalloc::kernels::avx2_table();
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 100, 127, 128, 129, 257, 1000}) {
        compare_tables(scalar, simd, n);
    }
#endif
}

TEST_CASE("active table reflects the runtime capability") {
    const auto& t = risalloc::kernels::active();
    if (risalloc::kernels::avx2_compiled() && risalloc::kernels::avx2_supported()) {
        CHECK((std::string(t.name) == "avx2" || std::string(t.name) == "scalar"));
    } else {
        CHECK(std::string(t.name) == "scalar");
    }
}
