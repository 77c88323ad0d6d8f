#include "risalloc/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "risalloc/errors.hpp"
#include "risalloc/kernels.hpp"

namespace risalloc {

namespace {

constexpr double kRankTolerance = 1e-12;

// Column-major workspace for the one-sided Jacobi sweeps: rotations touch
// whole columns, so columns are kept contiguous.
struct ColMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    explicit ColMat(const ComplexMatrix& a) : rows(a.rows()), cols(a.cols()), data(a.size()) {
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t i = 0; i < rows; ++i) data[j * rows + i] = a(i, j);
        }
    }
    ColMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, cplx{0.0, 0.0}) {}

    cplx* col(std::size_t j) { return data.data() + j * rows; }
    const cplx* col(std::size_t j) const { return data.data() + j * rows; }
};

// Orthogonalizes the columns of `work` in place by plane rotations and
// accumulates them into `v` (initialized to identity).
void jacobi_sweeps(ColMat& work, ColMat& v) {
    const std::size_t n = work.cols;
    if (n < 2) return;
    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 64;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx* cp = work.col(p);
                cplx* cq = work.col(q);
                const double app = kernels::cdotc(work.rows, cp, cp).real();
                const double aqq = kernels::cdotc(work.rows, cq, cq).real();
                if (app == 0.0 || aqq == 0.0) continue;
                const cplx apq = kernels::cdotc(work.rows, cp, cq);
                const double mag = std::abs(apq);
                if (mag <= kOffTol * std::sqrt(app * aqq)) continue;
                rotated = true;

                // Twist column q by ph so the pair Gram matrix becomes real,
                // then rotate to zero its off-diagonal entry.
                const cplx ph = std::conj(apq) / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                kernels::rotate_pair(work.rows, cp, cq, c, s, ph);
                kernels::rotate_pair(v.rows, v.col(p), v.col(q), c, s, ph);
            }
        }
        if (!rotated) break;
    }
}

// Deterministic orthonormal filler for null-space columns of U.
void complete_basis(ColMat& u, std::size_t from) {
    const std::size_t m = u.rows;
    std::size_t next_axis = 0;
    for (std::size_t j = from; j < u.cols; ++j) {
        std::vector<cplx> cand(m);
        for (;; ++next_axis) {
            if (next_axis >= m) throw DegenerateMatrix("svd: basis completion failed");
            std::fill(cand.begin(), cand.end(), cplx{0.0, 0.0});
            cand[next_axis] = 1.0;
            for (std::size_t k = 0; k < j; ++k) {
                const cplx proj = kernels::cdotc(m, u.col(k), cand.data());
                kernels::axpy(m, -proj, u.col(k), cand.data());
            }
            const double nrm = std::sqrt(kernels::cdotc(m, cand.data(), cand.data()).real());
            if (nrm > 1e-8) {
                for (cplx& x : cand) x /= nrm;
                break;
            }
        }
        std::copy(cand.begin(), cand.end(), u.col(j));
        ++next_axis;
    }
}

SvdResult svd_tall(const ComplexMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    ColMat work(a);
    ColMat v(n, n);
    for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

    jacobi_sweeps(work, v);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        sigma[j] = std::sqrt(kernels::cdotc(m, work.col(j), work.col(j)).real());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    ColMat u(m, n);
    ColMat vs(n, n);
    std::vector<double> svals(n);
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        svals[j] = sigma[src];
        std::copy(v.col(src), v.col(src) + n, vs.col(j));
        if (sigma[src] > 0.0) {
            const cplx* wc = work.col(src);
            cplx* uc = u.col(j);
            for (std::size_t i = 0; i < m; ++i) uc[i] = wc[i] / sigma[src];
            nonzero = j + 1;
        }
    }
    complete_basis(u, nonzero);

    SvdResult res;
    res.singular_values = std::move(svals);
    res.left_vectors = ComplexMatrix(m, n);
    res.right_vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) res.left_vectors(i, j) = u.col(j)[i];
        for (std::size_t i = 0; i < n; ++i) res.right_vectors(i, j) = vs.col(j)[i];
    }
    return res;
}

void apply_phase_convention(SvdResult& r) {
    const std::size_t k = r.singular_values.size();
    const std::size_t vn = r.right_vectors.rows();
    const std::size_t un = r.left_vectors.rows();
    for (std::size_t j = 0; j < k; ++j) {
        double peak = 0.0;
        for (std::size_t i = 0; i < vn; ++i) peak = std::max(peak, std::abs(r.right_vectors(i, j)));
        if (peak == 0.0) continue;
        std::size_t first = 0;
        while (first < vn && std::abs(r.right_vectors(first, j)) <= 1e-14 * peak) ++first;
        const cplx pivot = r.right_vectors(first, j);
        const double mag = std::abs(pivot);
        if (mag == 0.0) continue;
        const cplx rot = std::conj(pivot) / mag;
        for (std::size_t i = 0; i < vn; ++i) r.right_vectors(i, j) *= rot;
        for (std::size_t i = 0; i < un; ++i) r.left_vectors(i, j) *= rot;
    }
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
    if (a.empty()) throw InvalidInput("svd: empty matrix");
    if (!a.all_finite()) throw InvalidInput("svd: non-finite entries");

    SvdResult res;
    if (a.rows() >= a.cols()) {
        res = svd_tall(a);
    } else {
        SvdResult t = svd_tall(a.adjoint());
        res.singular_values = std::move(t.singular_values);
        res.left_vectors = std::move(t.right_vectors);
        res.right_vectors = std::move(t.left_vectors);
    }
    apply_phase_convention(res);

    const double top = res.singular_values.empty() ? 0.0 : res.singular_values.front();
    res.rank = 0;
    for (double s : res.singular_values) {
        if (s > kRankTolerance * top) ++res.rank;
    }
    if (top == 0.0) res.rank = 0;
    return res;
}

SingularTriplet dominant_singular_triplet(const ComplexMatrix& a) {
    if (a.empty()) throw InvalidInput("dominant_singular_triplet: empty matrix");
    const SvdResult full = svd(a);
    if (full.singular_values.empty() || full.singular_values.front() == 0.0) {
        throw DegenerateMatrix("dominant_singular_triplet: zero matrix");
    }
    SingularTriplet t;
    t.sigma = full.singular_values.front();
    t.left = full.left(0);
    t.right = full.right(0);
    return t;
}

}  // namespace risalloc
