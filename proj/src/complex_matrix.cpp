#include "risalloc/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "risalloc/errors.hpp"
#include "risalloc/kernels.hpp"

namespace risalloc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidInput("ComplexMatrix: entry count does not match dimensions");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

std::vector<cplx> ComplexMatrix::column(std::size_t j) const {
    std::vector<cplx> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

double ComplexMatrix::frobenius_norm() const {
    const cplx s = kernels::cdotc(data_.size(), data_.data(), data_.data());
    return std::sqrt(s.real());
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::multiply(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) throw InvalidInput("ComplexMatrix::multiply: dimension mismatch");
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx* dst = out.row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            kernels::axpy(other.cols_, (*this)(i, k), other.row(k), dst);
        }
    }
    return out;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& x) const {
    if (x.size() != cols_) throw InvalidInput("ComplexMatrix::apply: dimension mismatch");
    std::vector<cplx> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = kernels::cdotu(cols_, row(i), x.data());
    return y;
}

std::vector<cplx> ComplexMatrix::apply_adjoint(const std::vector<cplx>& x) const {
    if (x.size() != rows_) throw InvalidInput("ComplexMatrix::apply_adjoint: dimension mismatch");
    std::vector<cplx> y(cols_, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        kernels::axpy_conj(cols_, x[i], row(i), y.data());
    }
    return y;
}

ComplexMatrix ComplexMatrix::scale_rows(const std::vector<cplx>& factors) const {
    if (factors.size() != rows_) throw InvalidInput("ComplexMatrix::scale_rows: dimension mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        kernels::axpy(cols_, factors[i], row(i), out.row(i));
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw InvalidInput("ComplexMatrix::operator-: dimension mismatch");
    }
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

double vector_norm(const std::vector<cplx>& v) {
    const cplx s = kernels::cdotc(v.size(), v.data(), v.data());
    return std::sqrt(s.real());
}

cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw InvalidInput("inner_product: length mismatch");
    return kernels::cdotc(a.size(), a.data(), b.data());
}

void normalize(std::vector<cplx>& v) {
    const double n = vector_norm(v);
    if (n == 0.0) throw DegenerateMatrix("normalize: zero vector");
    for (cplx& x : v) x /= n;
}

}  // namespace risalloc
