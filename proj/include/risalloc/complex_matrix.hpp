#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace risalloc {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    std::vector<cplx> column(std::size_t j) const;

    bool all_finite() const;
    double frobenius_norm() const;
    ComplexMatrix adjoint() const;

    /// this * other via the kernel layer.
    ComplexMatrix multiply(const ComplexMatrix& other) const;
    /// this * x
    std::vector<cplx> apply(const std::vector<cplx>& x) const;
    /// this^H * x
    std::vector<cplx> apply_adjoint(const std::vector<cplx>& x) const;
    /// this with row i scaled by factors[i] (diag(factors) * this).
    ComplexMatrix scale_rows(const std::vector<cplx>& factors) const;

    ComplexMatrix operator-(const ComplexMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

double vector_norm(const std::vector<cplx>& v);
cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b);  // conj(a).b
void normalize(std::vector<cplx>& v);

}  // namespace risalloc
