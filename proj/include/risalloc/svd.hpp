#pragma once

#include <vector>

#include "risalloc/complex_matrix.hpp"

namespace risalloc {

/// Economy-size singular value decomposition A = U diag(s) V^H with
/// k = min(rows, cols) columns in U and V.
///
/// Singular values are nonincreasing; U and V have orthonormal columns. The
/// per-pair unit-phase freedom is fixed so the first nonzero entry of each
/// right vector is real nonnegative.
struct SvdResult {
    std::vector<double> singular_values;
    ComplexMatrix left_vectors;   // rows x k
    ComplexMatrix right_vectors;  // cols x k
    std::size_t rank = 0;         // values above 1e-12 * largest

    std::vector<cplx> left(std::size_t i) const { return left_vectors.column(i); }
    std::vector<cplx> right(std::size_t i) const { return right_vectors.column(i); }
};

SvdResult svd(const ComplexMatrix& a);

struct SingularTriplet {
    double sigma = 0.0;
    std::vector<cplx> left;
    std::vector<cplx> right;
};

/// Largest singular value with its left/right singular vectors.
/// Throws DegenerateMatrix for the zero matrix.
SingularTriplet dominant_singular_triplet(const ComplexMatrix& a);

}  // namespace risalloc
