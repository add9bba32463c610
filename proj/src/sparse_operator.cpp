#include "fraclap/sparse_operator.hpp"

#include <cmath>

namespace fraclap {

double SparseOperator::gershgorin_bound() const {
    double bound = 0.0;
    for (Index i = 0; i < mat_.outerSize(); ++i) {
        double row = 0.0;
        for (Matrix::InnerIterator it(mat_, i); it; ++it)
            row += std::abs(it.value());
        bound = std::max(bound, row);
    }
    return bound;
}

double SparseOperator::symmetry_defect() const {
    Matrix diff = Matrix(mat_ - Matrix(mat_.transpose()));
    double max_abs = 0.0;
    for (Index i = 0; i < mat_.outerSize(); ++i)
        for (Matrix::InnerIterator it(mat_, i); it; ++it)
            max_abs = std::max(max_abs, std::abs(it.value()));
    double defect = 0.0;
    for (Index i = 0; i < diff.outerSize(); ++i)
        for (Matrix::InnerIterator it(diff, i); it; ++it)
            defect = std::max(defect, std::abs(it.value()));
    return max_abs > 0.0 ? defect / max_abs : 0.0;
}

Vector SparseOperator::row_sums() const {
    Vector ones = Vector::Ones(mat_.rows());
    return mat_ * ones;
}

} // namespace fraclap
