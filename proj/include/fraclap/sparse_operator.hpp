#pragma once

#include <Eigen/Sparse>

#include "fraclap/types.hpp"

namespace fraclap {

/// Symmetric positive semi-definite sparse matrix representation of the
/// (negative) Laplacian under homogeneous boundary conditions. Immutable
/// after construction; safe for concurrent reads.
class SparseOperator {
public:
    using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    SparseOperator() = default;
    explicit SparseOperator(Matrix mat) : mat_(std::move(mat)) {
        mat_.makeCompressed();
    }

    Index dim() const { return mat_.rows(); }
    Index nnz() const { return mat_.nonZeros(); }
    const Matrix& matrix() const { return mat_; }

    Vector apply(const Vector& x) const { return mat_ * x; }

    /// max_i sum_j |a_ij|; cheap upper bound on the spectral norm.
    double gershgorin_bound() const;

    /// Largest relative symmetry defect |a_ij - a_ji| / max|a|.
    double symmetry_defect() const;

    /// Row sums, all ~0 for Neumann assemblies.
    Vector row_sums() const;

private:
    Matrix mat_;
};

/// Diagonal mass matrix plus stiffness matrix from a finite volume
/// discretisation: the Laplacian representation is M^{-1} K.
struct MassStiffness {
    Vector mass;        // diagonal of M, all > 0 (cm^3)
    SparseOperator stiffness; // K, symmetric, zero row sums (cm)
};

/// Symmetrised finite volume operator: A~ = M^{-1/2} K M^{-1/2} together
/// with the scaling vectors needed to evaluate functions of M^{-1} K:
///
///   f(M^{-1} K) b = M^{-1/2} f(A~) M^{1/2} b.
///
/// When the scaling vectors are empty the operator is M = I (pure finite
/// differences) and A~ is the Laplacian itself.
struct SymmetrizedOperator {
    SparseOperator sym;
    Vector sqrt_mass;     // M^{1/2}  (empty => identity)
    Vector inv_sqrt_mass; // M^{-1/2} (empty => identity)

    bool has_mass_scaling() const { return sqrt_mass.size() > 0; }

    Vector to_scaled(const Vector& b) const {
        return has_mass_scaling() ? Vector(sqrt_mass.cwiseProduct(b)) : b;
    }
    Vector from_scaled(const Vector& y) const {
        return has_mass_scaling() ? Vector(inv_sqrt_mass.cwiseProduct(y)) : y;
    }
};

} // namespace fraclap
