#pragma once

#include "fraclap/sparse_operator.hpp"
#include "fraclap/types.hpp"

namespace fraclap {

/// The smallest-eigenpair block used to deflate a sparse SPSD operator:
///   f(A) b = Q f(Lambda) Q^T b + f(A_deflated) (I - Q Q^T) b.
/// For Neumann operators ell >= 1 captures the zero eigenvalue and the
/// constant null vector.
struct DeflationBasis {
    Vector eigenvalues;   // ascending, size ell
    Eigen::MatrixXd vectors; // N x ell, orthonormal columns

    Index count() const { return eigenvalues.size(); }
    bool empty() const { return count() == 0; }

    Vector project_out(const Vector& b) const {
        if (empty())
            return b;
        return b - vectors * (vectors.transpose() * b);
    }
};

/// Post-deflation spectral interval (safety factors 0.99 / 1.01 already
/// applied so the quadrature contour strictly encloses the retained
/// spectrum).
struct SpectralBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;

    double kappa() const { return lambda_max / lambda_min; }
    double modulus() const {
        // k = (sqrt(kappa)-1)/(sqrt(kappa)+1), written free of cancellation.
        const double r = std::sqrt(lambda_max) + std::sqrt(lambda_min);
        return (lambda_max - lambda_min) / (r * r);
    }
};

struct EigenSolveOptions {
    double residual_tol = 1e-9;  // relative to gershgorin_bound
    int max_restarts = 200;
    int basis_size = 0;          // 0 => automatic
};

/// Smallest `ell` eigenpairs of a sparse SPSD matrix by thick-restart
/// Lanczos with full reorthogonalisation. ell may equal N (full spectrum);
/// requests for a large fraction of the spectrum fall back to a dense
/// solve, which only makes sense for small matrices anyway.
DeflationBasis compute_deflation_basis(const SparseOperator& A, Index ell,
                                       const EigenSolveOptions& opt = {});

/// Extremal eigenvalue estimates of the deflated operator via Lanczos Ritz
/// values, padded by the safety factors. Throws when the deflated operator
/// is numerically singular (increase ell).
SpectralBounds estimate_spectral_bounds(const SparseOperator& A,
                                        const DeflationBasis& defl);

} // namespace fraclap
