#pragma once

#include <memory>
#include <optional>

#include "fraclap/contour.hpp"
#include "fraclap/deflation.hpp"
#include "fraclap/lanczos.hpp"
#include "fraclap/polyprec.hpp"
#include "fraclap/sparse_operator.hpp"

namespace fraclap {

struct MatfuncSettings {
    int quad_points = 32;     // P
    Index deflation = 1;      // ell; use 0 for strictly positive definite A
    double lanczos_tol = 1e-9;
    int max_iterations = 400;
    int poly_degree = 8;      // polynomial preconditioner degree
    double poly_kappa_threshold = 100.0; // disabled below this condition number
    bool check_refinement = false;       // compare against a 2P quadrature
};

/// Pre-computed spectral machinery for one sparse SPSD operator: deflation
/// basis, spectral bounds and (optionally) the polynomial preconditioner.
/// Immutable after construction and shareable across threads.
class MatfuncEngine {
public:
    static MatfuncEngine build(const SparseOperator& A, const MatfuncSettings& settings);

    const DeflationBasis& deflation() const { return deflation_; }
    const SpectralBounds& bounds() const { return bounds_; }
    const MatfuncSettings& settings() const { return settings_; }
    const PolyPreconditioner* preconditioner() const {
        return poly_ ? poly_.get() : nullptr;
    }

private:
    DeflationBasis deflation_;
    SpectralBounds bounds_;
    MatfuncSettings settings_;
    std::shared_ptr<PolyPreconditioner> poly_;
};

/// f(A) b by deflated contour quadrature over shifted Lanczos solves:
///   f(A) b = Q f(Lambda) Q^T b + Im sum_j w_j (z_j I - A)^{-1} b_defl.
Vector matfunc_apply(const SpectralFunction& f, const SparseOperator& A, const Vector& b,
                     const MatfuncEngine& engine, MatfuncStats* stats = nullptr);

/// Convenience overload with explicit pieces (testing / one-off use).
Vector matfunc_apply(const SpectralFunction& f, const SparseOperator& A, const Vector& b,
                     const DeflationBasis& defl, const SpectralBounds& bounds,
                     const MatfuncSettings& settings, MatfuncStats* stats = nullptr,
                     const PolyPreconditioner* precond = nullptr);

} // namespace fraclap
