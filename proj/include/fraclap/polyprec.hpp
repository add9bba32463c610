#pragma once

#include <functional>
#include <vector>

#include "fraclap/types.hpp"

namespace fraclap {

using MatVec = std::function<void(const Vector&, Vector&)>;

/// Least-squares residual polynomial preconditioner for families of shifted
/// systems (z I - A) x = b sharing one Krylov space.
///
/// q is the polynomial of the requested degree with q(0) = 1 minimising the
/// weighted L2 norm over [lambda_min, lambda_max] for the Jacobi weight with
/// parameters mu = 1/2, nu = -1/2. For every shift z the rational function
///   s_z(lambda) = (q(lambda) - q(z)) / (lambda - z)
/// is a polynomial, and right-preconditioning with s_z(A) turns the shifted
/// family into (q(z) I - q(A)) w = b: a shifted family in B = q(A) whose
/// Krylov space K_m(B, b) is the same for every shift. The residual of the
/// preconditioned system equals the residual of the original system, so
/// convergence checks carry over unchanged.
///
/// Everything is represented in the orthonormal-polynomial basis of the
/// weight (three-term recurrence), never in monomials.
class PolyPreconditioner {
public:
    /// Construct for the spectral interval [lambda_min, lambda_max].
    /// degree is the degree of q (default engine choice is 8).
    static PolyPreconditioner build(double lambda_min, double lambda_max, int degree);

    int degree() const { return static_cast<int>(series_.size()) - 1; }
    double interval_min() const { return lo_; }
    double interval_max() const { return hi_; }

    /// y = q(A) v; costs degree() matvecs with A.
    Vector apply_q(const MatVec& a_op, const Vector& v) const;

    /// q evaluated at a complex point (the transformed shift).
    Complex q_at(Complex z) const;

    /// Coefficients of s_z in the orthonormal basis (lambda-domain scaling
    /// included); size degree().
    std::vector<Complex> division_coeffs(Complex z) const;

    /// sum_r pi_r(T(A)) g_r via a generalised Clenshaw recurrence, where
    /// T maps [lambda_min, lambda_max] to the reference interval. Costs
    /// g.size()-1 matvecs. Used to recombine per-shift corrections.
    Vector clenshaw_combine(const MatVec& a_op, const std::vector<Vector>& g) const;

    /// Max |q| sampled on the spectral interval (diagnostic).
    double sup_on_interval() const { return sup_on_interval_; }

private:
    PolyPreconditioner() = default;

    Complex t_of(Complex z) const { return (z - lo_) / (hi_ - lo_); }

    double lo_ = 0.0, hi_ = 1.0;
    // Orthonormal three-term recurrence on the reference interval [0,1]:
    //   t pi_r = offdiag_[r+1] pi_{r+1} + diag_[r] pi_r + offdiag_[r] pi_{r-1}
    std::vector<double> diag_;    // b_0 .. b_d
    std::vector<double> offdiag_; // a_0 (=0), a_1 .. a_{d+1}
    std::vector<double> series_;  // c_0 .. c_d with q = sum c_r pi_r
    double pi0_ = 1.0;            // constant value of pi_0
    double sup_on_interval_ = 0.0;
};

} // namespace fraclap
