#pragma once

// Independent reference computations the tests check the library against.
// Everything here goes through dense eigendecompositions, quadrature of
// defining integrals, theta series or fine-step ODE integration - never
// through the code paths under test.

#include <Eigen/Dense>
#include <functional>

#include "fraclap/contour.hpp"
#include "fraclap/sparse_operator.hpp"

namespace oracle {

using fraclap::Complex;
using fraclap::Index;
using fraclap::Vector;

Eigen::MatrixXd densify(const fraclap::SparseOperator& A);

/// Dense spectral calculator for a symmetric matrix.
class DenseSpectral {
public:
    explicit DenseSpectral(const Eigen::MatrixXd& A);
    explicit DenseSpectral(const fraclap::SparseOperator& A);

    const Vector& eigenvalues() const { return lambda_; }
    const Eigen::MatrixXd& eigenvectors() const { return V_; }

    /// V f(Lambda) V^T b with a scalar function of the eigenvalue.
    Vector apply(const std::function<double(double)>& f, const Vector& b) const;

    /// Spectral matrix function with the library's function object
    /// (continuous extension at 0 included).
    Vector apply(const fraclap::SpectralFunction& f, const Vector& b) const;

    /// Direct variable-order evaluation: row i gets eigenvalues raised to
    /// power(i). powers holds the per-node exponent alpha_i / 2.
    Vector apply_variable_order(const Vector& powers, const Vector& b) const;

private:
    Vector lambda_;
    Eigen::MatrixXd V_;
};

/// Dense oracle for f(M^{-1} K) through the generalized symmetric
/// eigenproblem K v = lambda M v (M diagonal positive).
class DenseGeneralized {
public:
    DenseGeneralized(const Vector& mass, const Eigen::MatrixXd& K);

    const Vector& eigenvalues() const { return lambda_; }

    Vector apply(const fraclap::SpectralFunction& f, const Vector& b) const;
    Vector apply_variable_order(const Vector& powers, const Vector& b) const;

private:
    Vector lambda_;
    Eigen::MatrixXd V_;     // M-orthonormal eigenvectors
    Eigen::MatrixXd VtM_;   // V^T M
};

/// Complete elliptic integral K(k) by adaptive Gauss-Legendre quadrature of
/// the defining integral (independent of the AGM implementation).
double elliptic_K_quadrature(double k);

/// Jacobi elliptic functions via theta series (A&S 16.36), valid for
/// complex arguments in the convergence strip.
void jacobi_theta_oracle(Complex u, double k, Complex& sn, Complex& cn, Complex& dn);

/// High-resolution RK4 integration of the six-gate ODE system
/// dG/dt = alpha(v)(1-G) - beta(v)G at frozen voltage, plus the calcium
/// equation, over dt in n_sub substeps.
void br_gate_ode_reference(double v, double dt, int n_sub, double* gates7);

/// Analytic eigenvalues of the 1D symmetric-Neumann finite difference
/// Laplacian: lambda_k = (4/dx^2) sin^2(k pi / (2N)), k = 0..N-1.
Vector neumann_1d_spectrum(Index n, double dx);

} // namespace oracle
