#pragma once

#include <optional>
#include <vector>

#include "fraclap/polyprec.hpp"
#include "fraclap/sparse_operator.hpp"
#include "fraclap/types.hpp"

namespace fraclap {

struct LanczosOptions {
    double tol = 1e-9;       // relative residual target, per shift
    int max_iterations = 400;
    bool full_reorth = true; // two-pass modified Gram-Schmidt vs all basis vectors
};

/// One Lanczos run solving the whole family (z_j I - Op) x_j = b from a
/// single basis. The tridiagonal solutions y_j satisfy
///   x_j = V y_j,  ||b - (z_j I - Op) x_j|| = |beta_m| |y_j[m-1]|.
struct ShiftedLanczosOutcome {
    std::vector<Vector> basis;       // v_1 .. v_m
    Vector alpha;                    // diagonal of T_m
    Vector beta;                     // subdiagonal (size m-1)
    double beta_last = 0.0;          // beta_m, residual factor
    double b_norm = 0.0;
    std::vector<ComplexVector> y;    // per-shift tridiagonal solutions
    std::vector<double> residuals;   // per-shift absolute residual norms
    bool breakdown = false;          // invariant subspace found
    bool converged = false;
    MatfuncStats stats;

    /// V * Im(sum_j weights_j y_j); weights has one entry per shift.
    Vector combine(const ComplexVector& weights) const;
};

/// Krylov driver. `op` applies the symmetric operator; `project_out`, when
/// present (N x l), is removed from every new basis vector so the process
/// stays in the orthogonal complement of a deflation basis.
ShiftedLanczosOutcome shifted_lanczos(const MatVec& op, const Vector& b,
                                      const std::vector<Complex>& shifts,
                                      const LanczosOptions& opt,
                                      const Eigen::MatrixXd* project_out = nullptr);

/// Solve (z I - T_m) y = rhs_scale * e_1 for a complex shift; T_m given by
/// its diagonal/subdiagonal. Thomas elimination; pivots are bounded below
/// by |Im z| for complex shifts, and the system is definite for real shifts
/// outside the spectrum.
ComplexVector solve_shifted_tridiagonal(const Vector& alpha, const Vector& beta,
                                        Complex shift, double rhs_scale);

/// Public solve operation: one basis, many shifts, full solution vectors.
/// With a preconditioner the basis is built for B = q(A) and the solutions
/// are recovered through the division polynomials; the reported residuals
/// are those of the *original* systems either way.
std::vector<ComplexVector> shifted_lanczos_solve(const SparseOperator& A, const Vector& b,
                                                 const std::vector<Complex>& shifts,
                                                 double tol,
                                                 const PolyPreconditioner* precond = nullptr,
                                                 MatfuncStats* stats = nullptr,
                                                 int max_iterations = 400);

} // namespace fraclap
