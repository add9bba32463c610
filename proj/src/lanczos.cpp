#include "fraclap/lanczos.hpp"

#include <cmath>

namespace fraclap {

ComplexVector solve_shifted_tridiagonal(const Vector& alpha, const Vector& beta,
                                        Complex shift, double rhs_scale) {
    const Index m = alpha.size();
    ComplexVector diag(m), rhs = ComplexVector::Zero(m);
    rhs[0] = rhs_scale;
    // Forward elimination of (shift I - T).
    diag[0] = shift - alpha[0];
    for (Index i = 1; i < m; ++i) {
        if (std::abs(diag[i - 1]) < 1e-300)
            throw NumericalError("shifted tridiagonal solve: zero pivot (shift on spectrum?)");
        const Complex l = -beta[i - 1] / diag[i - 1];
        diag[i] = (shift - alpha[i]) + l * beta[i - 1];
        rhs[i] -= l * rhs[i - 1];
    }
    ComplexVector y(m);
    if (std::abs(diag[m - 1]) < 1e-300)
        throw NumericalError("shifted tridiagonal solve: zero pivot (shift on spectrum?)");
    y[m - 1] = rhs[m - 1] / diag[m - 1];
    for (Index i = m - 2; i >= 0; --i)
        y[i] = (rhs[i] + beta[i] * y[i + 1]) / diag[i];
    return y;
}

Vector ShiftedLanczosOutcome::combine(const ComplexVector& weights) const {
    if (basis.empty())
        return Vector();
    // V * Im(sum_j w_j y_j); the basis is real so Im commutes with V.
    const Index m = alpha.size();
    ComplexVector acc = ComplexVector::Zero(m);
    for (size_t j = 0; j < y.size(); ++j)
        acc += weights[static_cast<Index>(j)] * y[j];
    Vector out = Vector::Zero(basis[0].size());
    for (Index i = 0; i < m; ++i)
        out += acc[i].imag() * basis[static_cast<size_t>(i)];
    return out;
}

ShiftedLanczosOutcome shifted_lanczos(const MatVec& op, const Vector& b,
                                      const std::vector<Complex>& shifts,
                                      const LanczosOptions& opt,
                                      const Eigen::MatrixXd* project_out) {
    const Index n = b.size();
    const size_t n_shifts = shifts.size();
    ShiftedLanczosOutcome out;
    out.b_norm = b.norm();
    out.residuals.assign(n_shifts, 0.0);
    if (out.b_norm == 0.0) {
        out.converged = true;
        out.alpha = Vector::Zero(0);
        out.beta = Vector::Zero(0);
        out.y.assign(n_shifts, ComplexVector::Zero(0));
        return out;
    }

    auto project = [&](Vector& v) {
        if (project_out && project_out->cols() > 0)
            v -= (*project_out) * (project_out->transpose() * v);
    };

    std::vector<double> alpha, beta;
    out.basis.reserve(64);
    Vector v = b;
    project(v);
    v /= v.norm();
    out.basis.push_back(v);

    Vector w(n);
    double beta_last = 0.0;
    double scale = 0.0;
    const double target = opt.tol * out.b_norm;

    for (int it = 0; it < opt.max_iterations; ++it) {
        const Vector& vj = out.basis.back();
        op(vj, w);
        ++out.stats.matvecs;
        if (out.basis.size() > 1)
            w -= beta_last * out.basis[out.basis.size() - 2];
        const double a = vj.dot(w);
        alpha.push_back(a);
        w -= a * vj;
        project(w);
        if (opt.full_reorth) {
            // Two MGS passes keep the basis orthogonal to working precision.
            for (int pass = 0; pass < 2; ++pass)
                for (const Vector& u : out.basis)
                    w -= u.dot(w) * u;
        }
        const double bnext = w.norm();
        scale = std::max({scale, std::abs(a), bnext});
        const Index m = static_cast<Index>(alpha.size());
        out.alpha = Eigen::Map<Vector>(alpha.data(), m);
        out.beta = m > 1 ? Eigen::Map<Vector>(beta.data(), m - 1) : Vector(0);
        out.beta_last = bnext;

        // Breakdown: b lies in an invariant subspace; solutions are exact.
        const bool broke = bnext <= 1e-14 * std::max(1e-300, scale);

        // Per-shift residuals from the tridiagonal data alone.
        double worst = 0.0;
        out.y.assign(n_shifts, ComplexVector());
        for (size_t j = 0; j < n_shifts; ++j) {
            out.y[j] = solve_shifted_tridiagonal(out.alpha, out.beta, shifts[j], out.b_norm);
            out.residuals[j] = std::abs(bnext * out.y[j][m - 1]);
            worst = std::max(worst, out.residuals[j]);
        }
        out.stats.lanczos_iterations = static_cast<int>(m);
        out.stats.worst_residual = worst / out.b_norm;
        if (worst <= target || broke) {
            out.converged = worst <= target || broke;
            out.breakdown = broke;
            return out;
        }
        beta.push_back(bnext);
        beta_last = bnext;
        out.basis.push_back(w / bnext);
    }
    out.converged = false;
    return out;
}

std::vector<ComplexVector> shifted_lanczos_solve(const SparseOperator& A, const Vector& b,
                                                 const std::vector<Complex>& shifts,
                                                 double tol,
                                                 const PolyPreconditioner* precond,
                                                 MatfuncStats* stats,
                                                 int max_iterations) {
    LanczosOptions opt;
    opt.tol = tol;
    opt.max_iterations = max_iterations;
    MatVec base = [&](const Vector& x, Vector& y) { y = A.apply(x); };

    std::vector<ComplexVector> solutions(shifts.size());
    if (!precond) {
        auto run = shifted_lanczos(base, b, shifts, opt);
        if (!run.converged)
            throw NumericalError("shifted Lanczos: no convergence in " +
                                 std::to_string(max_iterations) + " iterations, worst residual " +
                                 std::to_string(run.stats.worst_residual));
        const Index m = run.alpha.size();
        for (size_t j = 0; j < shifts.size(); ++j) {
            ComplexVector x = ComplexVector::Zero(b.size());
            for (Index i = 0; i < m; ++i)
                x += run.y[j][i] * run.basis[static_cast<size_t>(i)];
            solutions[j] = std::move(x);
        }
        if (stats)
            stats->accumulate(run.stats);
        return solutions;
    }

    // Preconditioned route: basis for B = q(A), shifts q(z_j); then
    // x_j = s_{z_j}(A) V y_j recovered with the division polynomials.
    MatVec bop = [&](const Vector& x, Vector& y) { y = precond->apply_q(base, x); };
    std::vector<Complex> qshifts(shifts.size());
    for (size_t j = 0; j < shifts.size(); ++j)
        qshifts[j] = precond->q_at(shifts[j]);
    auto run = shifted_lanczos(bop, b, qshifts, opt);
    if (!run.converged)
        throw NumericalError("preconditioned shifted Lanczos: no convergence, worst residual " +
                             std::to_string(run.stats.worst_residual));
    run.stats.matvecs *= precond->degree(); // each B application costs degree() matvecs
    run.stats.preconditioned = true;
    const Index m = run.alpha.size();
    const int d = precond->degree();
    for (size_t j = 0; j < shifts.size(); ++j) {
        ComplexVector wj = ComplexVector::Zero(b.size());
        for (Index i = 0; i < m; ++i)
            wj += run.y[j][i] * run.basis[static_cast<size_t>(i)];
        const auto dr = precond->division_coeffs(shifts[j]);
        // s_z(A) w = sum_r dr_r pi_r(T(A)) w; real/imaginary parts separately.
        std::vector<Vector> g_re(static_cast<size_t>(d)), g_im(static_cast<size_t>(d));
        for (int r = 0; r < d; ++r) {
            g_re[static_cast<size_t>(r)] =
                dr[static_cast<size_t>(r)].real() * wj.real() -
                dr[static_cast<size_t>(r)].imag() * wj.imag();
            g_im[static_cast<size_t>(r)] =
                dr[static_cast<size_t>(r)].real() * wj.imag() +
                dr[static_cast<size_t>(r)].imag() * wj.real();
        }
        Vector xr = precond->clenshaw_combine(base, g_re);
        Vector xi = precond->clenshaw_combine(base, g_im);
        run.stats.matvecs += 2 * (d - 1);
        solutions[j] = xr.cast<Complex>() + Complex(0.0, 1.0) * xi.cast<Complex>();
    }
    if (stats)
        stats->accumulate(run.stats);
    return solutions;
}

} // namespace fraclap
