#include "fraclap/matfunc.hpp"

#include <cmath>

namespace fraclap {

MatfuncEngine MatfuncEngine::build(const SparseOperator& A, const MatfuncSettings& settings) {
    MatfuncEngine e;
    e.settings_ = settings;
    e.deflation_ = compute_deflation_basis(A, settings.deflation);
    e.bounds_ = estimate_spectral_bounds(A, e.deflation_);
    if (settings.poly_degree > 0 && e.bounds_.kappa() >= settings.poly_kappa_threshold)
        e.poly_ = std::make_shared<PolyPreconditioner>(PolyPreconditioner::build(
            e.bounds_.lambda_min, e.bounds_.lambda_max, settings.poly_degree));
    return e;
}

namespace {

// Contour part alone: Im sum_j w_j (z_j I - A)^{-1} b with b already in the
// deflated complement. Falls back to the unpreconditioned basis if the
// preconditioned iteration stalls.
Vector contour_part(const SpectralFunction& f, const SparseOperator& A, const Vector& b,
                    const DeflationBasis& defl, const SpectralBounds& bounds, int points,
                    double tol, int max_iter, const PolyPreconditioner* precond,
                    MatfuncStats& stats) {
    const ContourQuadrature quad = build_contour(f, bounds, points);
    stats.quad_points = points;

    LanczosOptions opt;
    opt.tol = tol;
    opt.max_iterations = max_iter;
    const Eigen::MatrixXd* proj = defl.empty() ? nullptr : &defl.vectors;

    MatVec base = [&](const Vector& x, Vector& y) { y = A.apply(x); };
    ComplexVector weights(points);
    for (int j = 0; j < points; ++j)
        weights[j] = quad.weights[static_cast<size_t>(j)];

    if (precond) {
        MatVec bop = [&](const Vector& x, Vector& y) { y = precond->apply_q(base, x); };
        std::vector<Complex> qshifts(quad.poles.size());
        for (size_t j = 0; j < quad.poles.size(); ++j)
            qshifts[j] = precond->q_at(quad.poles[j]);
        auto run = shifted_lanczos(bop, b, qshifts, opt, proj);
        if (run.converged) {
            run.stats.matvecs *= precond->degree();
            run.stats.preconditioned = true;
            stats.accumulate(run.stats);
            // x_j = s_{z_j}(A) V y_j; recombine all shifts through the
            // orthonormal-basis Clenshaw sum (Im taken early, V real).
            const Index m = run.alpha.size();
            const int d = precond->degree();
            std::vector<ComplexVector> h(static_cast<size_t>(d),
                                         ComplexVector::Zero(m));
            for (size_t j = 0; j < quad.poles.size(); ++j) {
                const auto dr = precond->division_coeffs(quad.poles[j]);
                const Complex wj = quad.weights[j];
                for (int r = 0; r < d; ++r)
                    h[static_cast<size_t>(r)] += wj * dr[static_cast<size_t>(r)] * run.y[j];
            }
            std::vector<Vector> g(static_cast<size_t>(d));
            for (int r = 0; r < d; ++r) {
                ComplexVector hr = h[static_cast<size_t>(r)];
                Vector gr = Vector::Zero(b.size());
                for (Index i = 0; i < m; ++i)
                    gr += hr[i].imag() * run.basis[static_cast<size_t>(i)];
                g[static_cast<size_t>(r)] = std::move(gr);
            }
            Vector out = precond->clenshaw_combine(base, g);
            stats.matvecs += d - 1;
            return out;
        }
        // Stalled; retry without preconditioning below.
        stats.accumulate(run.stats);
    }

    auto run = shifted_lanczos(base, b, std::vector<Complex>(quad.poles.begin(),
                                                             quad.poles.end()),
                               opt, proj);
    if (!run.converged)
        throw NumericalError("matfunc contour solve: no convergence in " +
                             std::to_string(max_iter) + " iterations, worst residual " +
                             std::to_string(run.stats.worst_residual));
    stats.accumulate(run.stats);
    return run.combine(weights);
}

} // namespace

Vector matfunc_apply(const SpectralFunction& f, const SparseOperator& A, const Vector& b,
                     const DeflationBasis& defl, const SpectralBounds& bounds,
                     const MatfuncSettings& settings, MatfuncStats* stats,
                     const PolyPreconditioner* precond) {
    MatfuncStats local;

    // Integer power collapses to the sparse matrix itself.
    if (f.kind == SpectralFunction::Kind::power && f.p1 == 1.0) {
        if (stats) {
            stats->used_fast_path = true;
            ++stats->matvecs;
        }
        return A.apply(b);
    }

    // Deflated block, handled spectrally and exactly.
    Vector result = Vector::Zero(b.size());
    Vector b_hat = b;
    if (!defl.empty()) {
        const Vector coeff = defl.vectors.transpose() * b;
        Vector fcoeff(coeff.size());
        for (Index i = 0; i < coeff.size(); ++i)
            fcoeff[i] = f.eval_real(defl.eigenvalues[i]) * coeff[i];
        result = defl.vectors * fcoeff;
        b_hat -= defl.vectors * coeff;
        // Second projection pass removes the rounding residue, so a fully
        // deflated b skips the contour cleanly.
        b_hat -= defl.vectors * (defl.vectors.transpose() * b_hat);
    }

    const double bhat_norm = b_hat.norm();
    if (bhat_norm > 1e-14 * std::max(b.norm(), 1e-300)) {
        // Functions growing at infinity feed the conformal map's pole at
        // infinity into the midpoint rule and flatten its convergence.
        // Factor f(z) = z g(z) with g decaying, run the quadrature on g and
        // multiply by the sparse matrix exactly.
        SpectralFunction g = f;
        bool factored = false;
        if (f.kind == SpectralFunction::Kind::power && f.p1 > 0.0) {
            g.p1 -= 1.0;
            factored = true;
        } else if (f.kind == SpectralFunction::Kind::power_difference &&
                   std::max(f.p1, f.p2) > 0.0) {
            g.p1 -= 1.0;
            g.p2 -= 1.0;
            factored = true;
        }
        Vector coarse =
            contour_part(g, A, b_hat, defl, bounds, settings.quad_points,
                         settings.lanczos_tol, settings.max_iterations, precond, local);
        if (factored)
            coarse = A.apply(coarse);
        result += coarse;
        if (settings.check_refinement) {
            MatfuncStats fine_stats;
            Vector fine =
                contour_part(g, A, b_hat, defl, bounds, 2 * settings.quad_points,
                             settings.lanczos_tol, settings.max_iterations, precond,
                             fine_stats);
            if (factored)
                fine = A.apply(fine);
            local.refinement_error =
                (fine - coarse).norm() / std::max(fine.norm(), 1e-300);
            local.accuracy_warning =
                local.refinement_error > 10.0 * settings.lanczos_tol;
        }
    }

    if (stats)
        stats->accumulate(local);
    return result;
}

Vector matfunc_apply(const SpectralFunction& f, const SparseOperator& A, const Vector& b,
                     const MatfuncEngine& engine, MatfuncStats* stats) {
    return matfunc_apply(f, A, b, engine.deflation(), engine.bounds(), engine.settings(),
                         stats, engine.preconditioner());
}

} // namespace fraclap
