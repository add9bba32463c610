#include "fraclap/deflation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>

namespace fraclap {

namespace {

// Deterministic pseudo-random start mixed with the constant vector; the
// constant component captures the Neumann null space immediately.
Vector starting_vector(Index n) {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i)
        v[i] = 1.0 + 0.05 * dist(rng);
    return v / v.norm();
}

Eigen::MatrixXd densify(const SparseOperator& A) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(A.dim(), A.dim());
    const auto& m = A.matrix();
    for (Index i = 0; i < m.outerSize(); ++i)
        for (SparseOperator::Matrix::InnerIterator it(m, i); it; ++it)
            dense(it.row(), it.col()) = it.value();
    return dense;
}

DeflationBasis dense_smallest(const SparseOperator& A, Index ell) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(densify(A));
    DeflationBasis out;
    out.eigenvalues = es.eigenvalues().head(ell);
    out.vectors = es.eigenvectors().leftCols(ell);
    return out;
}

} // namespace

DeflationBasis compute_deflation_basis(const SparseOperator& A, Index ell,
                                       const EigenSolveOptions& opt) {
    const Index n = A.dim();
    if (ell < 0 || ell > n)
        throw ConfigError("compute_deflation_basis: ell must lie in [0, N]");
    if (ell == 0)
        return DeflationBasis{Vector(0), Eigen::MatrixXd(n, 0)};
    // Thick restarts stop paying off once a sizable fraction of the
    // spectrum is requested.
    if (3 * ell >= n || n <= 64)
        return dense_smallest(A, ell);

    const double a_norm = std::max(A.gershgorin_bound(), 1e-300);
    const double res_target = opt.residual_tol * a_norm;
    const Index m_max = opt.basis_size > 0
                            ? std::min<Index>(n, opt.basis_size)
                            : std::min<Index>(n, std::max<Index>(2 * ell + 24, 40));

    // Thick-restart Lanczos: after each sweep the projected matrix has the
    // arrowhead-plus-tridiagonal form [diag(theta) s; s^T T_tail].
    Eigen::MatrixXd basis(n, m_max + 1);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m_max, m_max);
    Index k = 0;               // retained Ritz vectors at sweep start
    Vector arrow(0);           // couplings of column k to the retained block

    basis.col(0) = starting_vector(n);

    Vector w(n);
    int refill_count = 0;
    for (int restart = 0; restart < opt.max_restarts; ++restart) {
        double beta_m = 0.0;
        for (Index j = k; j < m_max; ++j) {
            w = A.apply(basis.col(j));
            if (j == k && k > 0)
                for (Index i = 0; i < k; ++i)
                    w -= arrow[i] * basis.col(i);
            else if (j > k)
                w -= S(j, j - 1) * basis.col(j - 1);
            const double a = basis.col(j).dot(w);
            S(j, j) = a;
            w -= a * basis.col(j);
            for (int pass = 0; pass < 2; ++pass)
                for (Index i = 0; i <= j; ++i)
                    w -= basis.col(i).dot(w) * basis.col(i);
            double b = w.norm();
            if (b <= 1e-13 * a_norm) {
                // Invariant subspace. A fresh orthogonal direction couples
                // to nothing that came before, so the stored beta is zero.
                std::mt19937_64 rng(0xabcdULL + static_cast<unsigned long long>(++refill_count));
                std::uniform_real_distribution<double> dist(-1.0, 1.0);
                for (Index i = 0; i < n; ++i)
                    w[i] = dist(rng);
                for (int pass = 0; pass < 2; ++pass)
                    for (Index i = 0; i <= j; ++i)
                        w -= basis.col(i).dot(w) * basis.col(i);
                const double nb = w.norm();
                basis.col(j + 1) = nb > 1e-8 ? Vector(w / nb) : Vector(Vector::Zero(n));
                b = 0.0;
            } else {
                basis.col(j + 1) = w / b;
            }
            if (j + 1 < m_max) {
                S(j + 1, j) = b;
                S(j, j + 1) = b;
            }
            beta_m = b;
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S.topLeftCorner(m_max, m_max));
        const Vector theta = es.eigenvalues();
        const Eigen::MatrixXd U = es.eigenvectors();

        bool all_converged = true;
        for (Index i = 0; i < ell; ++i)
            if (std::abs(beta_m * U(m_max - 1, i)) > res_target)
                all_converged = false;

        if (all_converged) {
            DeflationBasis out;
            out.eigenvalues = theta.head(ell);
            out.vectors = basis.leftCols(m_max) * U.leftCols(ell);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(out.vectors);
            out.vectors = qr.householderQ() * Eigen::MatrixXd::Identity(n, ell);
            return out;
        }

        k = std::min<Index>(ell + std::max<Index>(ell, 8), m_max - 2);
        Eigen::MatrixXd kept = basis.leftCols(m_max) * U.leftCols(k);
        basis.leftCols(k) = kept;
        basis.col(k) = basis.col(m_max);
        S.setZero();
        arrow = Vector(k);
        for (Index i = 0; i < k; ++i) {
            S(i, i) = theta[i];
            arrow[i] = beta_m * U(m_max - 1, i);
            S(i, k) = arrow[i];
            S(k, i) = arrow[i];
        }
    }
    throw NumericalError("compute_deflation_basis: no convergence after " +
                         std::to_string(opt.max_restarts) + " restarts");
}

SpectralBounds estimate_spectral_bounds(const SparseOperator& A,
                                        const DeflationBasis& defl) {
    const Index n = A.dim();
    const double gersh = std::max(A.gershgorin_bound(), 1e-300);
    const Index ell = defl.count();

    double lam_lo = 0.0, lam_hi = 0.0;
    if (n <= 128 || ell + 2 >= n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(densify(A));
        const Vector& ev = es.eigenvalues();
        lam_lo = ev[std::min<Index>(ell, n - 1)];
        lam_hi = ev[n - 1];
    } else {
        // Smallest retained eigenvalue: converge it properly (a mere Ritz
        // stagnation estimate can sit far above the true value, which would
        // leave eigencomponents outside the quadrature contour). A loose
        // residual suffices for an interval endpoint under the 0.99 pad.
        EigenSolveOptions opt;
        opt.residual_tol = 1e-5;
        DeflationBasis lowest = compute_deflation_basis(A, ell + 1, opt);
        lam_lo = lowest.eigenvalues[ell];

        // Largest eigenvalue: plain Lanczos sweep to stagnation; the top of
        // the spectrum converges quickly and 1.01 covers the remainder.
        const Index m_max = std::min<Index>(n, 160);
        std::vector<Vector> basis;
        std::vector<double> alpha, beta;
        Vector v = starting_vector(n);
        basis.push_back(v);
        double prev_hi = 0.0;
        int stagnant = 0;
        Vector w(n);
        for (Index it = 0; it < m_max; ++it) {
            w = A.apply(basis.back());
            if (basis.size() > 1)
                w -= beta.back() * basis[basis.size() - 2];
            const double a = basis.back().dot(w);
            alpha.push_back(a);
            w -= a * basis.back();
            for (int pass = 0; pass < 2; ++pass)
                for (const Vector& u : basis)
                    w -= u.dot(w) * u;
            const double b = w.norm();
            const Index m = static_cast<Index>(alpha.size());
            const bool last = b <= 1e-13 * gersh || it == m_max - 1;
            if (m >= 2 && (it % 8 == 7 || last)) {
                Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
                for (Index i = 0; i < m; ++i) {
                    T(i, i) = alpha[static_cast<size_t>(i)];
                    if (i + 1 < m) {
                        T(i, i + 1) = beta[static_cast<size_t>(i)];
                        T(i + 1, i) = beta[static_cast<size_t>(i)];
                    }
                }
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
                const double hi = es.eigenvalues()[m - 1];
                const bool hi_still = std::abs(hi - prev_hi) <= 1e-10 * std::max(hi, 1e-30);
                prev_hi = hi;
                stagnant = hi_still ? stagnant + 1 : 0;
                if (stagnant >= 2 || last)
                    break;
            }
            if (b <= 1e-13 * gersh)
                break;
            beta.push_back(b);
            basis.push_back(w / b);
        }
        lam_hi = prev_hi;
    }

    if (!(lam_lo > 1e-13 * lam_hi))
        throw NumericalError(
            "estimate_spectral_bounds: deflated operator is numerically singular "
            "(lambda_min <= 1e-13 lambda_max); increase the deflation count ell");

    SpectralBounds b;
    b.lambda_min = 0.99 * lam_lo;
    b.lambda_max = std::min(1.01 * lam_hi, gersh);
    return b;
}

} // namespace fraclap
