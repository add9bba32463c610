#include "fraclap/polyprec.hpp"

#include <cmath>

namespace fraclap {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[static_cast<size_t>(i)] = -z;
        x[static_cast<size_t>(n - 1 - i)] = z;
        w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<size_t>(n - 1 - i)] = w[static_cast<size_t>(i)];
    }
}

} // namespace

PolyPreconditioner PolyPreconditioner::build(double lambda_min, double lambda_max,
                                             int degree) {
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
        throw ConfigError("PolyPreconditioner: need 0 < lambda_min < lambda_max");
    if (degree < 1)
        throw ConfigError("PolyPreconditioner: degree must be >= 1");

    PolyPreconditioner p;
    p.lo_ = lambda_min;
    p.hi_ = lambda_max;
    const int d = degree;

    // Quadrature for the Jacobi weight t^{-1/2} (1-t)^{1/2} on [0,1]:
    // substituting t = sin^2(theta) gives the smooth form
    //   integral_0^1 f(t) w(t) dt = 2 integral_0^{pi/2} f(sin^2 th) cos^2 th dth.
    const int nq = std::max(64, 8 * (d + 2));
    std::vector<double> gx, gw;
    gauss_legendre(nq, gx, gw);
    std::vector<double> tq(static_cast<size_t>(nq)), wq(static_cast<size_t>(nq));
    for (int i = 0; i < nq; ++i) {
        const double theta = 0.25 * M_PI * (gx[static_cast<size_t>(i)] + 1.0);
        const double c = std::cos(theta);
        tq[static_cast<size_t>(i)] = std::sin(theta) * std::sin(theta);
        wq[static_cast<size_t>(i)] = 2.0 * c * c * gw[static_cast<size_t>(i)] * 0.25 * M_PI;
    }

    // Discrete Stieltjes for the orthonormal recurrence.
    auto dot = [&](const std::vector<double>& f, const std::vector<double>& g) {
        double s = 0.0;
        for (int i = 0; i < nq; ++i)
            s += wq[static_cast<size_t>(i)] * f[static_cast<size_t>(i)] *
                 g[static_cast<size_t>(i)];
        return s;
    };

    p.diag_.assign(static_cast<size_t>(d + 1), 0.0);
    p.offdiag_.assign(static_cast<size_t>(d + 2), 0.0);
    std::vector<std::vector<double>> pi(static_cast<size_t>(d + 2),
                                        std::vector<double>(static_cast<size_t>(nq), 0.0));
    const double mu0 = dot(std::vector<double>(static_cast<size_t>(nq), 1.0),
                           std::vector<double>(static_cast<size_t>(nq), 1.0));
    p.pi0_ = 1.0 / std::sqrt(mu0);
    for (int i = 0; i < nq; ++i)
        pi[0][static_cast<size_t>(i)] = p.pi0_;

    for (int r = 0; r <= d; ++r) {
        std::vector<double> tpi(static_cast<size_t>(nq));
        for (int i = 0; i < nq; ++i)
            tpi[static_cast<size_t>(i)] =
                tq[static_cast<size_t>(i)] * pi[static_cast<size_t>(r)][static_cast<size_t>(i)];
        p.diag_[static_cast<size_t>(r)] = dot(tpi, pi[static_cast<size_t>(r)]);
        std::vector<double> next(static_cast<size_t>(nq));
        for (int i = 0; i < nq; ++i) {
            double v = tpi[static_cast<size_t>(i)] -
                       p.diag_[static_cast<size_t>(r)] *
                           pi[static_cast<size_t>(r)][static_cast<size_t>(i)];
            if (r > 0)
                v -= p.offdiag_[static_cast<size_t>(r)] *
                     pi[static_cast<size_t>(r - 1)][static_cast<size_t>(i)];
            next[static_cast<size_t>(i)] = v;
        }
        const double nrm = std::sqrt(dot(next, next));
        p.offdiag_[static_cast<size_t>(r + 1)] = nrm;
        for (int i = 0; i < nq; ++i)
            pi[static_cast<size_t>(r + 1)][static_cast<size_t>(i)] =
                next[static_cast<size_t>(i)] / nrm;
    }

    // Kernel-polynomial least-squares residual: q = sum_r pi_r(t0) pi_r / S,
    // normalised so q(t0) = 1 at the image t0 of lambda = 0.
    const double t0 = (0.0 - lambda_min) / (lambda_max - lambda_min);
    std::vector<double> pi_at_t0(static_cast<size_t>(d + 1));
    {
        double pm1 = 0.0, pcur = p.pi0_;
        for (int r = 0; r <= d; ++r) {
            pi_at_t0[static_cast<size_t>(r)] = pcur;
            const double pnext = ((t0 - p.diag_[static_cast<size_t>(r)]) * pcur -
                                  p.offdiag_[static_cast<size_t>(r)] * pm1) /
                                 p.offdiag_[static_cast<size_t>(r + 1)];
            pm1 = pcur;
            pcur = pnext;
        }
    }
    double S = 0.0;
    for (double v : pi_at_t0)
        S += v * v;
    p.series_.assign(static_cast<size_t>(d + 1), 0.0);
    for (int r = 0; r <= d; ++r)
        p.series_[static_cast<size_t>(r)] = pi_at_t0[static_cast<size_t>(r)] / S;

    // Sample |q| on the interval for diagnostics.
    double sup = 0.0;
    for (int i = 0; i < nq; ++i) {
        double qv = 0.0;
        for (int r = 0; r <= d; ++r)
            qv += p.series_[static_cast<size_t>(r)] *
                  pi[static_cast<size_t>(r)][static_cast<size_t>(i)];
        sup = std::max(sup, std::abs(qv));
    }
    p.sup_on_interval_ = sup;
    return p;
}

Vector PolyPreconditioner::apply_q(const MatVec& a_op, const Vector& v) const {
    const int d = degree();
    const double scale = 1.0 / (hi_ - lo_);
    Vector pm1 = Vector::Zero(v.size());
    Vector pcur = pi0_ * v;
    Vector acc = series_[0] * pcur;
    Vector tmp(v.size());
    for (int r = 0; r < d; ++r) {
        a_op(pcur, tmp);
        Vector tp = scale * (tmp - lo_ * pcur);
        Vector pnext = (tp - diag_[static_cast<size_t>(r)] * pcur -
                        offdiag_[static_cast<size_t>(r)] * pm1) /
                       offdiag_[static_cast<size_t>(r + 1)];
        pm1.swap(pcur);
        pcur = std::move(pnext);
        acc += series_[static_cast<size_t>(r + 1)] * pcur;
    }
    return acc;
}

Complex PolyPreconditioner::q_at(Complex z) const {
    const int d = degree();
    const Complex t = t_of(z);
    Complex pm1 = 0.0, pcur = pi0_;
    Complex acc = series_[0] * pcur;
    for (int r = 0; r < d; ++r) {
        const Complex pnext = ((t - diag_[static_cast<size_t>(r)]) * pcur -
                               offdiag_[static_cast<size_t>(r)] * pm1) /
                              offdiag_[static_cast<size_t>(r + 1)];
        pm1 = pcur;
        pcur = pnext;
        acc += series_[static_cast<size_t>(r + 1)] * pcur;
    }
    return acc;
}

std::vector<Complex> PolyPreconditioner::division_coeffs(Complex z) const {
    // Backward synthetic division of the series by (t - t_z) in the
    // orthonormal basis; the lambda-domain quotient gains 1/(hi-lo).
    const int d = degree();
    const Complex tz = t_of(z);
    std::vector<Complex> dr(static_cast<size_t>(d), 0.0);
    if (d == 0)
        return dr;
    dr[static_cast<size_t>(d - 1)] = series_[static_cast<size_t>(d)] /
                                     offdiag_[static_cast<size_t>(d)];
    for (int m = d - 1; m >= 1; --m) {
        Complex v = series_[static_cast<size_t>(m)] -
                    (diag_[static_cast<size_t>(m)] - tz) * dr[static_cast<size_t>(m)];
        if (m + 1 <= d - 1)
            v -= offdiag_[static_cast<size_t>(m + 1)] * dr[static_cast<size_t>(m + 1)];
        dr[static_cast<size_t>(m - 1)] = v / offdiag_[static_cast<size_t>(m)];
    }
    const double scale = 1.0 / (hi_ - lo_);
    for (auto& c : dr)
        c *= scale;
    return dr;
}

Vector PolyPreconditioner::clenshaw_combine(const MatVec& a_op,
                                            const std::vector<Vector>& g) const {
    const int R = static_cast<int>(g.size()) - 1;
    const Index n = g[0].size();
    const double scale = 1.0 / (hi_ - lo_);
    Vector u_next = Vector::Zero(n);  // u_{r+1}
    Vector u_next2 = Vector::Zero(n); // u_{r+2}
    Vector tmp(n);
    for (int r = R; r >= 0; --r) {
        // u_r = g_r + (T - b_r)/a_{r+1} u_{r+1} - a_{r+1}/a_{r+2} u_{r+2}
        Vector u = g[static_cast<size_t>(r)];
        if (r < R) {
            a_op(u_next, tmp);
            Vector t_u = scale * (tmp - lo_ * u_next);
            u += (t_u - diag_[static_cast<size_t>(r)] * u_next) /
                 offdiag_[static_cast<size_t>(r + 1)];
        }
        if (r < R - 1)
            u -= (offdiag_[static_cast<size_t>(r + 1)] / offdiag_[static_cast<size_t>(r + 2)]) *
                 u_next2;
        u_next2.swap(u_next);
        u_next = std::move(u);
    }
    return pi0_ * u_next;
}

} // namespace fraclap
