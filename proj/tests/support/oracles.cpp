#include "support/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fraclap/ionic.hpp"

namespace oracle {

Eigen::MatrixXd densify(const fraclap::SparseOperator& A) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(A.dim(), A.dim());
    const auto& m = A.matrix();
    for (Index i = 0; i < m.outerSize(); ++i)
        for (fraclap::SparseOperator::Matrix::InnerIterator it(m, i); it; ++it)
            dense(it.row(), it.col()) = it.value();
    return dense;
}

DenseSpectral::DenseSpectral(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    lambda_ = es.eigenvalues();
    V_ = es.eigenvectors();
}

DenseSpectral::DenseSpectral(const fraclap::SparseOperator& A)
    : DenseSpectral(densify(A)) {}

Vector DenseSpectral::apply(const std::function<double(double)>& f, const Vector& b) const {
    Vector c = V_.transpose() * b;
    for (Index i = 0; i < c.size(); ++i)
        c[i] *= f(lambda_[i]);
    return V_ * c;
}

Vector DenseSpectral::apply(const fraclap::SpectralFunction& f, const Vector& b) const {
    return apply([&](double l) { return f.eval_real(l); }, b);
}

Vector DenseSpectral::apply_variable_order(const Vector& powers, const Vector& b) const {
    const Vector c = V_.transpose() * b;
    Vector out(b.size());
    for (Index i = 0; i < b.size(); ++i) {
        double acc = 0.0;
        for (Index j = 0; j < c.size(); ++j) {
            const double lp = lambda_[j] <= 0.0 ? 0.0 : std::pow(lambda_[j], powers[i]);
            acc += c[j] * lp * V_(i, j);
        }
        out[i] = acc;
    }
    return out;
}

DenseGeneralized::DenseGeneralized(const Vector& mass, const Eigen::MatrixXd& K) {
    // K v = lambda M v via the symmetric reduction M^{-1/2} K M^{-1/2}.
    const Vector mh = mass.cwiseSqrt();
    const Vector mih = mh.cwiseInverse();
    Eigen::MatrixXd At = mih.asDiagonal() * K * mih.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(At);
    lambda_ = es.eigenvalues();
    V_ = mih.asDiagonal() * es.eigenvectors();
    VtM_ = V_.transpose() * Eigen::MatrixXd(mass.asDiagonal());
}

Vector DenseGeneralized::apply(const fraclap::SpectralFunction& f, const Vector& b) const {
    Vector c = VtM_ * b;
    for (Index i = 0; i < c.size(); ++i)
        c[i] *= f.eval_real(lambda_[i]);
    return V_ * c;
}

Vector DenseGeneralized::apply_variable_order(const Vector& powers, const Vector& b) const {
    const Vector c = VtM_ * b;
    Vector out(b.size());
    for (Index i = 0; i < b.size(); ++i) {
        double acc = 0.0;
        for (Index j = 0; j < c.size(); ++j) {
            const double lp = lambda_[j] <= 0.0 ? 0.0 : std::pow(lambda_[j], powers[i]);
            acc += c[j] * lp * V_(i, j);
        }
        out[i] = acc;
    }
    return out;
}

double elliptic_K_quadrature(double k) {
    // 256-point Gauss-Legendre on theta in [0, pi/2]; the integrand is
    // smooth for k < 1.
    constexpr int n = 256;
    static thread_local std::vector<double> x, w;
    if (x.empty()) {
        x.resize(n);
        w.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
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
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = 0.25 * M_PI * (x[static_cast<size_t>(i)] + 1.0);
        const double s = std::sin(theta);
        acc += w[static_cast<size_t>(i)] / std::sqrt(1.0 - k * k * s * s);
    }
    return acc * 0.25 * M_PI;
}

void jacobi_theta_oracle(Complex u, double k, Complex& sn, Complex& cn, Complex& dn) {
    auto agm = [](double a, double b) {
        for (int it = 0; it < 64 && std::abs(a - b) > 2e-16 * a; ++it) {
            const double am = 0.5 * (a + b);
            b = std::sqrt(a * b);
            a = am;
        }
        return a;
    };
    const double K = M_PI / 2.0 / agm(1.0, std::sqrt(1.0 - k * k));
    const double Kp = M_PI / 2.0 / agm(1.0, k);
    const double q = std::exp(-M_PI * Kp / K);
    const Complex v = M_PI * u / (2.0 * K);

    auto theta1 = [&](Complex z) {
        Complex acc = 0.0;
        for (int n = 0; n < 40; ++n) {
            const double qp = std::pow(q, (n + 0.5) * (n + 0.5));
            acc += (n % 2 == 0 ? 2.0 : -2.0) * qp * std::sin((2.0 * n + 1.0) * z);
        }
        return acc;
    };
    auto theta2 = [&](Complex z) {
        Complex acc = 0.0;
        for (int n = 0; n < 40; ++n)
            acc += 2.0 * std::pow(q, (n + 0.5) * (n + 0.5)) * std::cos((2.0 * n + 1.0) * z);
        return acc;
    };
    auto theta3 = [&](Complex z) {
        Complex acc = 1.0;
        for (int n = 1; n < 40; ++n)
            acc += 2.0 * std::pow(q, static_cast<double>(n) * n) * std::cos(2.0 * n * z);
        return acc;
    };
    auto theta4 = [&](Complex z) {
        Complex acc = 1.0;
        for (int n = 1; n < 40; ++n)
            acc += (n % 2 == 0 ? 2.0 : -2.0) * std::pow(q, static_cast<double>(n) * n) *
                   std::cos(2.0 * n * z);
        return acc;
    };

    const double t2_0 = theta2(Complex(0.0)).real();
    const double t3_0 = theta3(Complex(0.0)).real();
    const double t4_0 = theta4(Complex(0.0)).real();
    const Complex t1 = theta1(v), t2 = theta2(v), t3 = theta3(v), t4 = theta4(v);
    sn = (t3_0 / t2_0) * (t1 / t4);
    cn = (t4_0 / t2_0) * (t2 / t4);
    dn = (t4_0 / t3_0) * (t3 / t4);
}

void br_gate_ode_reference(double v, double dt, int n_sub, double* g) {
    using fraclap::br::rates;
    const auto r = rates(v);
    const double h = dt / n_sub;
    auto deriv = [&](const double* y, double* dy) {
        for (int i = 0; i < 6; ++i)
            dy[i] = r.open[static_cast<size_t>(i)] * (1.0 - y[i]) -
                    r.close[static_cast<size_t>(i)] * y[i];
        const double i_s = 0.09 * y[3] * y[4] * (v + 82.3 + 13.0287 * std::log(1e-7 * y[6]));
        dy[6] = 0.07 * (1.0 - y[6]) - i_s;
    };
    double k1[7], k2[7], k3[7], k4[7], tmp[7];
    for (int s = 0; s < n_sub; ++s) {
        deriv(g, k1);
        for (int i = 0; i < 7; ++i)
            tmp[i] = g[i] + 0.5 * h * k1[i];
        deriv(tmp, k2);
        for (int i = 0; i < 7; ++i)
            tmp[i] = g[i] + 0.5 * h * k2[i];
        deriv(tmp, k3);
        for (int i = 0; i < 7; ++i)
            tmp[i] = g[i] + h * k3[i];
        deriv(tmp, k4);
        for (int i = 0; i < 7; ++i)
            g[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

Vector neumann_1d_spectrum(Index n, double dx) {
    Vector l(n);
    for (Index k = 0; k < n; ++k) {
        const double s = std::sin(static_cast<double>(k) * M_PI / (2.0 * static_cast<double>(n)));
        l[k] = 4.0 / (dx * dx) * s * s;
    }
    return l;
}

} // namespace oracle
