#include <doctest.h>

#include <random>

#include "fraclap/discretize.hpp"
#include "fraclap/polyprec.hpp"
#include "fraclap/lanczos.hpp"
#include "support/oracles.hpp"

using namespace fraclap;

TEST_CASE("residual polynomial is normalised at zero") {
    const auto p = PolyPreconditioner::build(0.5, 500.0, 8);
    CHECK(std::abs(p.q_at(Complex(0.0, 0.0)) - 1.0) < 1e-10);
    CHECK(std::isfinite(p.sup_on_interval()));
}

TEST_CASE("preconditioning cuts the Krylov iteration count") {
    Mesh1D mesh{150, 1.0, 0.0};
    const auto A = build_laplacian_1d(mesh);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector b(150);
    for (Index i = 0; i < 150; ++i)
        b[i] = dist(rng);
    const std::vector<Complex> shifts = {{1.0, 0.3}, {10.0, 3.0}, {0.01, 0.02}};

    MatfuncStats plain, pre;
    shifted_lanczos_solve(A, b, shifts, 1e-9, nullptr, &plain, 1000);
    const auto p = PolyPreconditioner::build(1e-4, 4.1, 8);
    shifted_lanczos_solve(A, b, shifts, 1e-9, &p, &pre, 1000);
    CHECK(pre.lanczos_iterations < plain.lanczos_iterations);
}

TEST_CASE("division identity s_z(l) (l - z) = q(l) - q(z)") {
    const auto p = PolyPreconditioner::build(0.2, 40.0, 7);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double l = dist(rng);
        const Complex z(dist(rng), dist(rng) - 25.0);
        const auto dr = p.division_coeffs(z);
        // Evaluate s_z(l) by applying to a 1x1 "matrix".
        SparseOperator::Matrix m(1, 1);
        m.insert(0, 0) = l;
        const SparseOperator A(std::move(m));
        MatVec op = [&](const Vector& x, Vector& y) { y = A.apply(x); };
        Vector one = Vector::Ones(1);
        // sum_r Re/Im parts via clenshaw on real and imaginary coefficients.
        std::vector<Vector> g_re(dr.size()), g_im(dr.size());
        for (size_t r = 0; r < dr.size(); ++r) {
            g_re[r] = dr[r].real() * one;
            g_im[r] = dr[r].imag() * one;
        }
        const Complex s_z(p.clenshaw_combine(op, g_re)[0], p.clenshaw_combine(op, g_im)[0]);
        const Complex lhs = s_z * (l - z);
        const Complex rhs = p.q_at(Complex(l, 0.0)) - p.q_at(z);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("apply_q matches dense polynomial evaluation") {
    const Mesh1D mesh{40, 0.5, 0.0};
    const auto A = build_laplacian_1d(mesh);
    const auto p = PolyPreconditioner::build(0.05, 16.5, 8);
    MatVec op = [&](const Vector& x, Vector& y) { y = A.apply(x); };

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(40);
    for (Index i = 0; i < 40; ++i)
        v[i] = dist(rng);

    const Vector lib = p.apply_q(op, v);
    const oracle::DenseSpectral dense(A);
    const Vector ref =
        dense.apply([&](double l) { return p.q_at(Complex(l, 0.0)).real(); }, v);
    CHECK((lib - ref).norm() < 1e-9 * ref.norm());
}

TEST_CASE("preconditioned shifted solves satisfy original residuals") {
    const Mesh1D mesh{80, 0.1, 0.0};
    const auto A = build_laplacian_1d(mesh);
    const auto p = PolyPreconditioner::build(1.0, 400.0, 6);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector b(80);
    for (Index i = 0; i < 80; ++i)
        b[i] = dist(rng);

    std::vector<Complex> shifts = {{5.0, 4.0}, {-3.0, 20.0}, {120.0, 60.0}};
    MatfuncStats stats;
    const auto xs = shifted_lanczos_solve(A, b, shifts, 1e-9, &p, &stats);
    CHECK(stats.preconditioned);

    const Eigen::MatrixXd Ad = oracle::densify(A);
    for (size_t j = 0; j < shifts.size(); ++j) {
        ComplexVector r = b.cast<Complex>();
        r -= shifts[j] * xs[j] - Ad.cast<Complex>() * xs[j];
        CHECK(r.norm() <= 2e-9 * b.norm());
    }
}
