#include "fraclap/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap {

double complete_elliptic_K(double k) {
    if (k < 0.0 || k >= 1.0)
        throw ConfigError("complete_elliptic_K: modulus must satisfy 0 <= k < 1, got " +
                          std::to_string(k));
    // K(k) = pi / (2 * AGM(1, k')); quadratic convergence, ~8 sweeps max.
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    for (int it = 0; it < 64 && std::abs(a - b) > 2e-16 * a; ++it) {
        const double am = 0.5 * (a + b);
        const double gm = std::sqrt(a * b);
        a = am;
        b = gm;
    }
    return M_PI / (2.0 * a);
}

double complete_elliptic_Kprime(double k) {
    if (k < 0.0 || k >= 1.0)
        throw ConfigError("complete_elliptic_Kprime: modulus must satisfy 0 <= k < 1");
    if (k == 0.0)
        throw ConfigError("complete_elliptic_Kprime: K' diverges at k = 0");
    // K'(k) = K(k') = pi / (2 AGM(1, k)); avoids forming k' = sqrt(1-k^2),
    // which rounds to 1 for tiny k.
    double a = 1.0, b = k;
    for (int it = 0; it < 64 && std::abs(a - b) > 2e-16 * a; ++it) {
        const double am = 0.5 * (a + b);
        const double gm = std::sqrt(a * b);
        a = am;
        b = gm;
    }
    return M_PI / (2.0 * a);
}

namespace {

struct RealJacobi {
    double sn, cn, dn;
};

// Descending Landen transformation (AGM backward recurrence on amplitudes).
RealJacobi jacobi_real(double u, double k) {
    if (k < 1e-14) {
        // Degenerate modulus: circular functions.
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (k >= 1.0) {
        // Degenerate modulus (k' rounded to 1): hyperbolic functions.
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    constexpr int kMaxLevels = 32;
    double a[kMaxLevels], c[kMaxLevels];
    a[0] = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    c[0] = k;
    int n = 0;
    while (std::abs(c[n]) > 1e-16 * std::abs(a[n]) && n + 1 < kMaxLevels) {
        const double an = 0.5 * (a[n] + b);
        const double cn1 = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn1;
    }
    double phi = std::ldexp(1.0, n) * a[n] * u;
    for (int i = n; i >= 1; --i) {
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(std::max(0.0, (1.0 - k * sn) * (1.0 + k * sn)));
    return {sn, cn, dn};
}

} // namespace

JacobiElliptic jacobi_elliptic(double u, double k) {
    if (k < 0.0 || k >= 1.0)
        throw ConfigError("jacobi_elliptic: modulus must satisfy 0 <= k < 1");
    const RealJacobi r = jacobi_real(u, k);
    return {Complex(r.sn, 0.0), Complex(r.cn, 0.0), Complex(r.dn, 0.0), false};
}

JacobiElliptic jacobi_elliptic(Complex tau, double k) {
    if (k < 0.0 || k >= 1.0)
        throw ConfigError("jacobi_elliptic: modulus must satisfy 0 <= k < 1");
    const double x = tau.real();
    const double y = tau.imag();
    if (y == 0.0)
        return jacobi_elliptic(x, k);
    if (k < 1e-14)
        return {std::sin(tau), std::cos(tau), Complex(1.0, 0.0), false};

    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const RealJacobi rx = jacobi_real(x, k);
    const RealJacobi ry = jacobi_real(y, kp);

    // Addition formulas for complex argument (real/imaginary split):
    //   denom = cn(y,k')^2 + k^2 sn(x,k)^2 sn(y,k')^2
    const double denom = ry.cn * ry.cn + k * k * rx.sn * rx.sn * ry.sn * ry.sn;
    JacobiElliptic out;
    // sn/cn/dn have poles at u = 2mK + (2n+1)iK' where denom -> 0.
    out.near_pole = std::abs(denom) < 1e-12;
    const double safe = out.near_pole && denom == 0.0 ? 1e-300 : denom;
    out.sn = Complex(rx.sn * ry.dn, rx.cn * rx.dn * ry.sn * ry.cn) / safe;
    out.cn = Complex(rx.cn * ry.cn, -rx.sn * rx.dn * ry.sn * ry.dn) / safe;
    out.dn = Complex(rx.dn * ry.cn * ry.dn, -k * k * rx.sn * rx.cn * ry.sn) / safe;
    return out;
}

} // namespace fraclap
