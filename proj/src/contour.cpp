#include "fraclap/contour.hpp"

#include <cmath>

#include "fraclap/elliptic.hpp"

namespace fraclap {

Complex SpectralFunction::operator()(Complex z) const {
    switch (kind) {
    case Kind::power:
        return std::pow(z, p1);
    case Kind::resolvent_of_power:
        return 1.0 / (1.0 + coeff * std::pow(z, p1));
    case Kind::power_difference:
        return coeff * (std::pow(z, p1) - std::pow(z, p2));
    }
    return {};
}

double SpectralFunction::at_zero() const {
    return kind == Kind::resolvent_of_power ? 1.0 : 0.0;
}

double SpectralFunction::eval_real(double lambda) const {
    if (lambda <= 0.0)
        return at_zero();
    switch (kind) {
    case Kind::power:
        return std::pow(lambda, p1);
    case Kind::resolvent_of_power:
        return 1.0 / (1.0 + coeff * std::pow(lambda, p1));
    case Kind::power_difference:
        return coeff * (std::pow(lambda, p1) - std::pow(lambda, p2));
    }
    return 0.0;
}

double ContourQuadrature::scalar_eval(double lambda) const {
    Complex acc = 0.0;
    for (int j = 0; j < points; ++j)
        acc += weights[static_cast<size_t>(j)] /
               (poles[static_cast<size_t>(j)] - lambda);
    return acc.imag();
}

ContourQuadrature build_contour(const SpectralFunction& f, const SpectralBounds& bounds,
                                int points) {
    if (points < 1)
        throw ConfigError("build_contour: need at least one quadrature point");
    if (!(bounds.lambda_min > 0.0) || !(bounds.lambda_max > bounds.lambda_min))
        throw ConfigError("build_contour: need 0 < lambda_min < lambda_max");

    const double k = bounds.modulus();
    const double K = complete_elliptic_K(k);
    const double Kp = complete_elliptic_Kprime(k);
    const double geo = std::sqrt(bounds.lambda_min * bounds.lambda_max);
    const double kinv = 1.0 / k;

    ContourQuadrature q;
    q.points = points;
    q.K = K;
    q.Kprime = Kp;
    q.modulus = k;
    q.tau.resize(static_cast<size_t>(points));
    q.poles.resize(static_cast<size_t>(points));
    q.weights.resize(static_cast<size_t>(points));

    const double step = 2.0 * K / points; // midpoint rule on [-K, K]
    for (int j = 1; j <= points; ++j) {
        const Complex tau(-K + K * (2.0 * j - 1.0) / points, Kp / 2.0);
        const JacobiElliptic je = jacobi_elliptic(tau, k);
        const Complex denom = kinv - je.sn;
        const Complex z = geo * (kinv + je.sn) / denom;
        const Complex fz = f(z);
        const Complex w = step * (-2.0 * geo) * fz * je.cn * je.dn /
                          (M_PI * k * denom * denom);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            !std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("build_contour: non-finite pole/weight at node " +
                                 std::to_string(j) + " (f not finite on the contour?)");
        q.tau[static_cast<size_t>(j - 1)] = tau;
        q.poles[static_cast<size_t>(j - 1)] = z;
        q.weights[static_cast<size_t>(j - 1)] = w;
    }
    return q;
}

} // namespace fraclap
