#pragma once

#include <vector>

#include "fraclap/deflation.hpp"
#include "fraclap/types.hpp"

namespace fraclap {

/// The analytic functions the implicit scheme needs. All are analytic off
/// the negative real axis and real on the positive real axis.
///   power:              f(z) = z^p
///   resolvent_of_power: f(z) = 1 / (1 + c z^p)
///   power_difference:   f(z) = c (z^{p1} - z^{p2})
struct SpectralFunction {
    enum class Kind { power, resolvent_of_power, power_difference };

    Kind kind = Kind::power;
    double p1 = 1.0;
    double p2 = 1.0;
    double coeff = 1.0;

    static SpectralFunction power(double p) { return {Kind::power, p, 0.0, 1.0}; }
    static SpectralFunction resolvent_of_power(double diffusivity, double dt, double p) {
        return {Kind::resolvent_of_power, p, 0.0, diffusivity * dt};
    }
    static SpectralFunction power_difference(double coeff, double pa, double pb) {
        return {Kind::power_difference, pa, pb, coeff};
    }

    Complex operator()(Complex z) const;

    /// Continuous extension at the (deflated) zero eigenvalue:
    /// powers vanish, the resolvent is 1.
    double at_zero() const;

    /// Real evaluation for spectral (deflated) eigenvalues.
    double eval_real(double lambda) const;
};

/// Poles, weights and elliptic data of the conformal-map midpoint rule.
/// The stored weights absorb both the function values and the quadrature
/// step, so that   f(lambda) ~ Im sum_j w_j / (z_j - lambda).
struct ContourQuadrature {
    int points = 0;
    std::vector<Complex> tau;     // midpoint nodes in the parameter strip
    std::vector<Complex> poles;   // z(tau_j)
    std::vector<Complex> weights; // w(tau_j) including f(z) and the step 2K/P
    double K = 0.0;               // complete elliptic integral K(k)
    double Kprime = 0.0;          // K(k')
    double modulus = 0.0;         // k

    /// Scalar check value: the quadrature applied to 1/(z - lambda).
    double scalar_eval(double lambda) const;
};

/// Midpoint-rule quadrature for f on the spectral interval in `bounds`.
ContourQuadrature build_contour(const SpectralFunction& f, const SpectralBounds& bounds,
                                int points);

} // namespace fraclap
