#pragma once

#include "fraclap/types.hpp"

namespace fraclap {

/// Complete elliptic integral of the first kind K(k), modulus convention
/// K(k) = integral_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta).
/// Computed by the arithmetic-geometric mean; relative accuracy ~1e-15.
/// Throws for k >= 1 or k < 0.
double complete_elliptic_K(double k);

/// Complementary integral K'(k) = K(sqrt(1 - k^2)).
double complete_elliptic_Kprime(double k);

struct JacobiElliptic {
    Complex sn, cn, dn;
    bool near_pole = false; // argument close to a pole of sn/cn/dn
};

/// Jacobi elliptic functions sn, cn, dn for real argument and real
/// modulus k in [0, 1), via the descending Landen (AGM) transformation.
JacobiElliptic jacobi_elliptic(double u, double k);

/// Complex argument: real-argument evaluations combined with the addition
/// formulas sn(x+iy) etc. Valid for all finite tau away from the poles of
/// the functions; near-pole arguments set the warning flag.
JacobiElliptic jacobi_elliptic(Complex tau, double k);

} // namespace fraclap
