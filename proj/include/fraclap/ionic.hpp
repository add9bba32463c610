#pragma once

#include <array>
#include <memory>

#include "fraclap/types.hpp"

namespace fraclap {

/// Fisher source g(u) = u (1 - u), elementwise.
double fisher_source(double u);
Vector fisher_source(const Vector& u);

namespace br {

/// Gate indices in the auxiliary state block (calcium last).
enum Gate : int { M = 0, H = 1, J = 2, D = 3, F = 4, X = 5, C = 6 };
constexpr int kAuxDim = 7;

/// Channel opening/closing rates for the six gating variables (1/ms).
struct Rates {
    std::array<double, 6> open;  // alpha_m, alpha_h, alpha_j, alpha_d, alpha_f, alpha_x
    std::array<double, 6> close; // beta_m, ...
};

/// All twelve rates at a membrane voltage; removable singularities are
/// evaluated by their analytic limits, so the functions are continuous
/// for every finite v.
Rates rates(double v);

struct Currents {
    double i_na = 0.0; // fast inward sodium
    double i_k = 0.0;  // time-independent potassium
    double i_x = 0.0;  // time-activated outward
    double i_s = 0.0;  // slow inward (calcium)
    double total() const { return i_na + i_k + i_x + i_s; }
};

/// Ionic currents (uA/cm^2) for one cell state. c is the scaled calcium
/// concentration 1e7 [Ca]_i and must be positive.
Currents currents(double v, double m, double h, double j, double d, double f, double x,
                  double c);

/// One exponential (Rush-Larsen) update of the six gates plus a linearised
/// backward-Euler update of calcium, over dt at frozen voltage.
void advance_gates(double v, double dt, double* gates /* kAuxDim values */);

/// Same update with externally supplied rates (tabulated evaluation).
void advance_gates(const Rates& r, double v, double dt, double* gates);

/// Rest state of the cell model.
struct RestState {
    double v = -85.0;
    std::array<double, kAuxDim> aux = {0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0};
};
RestState resting_state();

/// Optional tabulation of the twelve rates on a uniform voltage grid
/// (linear interpolation, 0.01 mV spacing); stays within 1e-6 of direct
/// evaluation over the tabulated range and falls back to direct evaluation
/// outside it.
class RateTable {
public:
    RateTable(double v_min = -150.0, double v_max = 100.0, double dv = 0.01);
    Rates rates(double v) const;

private:
    double v_min_, v_max_, dv_;
    std::vector<Rates> table_;
};

} // namespace br

} // namespace fraclap
