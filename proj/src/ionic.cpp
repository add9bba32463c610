#include "fraclap/ionic.hpp"

#include <cmath>
#include <vector>

namespace fraclap {

double fisher_source(double u) { return u * (1.0 - u); }

Vector fisher_source(const Vector& u) {
    return u.array() * (1.0 - u.array());
}

namespace br {

namespace {

// Seven-coefficient rate template:
//   (C1 e^{C2 (v+C3)} + C4 (v+C5)) / (e^{C6 (v+C3)} + C7).
// The 0/0 case (C7 = -1 at v = -C3) evaluates to the analytic limit.
struct Coeffs {
    double c1, c2, c3, c4, c5, c6, c7;

    double eval(double v) const {
        const double num = c1 * std::exp(c2 * (v + c3)) + c4 * (v + c5);
        const double den = std::exp(c6 * (v + c3)) + c7;
        if (std::abs(den) < 1e-9) {
            if (std::abs(num) < 1e-9)
                return (c1 * c2 * std::exp(c2 * (v + c3)) + c4) /
                       (c6 * std::exp(c6 * (v + c3)));
            return num / den;
        }
        return num / den;
    }
};

//                      C1       C2      C3    C4   C5  C6      C7
constexpr Coeffs kAm = {0.0,     0.0,    47.0, -1.0, 47.0, -0.1,   -1.0};
constexpr Coeffs kBm = {40.0,   -0.056,  72.0,  0.0,  0.0,  0.0,    0.0};
constexpr Coeffs kAh = {0.126,  -0.25,   77.0,  0.0,  0.0,  0.0,    0.0};
constexpr Coeffs kBh = {1.7,     0.0,    22.5,  0.0,  0.0, -0.082,  1.0};
constexpr Coeffs kAj = {0.055,  -0.25,   78.0,  0.0,  0.0, -0.2,    1.0};
constexpr Coeffs kBj = {0.3,     0.0,    32.0,  0.0,  0.0, -0.1,    1.0};
constexpr Coeffs kAd = {0.095,  -0.01,   -5.0,  0.0,  0.0, -0.072,  1.0};
constexpr Coeffs kBd = {0.07,   -0.017,  44.0,  0.0,  0.0,  0.05,   1.0};
constexpr Coeffs kAf = {0.012,  -0.008,  28.0,  0.0,  0.0,  0.15,   1.0};
constexpr Coeffs kBf = {0.0065, -0.02,   30.0,  0.0,  0.0, -0.2,    1.0};
constexpr Coeffs kAx = {0.0005,  0.083,  50.0,  0.0,  0.0,  0.057,  1.0};
constexpr Coeffs kBx = {0.0013, -0.06,   20.0,  0.0,  0.0, -0.04,   1.0};

} // namespace

Rates rates(double v) {
    Rates r;
    r.open = {kAm.eval(v), kAh.eval(v), kAj.eval(v),
              kAd.eval(v), kAf.eval(v), kAx.eval(v)};
    r.close = {kBm.eval(v), kBh.eval(v), kBj.eval(v),
               kBd.eval(v), kBf.eval(v), kBx.eval(v)};
    return r;
}

Currents currents(double v, double m, double h, double j, double d, double f, double x,
                  double c) {
    if (!(c > 0.0))
        throw NumericalError("Beeler-Reuter currents: calcium concentration must be "
                             "positive (got " +
                             std::to_string(c) + ")");
    Currents out;
    out.i_na = (4.0 * m * m * m * h * j + 0.003) * (v - 50.0);

    const double ik1 = 1.4 * (std::exp(0.04 * (v + 85.0)) - 1.0) /
                       (std::exp(0.08 * (v + 53.0)) + std::exp(0.04 * (v + 53.0)));
    double ik2;
    const double den = 1.0 - std::exp(-0.04 * (v + 23.0));
    if (std::abs(den) < 1e-9)
        ik2 = 0.07 / 0.04; // limit of (v+23)/(1 - e^{-0.04(v+23)}) times 0.07
    else
        ik2 = 0.07 * (v + 23.0) / den;
    out.i_k = ik1 + ik2;

    out.i_x = 0.8 * x * (std::exp(0.04 * (v + 77.0)) - 1.0) / std::exp(0.04 * (v + 35.0));
    out.i_s = 0.09 * d * f * (v + 82.3 + 13.0287 * std::log(1e-7 * c));
    return out;
}

void advance_gates(const Rates& r, double v, double dt, double* g) {
    // Calcium first, with the slow inward current frozen at the incoming
    // state: dc/dt = 0.07 (1 - c) - I_s, backward Euler linear in c.
    const double i_s =
        0.09 * g[D] * g[F] * (v + 82.3 + 13.0287 * std::log(1e-7 * std::max(g[C], 1e-12)));
    g[C] = (g[C] + dt * (0.07 - i_s)) / (1.0 + 0.07 * dt);
    g[C] = std::max(g[C], 1e-12);

    for (int i = 0; i < 6; ++i) {
        const double a = r.open[static_cast<size_t>(i)];
        const double b = r.close[static_cast<size_t>(i)];
        const double sum = a + b;
        if (sum <= 0.0)
            continue; // zero dynamics, gate unchanged
        const double ginf = a / sum;
        g[i] = ginf + (g[i] - ginf) * std::exp(-dt * sum);
        g[i] = std::min(1.0, std::max(0.0, g[i]));
    }
}

void advance_gates(double v, double dt, double* g) { advance_gates(rates(v), v, dt, g); }

RestState resting_state() { return RestState{}; }

RateTable::RateTable(double v_min, double v_max, double dv)
    : v_min_(v_min), v_max_(v_max), dv_(dv) {
    const size_t n = static_cast<size_t>((v_max_ - v_min_) / dv_) + 2;
    table_.resize(n);
    for (size_t i = 0; i < n; ++i)
        table_[i] = br::rates(v_min_ + static_cast<double>(i) * dv_);
}

Rates RateTable::rates(double v) const {
    if (v < v_min_ || v > v_max_)
        return br::rates(v);
    const double pos = (v - v_min_) / dv_;
    const size_t i = static_cast<size_t>(pos);
    const double w = pos - static_cast<double>(i);
    const Rates& lo = table_[i];
    const Rates& hi = table_[i + 1];
    Rates out;
    for (int k = 0; k < 6; ++k) {
        out.open[static_cast<size_t>(k)] =
            (1.0 - w) * lo.open[static_cast<size_t>(k)] + w * hi.open[static_cast<size_t>(k)];
        out.close[static_cast<size_t>(k)] =
            (1.0 - w) * lo.close[static_cast<size_t>(k)] +
            w * hi.close[static_cast<size_t>(k)];
    }
    return out;
}

} // namespace br

} // namespace fraclap
