#include "fraclap/app/threshold.hpp"

#include <cmath>

namespace fraclap::app {

namespace {

// Probe: first node at least 75% of the maximum distance from the
// stimulus-region centroid.
Index pick_probe(const SimulationSetup& s) {
    const SimulationConfig& c = s.config;
    std::array<double, 3> origin = {0.0, 0.0, 0.0};
    if (c.stim_region_kind == "interval")
        origin = {0.5 * (c.stim_x0 + c.stim_x1), 0.0, 0.0};
    else if (c.stim_region_kind == "sphere")
        origin = c.stim_center;

    double max_d = 0.0;
    for (Index i = 0; i < s.n_nodes(); ++i) {
        const auto p = s.node_coord(i);
        const double d = std::hypot(p[0] - origin[0], p[1] - origin[1], p[2] - origin[2]);
        max_d = std::max(max_d, d);
    }
    for (Index i = 0; i < s.n_nodes(); ++i) {
        const auto p = s.node_coord(i);
        const double d = std::hypot(p[0] - origin[0], p[1] - origin[1], p[2] - origin[2]);
        if (d >= 0.75 * max_d)
            return i;
    }
    return s.n_nodes() - 1;
}

bool propagates(const SimulationConfig& base, double amplitude, Index probe, int threads) {
    SimulationConfig c = base;
    c.stim_amplitude = amplitude;
    SimulationSetup s = build_setup(c);
    bool crossed = false;
    auto stop = [&](Index, double, const State& st) {
        if (st.v[probe] > 0.0) {
            crossed = true;
            return true;
        }
        return false;
    };
    integrate(*s.op, std::move(s.initial), *s.model, s.grid, s.stimulus, {}, s.picard,
              threads, stop);
    return crossed;
}

} // namespace

ThresholdResult find_diastolic_threshold(const SimulationConfig& config, int threads) {
    config.validate();
    if (config.stim_times.empty() || config.stim_region_kind == "none")
        throw ConfigError("threshold search needs a configured stimulus");
    if (!(config.stim_amplitude > 0.0))
        throw ConfigError("threshold search needs a positive stimulus.amplitude as the "
                          "upper bracket");

    ThresholdResult out;
    {
        SimulationSetup probe_setup = build_setup(config);
        out.probe_node = pick_probe(probe_setup);
    }

    double lo = 0.0;
    double hi = config.stim_amplitude;
    if (!propagates(config, hi, out.probe_node, threads))
        throw NumericalError("threshold search: upper bracket " + std::to_string(hi) +
                             " does not propagate; increase stimulus.amplitude");
    ++out.simulations;
    while (hi - lo > 0.01 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (propagates(config, mid, out.probe_node, threads))
            hi = mid;
        else
            lo = mid;
        ++out.simulations;
    }
    out.bracket_low = lo;
    out.bracket_high = hi;
    out.amplitude = 0.5 * (lo + hi);
    return out;
}

} // namespace fraclap::app
