#pragma once

#include "fraclap/app/simulation.hpp"

namespace fraclap::app {

struct ThresholdResult {
    double amplitude = 0.0;     // diastolic threshold, uA/cm^3
    double bracket_low = 0.0;   // highest non-propagating amplitude tested
    double bracket_high = 0.0;  // lowest propagating amplitude tested
    Index probe_node = 0;
    int simulations = 0;
};

/// Minimum stimulus amplitude that produces successful propagation, found
/// by bisection between 0 and the config's stimulus amplitude (the upper
/// bracket). Propagation means the potential crosses 0 mV at a probe node
/// at least 75% of the way across the domain from the stimulus, within the
/// configured time window. The bracket is narrowed to 1% relative width.
ThresholdResult find_diastolic_threshold(const SimulationConfig& config, int threads = 1);

} // namespace fraclap::app
