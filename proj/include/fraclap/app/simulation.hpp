#pragma once

#include <memory>
#include <optional>

#include "fraclap/app/config.hpp"
#include "fraclap/stepper.hpp"

namespace fraclap::app {

/// Everything assembled from a config and ready to integrate. The geometry
/// member matching `config.dimension` is set; the other is empty.
struct SimulationSetup {
    SimulationConfig config;
    Mesh1D mesh1d;
    TetMesh mesh3d;
    std::shared_ptr<VoflOperator> op;
    std::shared_ptr<ReactionModel> model;
    StimulusSource stimulus; // null when no stimulus configured
    State initial;
    TimeGrid grid;
    PicardSettings picard;

    /// Node coordinates as a flat list (for probes and region queries).
    std::array<double, 3> node_coord(Index i) const;
    Index n_nodes() const;
};

SimulationSetup build_setup(const SimulationConfig& config);

/// Bundled §-preset nomenclature: fisher-1d, br-cable-1d, br-heart-3d.
SimulationConfig make_preset(const std::string& name);

struct RunOptions {
    int threads = 1;
    std::optional<std::string> out_dir;        // overrides config/env
    std::optional<double> snapshot_every;      // ms, overrides config
    bool quiet = false;
};

struct RunSummary {
    State final_state;
    Index steps = 0;
    double average_picard = 0.0;
    MatfuncStats matfunc;
    std::string out_dir;
    int snapshots_written = 0;
};

/// Integrate per config, writing snapshots at the configured cadence.
/// Output directory resolution: options > config [output] > $FRACSIM_OUT_DIR
/// > "./out".
RunSummary run_simulation(const SimulationConfig& config, const RunOptions& options = {});

} // namespace fraclap::app
