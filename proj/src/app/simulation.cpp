#include "fraclap/app/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "fraclap/app/snapshot.hpp"
#include "fraclap/discretize.hpp"

namespace fraclap::app {

std::array<double, 3> SimulationSetup::node_coord(Index i) const {
    if (config.dimension == 1)
        return {mesh1d.coord(i), 0.0, 0.0};
    return mesh3d.nodes[static_cast<size_t>(i)];
}

Index SimulationSetup::n_nodes() const {
    return config.dimension == 1 ? mesh1d.n_nodes : mesh3d.n_nodes();
}

namespace {

RegionPredicate region_predicate(const SimulationConfig& c) {
    if (c.region_kind == "none")
        return [](double, double, double) { return false; };
    if (c.region_kind == "half-split")
        return half_interval_predicate(c.split_x);
    // sphere
    if (c.has_exclusion)
        return sphere_with_box_exclusion_predicate(
            c.region_center[0], c.region_center[1], c.region_center[2], c.region_radius,
            c.exclude_x_lt, c.exclude_y_gt, c.exclude_x_gt);
    const auto ctr = c.region_center;
    const double r = c.region_radius;
    return [ctr, r](double x, double y, double z) {
        const double dx = x - ctr[0], dy = y - ctr[1], dz = z - ctr[2];
        return dx * dx + dy * dy + dz * dz <= r * r;
    };
}

std::vector<Index> stimulus_nodes(const SimulationSetup& s) {
    const SimulationConfig& c = s.config;
    std::vector<Index> nodes;
    if (c.stim_region_kind == "none")
        return nodes;
    for (Index i = 0; i < s.n_nodes(); ++i) {
        const auto p = s.node_coord(i);
        bool in = false;
        if (c.stim_region_kind == "interval")
            in = p[0] >= c.stim_x0 && p[0] <= c.stim_x1;
        else {
            const double dx = p[0] - c.stim_center[0];
            const double dy = p[1] - c.stim_center[1];
            const double dz = p[2] - c.stim_center[2];
            in = dx * dx + dy * dy + dz * dz <= c.stim_radius * c.stim_radius;
        }
        if (in)
            nodes.push_back(i);
    }
    return nodes;
}

State initial_state(const SimulationSetup& s) {
    const SimulationConfig& c = s.config;
    State st = s.model->resting_state(s.n_nodes());
    if (c.initial == "step") {
        for (Index i = 0; i < s.n_nodes(); ++i) {
            const double x = s.node_coord(i)[0];
            st.v[i] = x <= c.step_edge ? 1.0 : std::exp(-c.step_rate * (x - c.step_edge));
        }
    } else if (c.initial == "constant") {
        st.v.setConstant(c.init_value);
    }
    return st;
}

} // namespace

SimulationConfig make_preset(const std::string& name) {
    SimulationConfig c;
    if (name == "fisher-1d") {
        c.kind = "fisher";
        c.dimension = 1;
        c.length = 100.0;
        c.nodes = 1001;
        c.region_kind = "half-split";
        c.split_x = 50.0;
        c.alpha1 = 1.5;
        c.alpha2 = 2.0;
        c.effective_diffusivity = 1.0;
        c.dt = 0.01;
        c.t_end = 30.0;
        c.picard_tol = 1e-8;
        c.initial = "step";
        c.step_edge = 5.0;
        c.step_rate = 10.0;
        c.stim_region_kind = "none";
        c.snapshot_every = 5.0;
    } else if (name == "br-cable-1d") {
        c.kind = "beeler-reuter";
        c.dimension = 1;
        c.length = 10.0;
        c.nodes = 1001; // dx = 0.01 cm
        c.region_kind = "half-split";
        c.split_x = 5.0;
        c.alpha1 = 1.5;
        c.alpha2 = 2.0;
        c.diffusivity = 1.0;
        c.capacitance = 1.0;
        c.surface_to_volume = 2000.0;
        c.dt = 0.25;
        c.t_end = 1200.0;
        c.stim_times = {10.0};
        c.stim_duration = 5.0;
        c.stim_amplitude = 12.0 * c.surface_to_volume;
        c.stim_region_kind = "interval";
        c.stim_x0 = 0.0;
        c.stim_x1 = 0.25;
        c.initial = "rest";
        c.snapshot_every = 100.0;
    } else if (name == "br-heart-3d") {
        c.kind = "beeler-reuter";
        c.dimension = 3;
        // Mesh paths are user-supplied (third-party data, not bundled):
        // override geometry.node_file / geometry.ele_file / geometry.scale.
        c.region_kind = "sphere";
        c.region_center = {1.0352, -0.6256, 0.248};
        c.region_radius = 1.25;
        c.has_exclusion = true;
        c.exclude_x_lt = 1.3;
        c.exclude_y_gt = 0.095;
        c.exclude_x_gt = -0.3;
        c.alpha1 = 2.0;
        c.alpha2 = 1.7;
        c.diffusivity = 2.0;
        c.capacitance = 1.0;
        c.surface_to_volume = 2000.0;
        c.dt = 0.25;
        c.t_end = 1500.0;
        c.stim_times = {10.0, 335.0, 660.0, 985.0, 1310.0};
        c.stim_duration = 5.0;
        c.stim_amplitude = 14.0 * c.surface_to_volume;
        c.stim_region_kind = "sphere";
        c.stim_center = {0.3513, 0.0707, -1.0772};
        c.stim_radius = 0.5;
        c.initial = "rest";
        c.snapshot_every = 10.0;
    } else {
        throw ConfigError("unknown preset '" + name +
                          "' (available: fisher-1d, br-cable-1d, br-heart-3d)");
    }
    return c;
}

SimulationSetup build_setup(const SimulationConfig& config) {
    config.validate();
    SimulationSetup s;
    s.config = config;

    SymmetrizedOperator sym;
    RegionPartition partition;
    if (config.dimension == 1) {
        s.mesh1d = Mesh1D{config.nodes, config.length / static_cast<double>(config.nodes - 1),
                          0.0};
        sym = as_symmetrized(build_laplacian_1d(s.mesh1d));
        partition = partition_regions(s.mesh1d, region_predicate(config));
    } else {
        s.mesh3d = load_tet_mesh(config.node_file, config.ele_file);
        if (config.mesh_scale != 1.0)
            s.mesh3d.scale(config.mesh_scale);
        sym = symmetrize(build_fvm_tet(s.mesh3d));
        partition = partition_regions(s.mesh3d, region_predicate(config));
    }

    FractionalOrderField orders{config.alpha1, config.alpha2, std::move(partition)};
    VoflOperator::Config oc;
    oc.diffusivity = config.effective_d();
    oc.engine.quad_points = config.quad_points;
    oc.engine.deflation = config.deflation;
    oc.engine.lanczos_tol = config.lanczos_tol;
    oc.engine.poly_degree = config.poly_degree;
    s.op = std::make_shared<VoflOperator>(std::move(sym), std::move(orders), oc);
    s.op->prepare(config.dt);

    if (config.kind == "fisher") {
        s.model = std::make_shared<FisherModel>();
    } else {
        BeelerReuterModel::Parameters p;
        p.capacitance = config.capacitance;
        p.surface_to_volume = config.surface_to_volume;
        p.use_rate_table = config.use_rate_table;
        s.model = std::make_shared<BeelerReuterModel>(p);
    }

    const auto nodes = stimulus_nodes(s);
    if (!nodes.empty() && !config.stim_times.empty()) {
        const double amp = config.stim_amplitude;
        const std::vector<double> times = config.stim_times;
        const double dur = config.stim_duration;
        s.stimulus = [nodes, times, dur, amp](double t, Vector& stim) {
            for (double t0 : times)
                if (t >= t0 && t < t0 + dur) {
                    for (Index i : nodes)
                        stim[i] += amp;
                    return;
                }
        };
    }

    s.initial = initial_state(s);
    s.grid = TimeGrid::make(config.dt, config.t_end);
    s.picard = PicardSettings{config.picard_tol, config.picard_max_iter};
    return s;
}

RunSummary run_simulation(const SimulationConfig& config, const RunOptions& options) {
    SimulationSetup s = build_setup(config);

    std::string out_dir;
    if (options.out_dir)
        out_dir = *options.out_dir;
    else if (config.directory)
        out_dir = *config.directory;
    else if (const char* env = std::getenv("FRACSIM_OUT_DIR"))
        out_dir = env;
    else
        out_dir = "out";
    std::filesystem::create_directories(out_dir);

    const double every_ms = options.snapshot_every.value_or(config.snapshot_every);
    const Index every_steps =
        std::max<Index>(1, static_cast<Index>(std::llround(every_ms / config.dt)));

    RunSummary summary;
    summary.out_dir = out_dir;

    std::vector<ObserverEntry> observers;
    observers.push_back(ObserverEntry{
        every_steps, [&](Index step, double, const State& st) {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%06lld.%s",
                          static_cast<long long>(step),
                          config.dimension == 1 ? "txt" : "vtk");
            const std::string path = out_dir + "/" + name;
            if (config.dimension == 1)
                write_snapshot_1d(st, s.mesh1d, path, config.write_gates);
            else
                write_snapshot_3d(st, s.mesh3d, path);
            ++summary.snapshots_written;
        }});

    IntegrationResult res = integrate(*s.op, std::move(s.initial), *s.model, s.grid,
                                      s.stimulus, observers, s.picard, options.threads);
    summary.final_state = std::move(res.state);
    summary.steps = res.steps;
    summary.average_picard = res.average_picard;
    summary.matfunc = res.matfunc;
    if (!options.quiet)
        std::fprintf(stderr, "completed %lld steps, avg fixed-point iterations %.2f\n",
                     static_cast<long long>(summary.steps), summary.average_picard);
    return summary;
}

} // namespace fraclap::app
