// fracsim: reaction-diffusion simulations with a spatially variable-order
// fractional Laplacian. Subcommands: simulate, preset, threshold.

#include <CLI11.hpp>
#include <cstdio>

#include "fraclap/app/config.hpp"
#include "fraclap/app/simulation.hpp"
#include "fraclap/app/threshold.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct Common {
    int threads = 1;
    std::string out_dir;
    double snapshot_every = 0.0;
};

fraclap::app::RunOptions run_options(const Common& c) {
    fraclap::app::RunOptions o;
    o.threads = c.threads;
    if (!c.out_dir.empty())
        o.out_dir = c.out_dir;
    if (c.snapshot_every > 0.0)
        o.snapshot_every = c.snapshot_every;
    return o;
}

void report(const fraclap::app::RunSummary& s) {
    std::printf("steps: %lld\n", static_cast<long long>(s.steps));
    std::printf("avg fixed-point iterations: %.3f\n", s.average_picard);
    std::printf("matvecs: %d\n", s.matfunc.matvecs);
    std::printf("snapshots: %d -> %s\n", s.snapshots_written, s.out_dir.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-order fractional reaction-diffusion simulator"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--threads", common.threads, "worker threads for per-node updates")
        ->capture_default_str();
    app.add_option("--out", common.out_dir, "output directory (default: config, then "
                                            "$FRACSIM_OUT_DIR, then ./out)");
    app.add_option("--snapshot-every", common.snapshot_every,
                   "snapshot cadence in ms (overrides config)");

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a simulation from a config file");
    sim->add_option("config", config_path, "INI config file")->required();

    std::string preset_name;
    std::vector<std::string> overrides;
    auto* pre = app.add_subcommand("preset", "run a bundled experiment preset");
    pre->add_option("name", preset_name, "fisher-1d | br-cable-1d | br-heart-3d")
        ->required();
    pre->add_option("--override", overrides, "section.key=value (repeatable)");
    bool print_only = false;
    pre->add_flag("--print-config", print_only, "print the effective config and exit");

    std::string thr_config_path;
    auto* thr = app.add_subcommand("threshold",
                                   "bisection search for the diastolic threshold");
    thr->add_option("config", thr_config_path, "INI config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            const auto cfg = fraclap::app::load_config(config_path);
            report(fraclap::app::run_simulation(cfg, run_options(common)));
        } else if (pre->parsed()) {
            auto cfg = fraclap::app::make_preset(preset_name);
            for (const auto& ov : overrides) {
                const auto eq = ov.find('=');
                if (eq == std::string::npos)
                    throw fraclap::ConfigError("override must be section.key=value: " + ov);
                fraclap::app::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
            }
            cfg.validate();
            if (print_only) {
                std::fputs(fraclap::app::serialize_config(cfg).c_str(), stdout);
                return 0;
            }
            report(fraclap::app::run_simulation(cfg, run_options(common)));
        } else if (thr->parsed()) {
            const auto cfg = fraclap::app::load_config(thr_config_path);
            const auto res = fraclap::app::find_diastolic_threshold(cfg, common.threads);
            std::printf("diastolic threshold: %.6g uA/cm^3\n", res.amplitude);
            std::printf("bracket: [%.6g, %.6g], probe node %lld, %d simulations\n",
                        res.bracket_low, res.bracket_high,
                        static_cast<long long>(res.probe_node), res.simulations);
        }
    } catch (const fraclap::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const fraclap::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalError;
    }
    return 0;
}
