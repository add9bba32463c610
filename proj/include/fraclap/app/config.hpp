#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/types.hpp"

namespace fraclap::app {

/// Full description of one simulation run. Parsed from INI-style text
/// ("[section]" headers, "key = value" lines, '#' comments); see the
/// README for the format reference.
struct SimulationConfig {
    // [problem]
    std::string kind = "beeler-reuter"; // fisher | beeler-reuter

    // [geometry]
    int dimension = 1;
    double length = 10.0; // cm, 1D
    Index nodes = 1001;   // 1D
    std::string node_file;
    std::string ele_file;
    double mesh_scale = 1.0;

    // [regions]
    std::string region_kind = "half-split"; // none | half-split | sphere
    double split_x = 5.0;
    std::array<double, 3> region_center = {0.0, 0.0, 0.0};
    double region_radius = 1.0;
    bool has_exclusion = false;
    double exclude_x_lt = 0.0;
    double exclude_y_gt = 0.0;
    double exclude_x_gt = 0.0;

    // [orders]
    double alpha1 = 2.0;
    double alpha2 = 2.0;

    // [physics]
    double diffusivity = 1.0;        // D, mS/cm
    double capacitance = 1.0;        // C_m, uF/cm^2
    double surface_to_volume = 2000; // chi, 1/cm
    std::optional<double> effective_diffusivity; // overrides D/(chi C_m)
    bool use_rate_table = false;

    // [time]
    double dt = 0.25;      // ms
    double t_end = 1200.0; // ms

    // [picard]
    double picard_tol = 1e-6;
    int picard_max_iter = 50;

    // [engine]
    int quad_points = 32;
    Index deflation = 1;
    double lanczos_tol = 1e-9;
    int poly_degree = 8;

    // [stimulus]
    std::vector<double> stim_times; // ms, ascending
    double stim_duration = 5.0;     // ms
    double stim_amplitude = 0.0;    // uA/cm^3
    std::string stim_region_kind = "none"; // none | interval | sphere
    double stim_x0 = 0.0;
    double stim_x1 = 0.25;
    std::array<double, 3> stim_center = {0.0, 0.0, 0.0};
    double stim_radius = 0.5;

    // [init]
    std::string initial = "rest"; // rest | step | constant
    double step_edge = 5.0;       // u = 1 left of the edge,
    double step_rate = 10.0;      // exp(-rate (x - edge)) beyond it
    double init_value = 0.0;

    // [output]
    std::optional<std::string> directory;
    double snapshot_every = 100.0; // ms
    bool write_gates = false;

    bool operator==(const SimulationConfig&) const = default;

    /// Effective diffusion coefficient used by the PDE.
    double effective_d() const {
        return effective_diffusivity ? *effective_diffusivity
                                     : diffusivity / (surface_to_volume * capacitance);
    }

    void validate() const;
};

/// Parse from text; rejects unknown sections/keys with line numbers and
/// validates field ranges.
SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::string& path);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimulationConfig& c);

/// Apply one "section.key=value" override.
void apply_override(SimulationConfig& c, const std::string& dotted_key,
                    const std::string& value);

} // namespace fraclap::app
