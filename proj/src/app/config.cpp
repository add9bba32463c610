#include "fraclap/app/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fraclap::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError(where + ": expected true/false, got '" + v + "'");
}

std::array<double, 3> to_triple(const std::string& v, const std::string& where) {
    std::istringstream ss(v);
    std::array<double, 3> out{};
    if (!(ss >> out[0] >> out[1] >> out[2]))
        throw ConfigError(where + ": expected three numbers, got '" + v + "'");
    std::string rest;
    if (ss >> rest)
        throw ConfigError(where + ": trailing content '" + rest + "'");
    return out;
}

std::vector<double> to_list(const std::string& v, const std::string& where) {
    std::istringstream ss(v);
    std::vector<double> out;
    double d;
    while (ss >> d)
        out.push_back(d);
    if (!ss.eof())
        throw ConfigError(where + ": expected a list of numbers, got '" + v + "'");
    return out;
}

void set_field(SimulationConfig& c, const std::string& section, const std::string& key,
               const std::string& value, const std::string& where) {
    const std::string id = section + "." + key;
    if (id == "problem.kind")
        c.kind = value;
    else if (id == "geometry.dimension")
        c.dimension = static_cast<int>(to_long(value, where));
    else if (id == "geometry.length")
        c.length = to_double(value, where);
    else if (id == "geometry.nodes")
        c.nodes = to_long(value, where);
    else if (id == "geometry.node_file")
        c.node_file = value;
    else if (id == "geometry.ele_file")
        c.ele_file = value;
    else if (id == "geometry.scale")
        c.mesh_scale = to_double(value, where);
    else if (id == "regions.kind")
        c.region_kind = value;
    else if (id == "regions.split_x")
        c.split_x = to_double(value, where);
    else if (id == "regions.center")
        c.region_center = to_triple(value, where);
    else if (id == "regions.radius")
        c.region_radius = to_double(value, where);
    else if (id == "regions.exclude_box") {
        const auto t = to_triple(value, where);
        c.has_exclusion = true;
        c.exclude_x_lt = t[0];
        c.exclude_y_gt = t[1];
        c.exclude_x_gt = t[2];
    } else if (id == "orders.alpha1")
        c.alpha1 = to_double(value, where);
    else if (id == "orders.alpha2")
        c.alpha2 = to_double(value, where);
    else if (id == "physics.diffusivity")
        c.diffusivity = to_double(value, where);
    else if (id == "physics.capacitance")
        c.capacitance = to_double(value, where);
    else if (id == "physics.surface_to_volume")
        c.surface_to_volume = to_double(value, where);
    else if (id == "physics.effective_diffusivity")
        c.effective_diffusivity = to_double(value, where);
    else if (id == "physics.use_rate_table")
        c.use_rate_table = to_bool(value, where);
    else if (id == "time.dt")
        c.dt = to_double(value, where);
    else if (id == "time.t_end")
        c.t_end = to_double(value, where);
    else if (id == "picard.tol")
        c.picard_tol = to_double(value, where);
    else if (id == "picard.max_iter")
        c.picard_max_iter = static_cast<int>(to_long(value, where));
    else if (id == "engine.quad_points")
        c.quad_points = static_cast<int>(to_long(value, where));
    else if (id == "engine.deflation")
        c.deflation = to_long(value, where);
    else if (id == "engine.lanczos_tol")
        c.lanczos_tol = to_double(value, where);
    else if (id == "engine.poly_degree")
        c.poly_degree = static_cast<int>(to_long(value, where));
    else if (id == "stimulus.times")
        c.stim_times = to_list(value, where);
    else if (id == "stimulus.duration")
        c.stim_duration = to_double(value, where);
    else if (id == "stimulus.amplitude")
        c.stim_amplitude = to_double(value, where);
    else if (id == "stimulus.region")
        c.stim_region_kind = value;
    else if (id == "stimulus.interval") {
        std::istringstream ss(value);
        if (!(ss >> c.stim_x0 >> c.stim_x1))
            throw ConfigError(where + ": expected two numbers");
    } else if (id == "stimulus.center")
        c.stim_center = to_triple(value, where);
    else if (id == "stimulus.radius")
        c.stim_radius = to_double(value, where);
    else if (id == "init.kind")
        c.initial = value;
    else if (id == "init.step_edge")
        c.step_edge = to_double(value, where);
    else if (id == "init.step_rate")
        c.step_rate = to_double(value, where);
    else if (id == "init.value")
        c.init_value = to_double(value, where);
    else if (id == "output.directory")
        c.directory = value;
    else if (id == "output.snapshot_every")
        c.snapshot_every = to_double(value, where);
    else if (id == "output.write_gates")
        c.write_gates = to_bool(value, where);
    else
        throw ConfigError(where + ": unknown key '" + id + "'");
}

} // namespace

void SimulationConfig::validate() const {
    if (kind != "fisher" && kind != "beeler-reuter")
        throw ConfigError("problem.kind must be 'fisher' or 'beeler-reuter', got '" +
                          kind + "'");
    if (dimension != 1 && dimension != 3)
        throw ConfigError("geometry.dimension must be 1 or 3");
    if (dimension == 1) {
        if (nodes < 2)
            throw ConfigError("geometry.nodes must be at least 2");
        if (!(length > 0.0))
            throw ConfigError("geometry.length must be positive");
    } else {
        if (node_file.empty() || ele_file.empty())
            throw ConfigError("3D runs need geometry.node_file and geometry.ele_file");
        if (!(mesh_scale > 0.0))
            throw ConfigError("geometry.scale must be positive");
    }
    auto check_alpha = [](double a, const char* name) {
        if (!(a > 1.0 && a <= 2.0))
            throw ConfigError(std::string("orders.") + name + " must lie in (1, 2], got " +
                              std::to_string(a));
    };
    check_alpha(alpha1, "alpha1");
    check_alpha(alpha2, "alpha2");
    if (region_kind != "none" && region_kind != "half-split" && region_kind != "sphere")
        throw ConfigError("regions.kind must be none, half-split or sphere");
    if (!(capacitance > 0.0) || !(surface_to_volume > 0.0))
        throw ConfigError("physics.capacitance and physics.surface_to_volume must be "
                          "positive");
    if (diffusivity < 0.0)
        throw ConfigError("physics.diffusivity must be nonnegative");
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw ConfigError("time.dt and time.t_end must be positive");
    if (!(picard_tol > 0.0) || picard_max_iter < 1)
        throw ConfigError("picard settings out of range");
    if (quad_points < 1 || deflation < 0 || !(lanczos_tol > 0.0))
        throw ConfigError("engine settings out of range");
    if (!stim_times.empty()) {
        if (stim_region_kind == "none")
            throw ConfigError("stimulus.times given but stimulus.region is 'none'");
        if (!(stim_duration > 0.0))
            throw ConfigError("stimulus.duration must be positive");
        for (size_t i = 1; i < stim_times.size(); ++i)
            if (stim_times[i] <= stim_times[i - 1])
                throw ConfigError("stimulus.times must be strictly ascending");
    }
    if (stim_region_kind != "none" && stim_region_kind != "interval" &&
        stim_region_kind != "sphere")
        throw ConfigError("stimulus.region must be none, interval or sphere");
    if (initial != "rest" && initial != "step" && initial != "constant")
        throw ConfigError("init.kind must be rest, step or constant");
    if (!(snapshot_every > 0.0))
        throw ConfigError("output.snapshot_every must be positive");
}

SimulationConfig parse_config(const std::string& text) {
    SimulationConfig c;
    std::istringstream in(text);
    std::string line;
    std::string section;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' outside any section");
        set_field(c, section, key, value, where);
    }
    c.validate();
    return c;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SimulationConfig& c) {
    std::ostringstream o;
    o.precision(17);
    o << "[problem]\nkind = " << c.kind << "\n\n";
    o << "[geometry]\ndimension = " << c.dimension << "\n";
    if (c.dimension == 1)
        o << "length = " << c.length << "\nnodes = " << c.nodes << "\n";
    else
        o << "node_file = " << c.node_file << "\nele_file = " << c.ele_file
          << "\nscale = " << c.mesh_scale << "\n";
    o << "\n[regions]\nkind = " << c.region_kind << "\n";
    if (c.region_kind == "half-split")
        o << "split_x = " << c.split_x << "\n";
    else if (c.region_kind == "sphere") {
        o << "center = " << c.region_center[0] << " " << c.region_center[1] << " "
          << c.region_center[2] << "\nradius = " << c.region_radius << "\n";
        if (c.has_exclusion)
            o << "exclude_box = " << c.exclude_x_lt << " " << c.exclude_y_gt << " "
              << c.exclude_x_gt << "\n";
    }
    o << "\n[orders]\nalpha1 = " << c.alpha1 << "\nalpha2 = " << c.alpha2 << "\n";
    o << "\n[physics]\ndiffusivity = " << c.diffusivity
      << "\ncapacitance = " << c.capacitance
      << "\nsurface_to_volume = " << c.surface_to_volume << "\n";
    if (c.effective_diffusivity)
        o << "effective_diffusivity = " << *c.effective_diffusivity << "\n";
    if (c.use_rate_table)
        o << "use_rate_table = true\n";
    o << "\n[time]\ndt = " << c.dt << "\nt_end = " << c.t_end << "\n";
    o << "\n[picard]\ntol = " << c.picard_tol << "\nmax_iter = " << c.picard_max_iter
      << "\n";
    o << "\n[engine]\nquad_points = " << c.quad_points << "\ndeflation = " << c.deflation
      << "\nlanczos_tol = " << c.lanczos_tol << "\npoly_degree = " << c.poly_degree
      << "\n";
    o << "\n[stimulus]\n";
    if (!c.stim_times.empty()) {
        o << "times =";
        for (double t : c.stim_times)
            o << " " << t;
        o << "\nduration = " << c.stim_duration << "\namplitude = " << c.stim_amplitude
          << "\n";
    }
    o << "region = " << c.stim_region_kind << "\n";
    if (c.stim_region_kind == "interval")
        o << "interval = " << c.stim_x0 << " " << c.stim_x1 << "\n";
    else if (c.stim_region_kind == "sphere")
        o << "center = " << c.stim_center[0] << " " << c.stim_center[1] << " "
          << c.stim_center[2] << "\nradius = " << c.stim_radius << "\n";
    o << "\n[init]\nkind = " << c.initial << "\n";
    if (c.initial == "step")
        o << "step_edge = " << c.step_edge << "\nstep_rate = " << c.step_rate << "\n";
    else if (c.initial == "constant")
        o << "value = " << c.init_value << "\n";
    o << "\n[output]\n";
    if (c.directory)
        o << "directory = " << *c.directory << "\n";
    o << "snapshot_every = " << c.snapshot_every << "\n";
    if (c.write_gates)
        o << "write_gates = true\n";
    return o.str();
}

void apply_override(SimulationConfig& c, const std::string& dotted_key,
                    const std::string& value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be 'section.key', got '" + dotted_key + "'");
    set_field(c, trim(dotted_key.substr(0, dot)), trim(dotted_key.substr(dot + 1)),
              trim(value), "override '" + dotted_key + "'");
}

} // namespace fraclap::app
