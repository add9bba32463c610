#include "fraclap/app/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace fraclap::app {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::string& path) {
    File f(std::fopen(path.c_str(), "w"));
    if (!f)
        throw ConfigError("cannot open output file: " + path);
    return f;
}

} // namespace

void write_snapshot_1d(const State& state, const Mesh1D& mesh, const std::string& path,
                       bool with_gates) {
    if (state.v.size() != mesh.n_nodes)
        throw ConfigError("snapshot: state/mesh size mismatch");
    File f = open_for_write(path);
    if (with_gates && state.aux.rows() == br::kAuxDim)
        std::fprintf(f.get(), "# x v m h j d f x c\n");
    else
        std::fprintf(f.get(), "# x v\n");
    for (Index i = 0; i < mesh.n_nodes; ++i) {
        std::fprintf(f.get(), "%.8e %.8e", mesh.coord(i), state.v[i]);
        if (with_gates && state.aux.rows() == br::kAuxDim)
            for (int k = 0; k < br::kAuxDim; ++k)
                std::fprintf(f.get(), " %.8e", state.aux(k, i));
        std::fprintf(f.get(), "\n");
    }
    if (std::ferror(f.get()))
        throw ConfigError("write failed: " + path);
}

void read_snapshot_1d(const std::string& path, Vector& x, Vector& v) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open snapshot: " + path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream ss(line);
        double xi, vi;
        if (!(ss >> xi >> vi))
            throw ConfigError("malformed snapshot row in " + path + ": '" + line + "'");
        xs.push_back(xi);
        vs.push_back(vi);
    }
    x = Eigen::Map<Vector>(xs.data(), static_cast<Index>(xs.size()));
    v = Eigen::Map<Vector>(vs.data(), static_cast<Index>(vs.size()));
}

void write_snapshot_3d(const State& state, const TetMesh& mesh, const std::string& path) {
    if (state.v.size() != mesh.n_nodes())
        throw ConfigError("snapshot: state/mesh size mismatch");
    File f = open_for_write(path);
    std::fprintf(f.get(), "# vtk DataFile Version 3.0\n");
    std::fprintf(f.get(), "transmembrane potential\n");
    std::fprintf(f.get(), "ASCII\n");
    std::fprintf(f.get(), "DATASET UNSTRUCTURED_GRID\n");
    std::fprintf(f.get(), "POINTS %" PRId64 " double\n",
                 static_cast<int64_t>(mesh.n_nodes()));
    for (const auto& p : mesh.nodes)
        std::fprintf(f.get(), "%.8e %.8e %.8e\n", p[0], p[1], p[2]);
    std::fprintf(f.get(), "CELLS %" PRId64 " %" PRId64 "\n",
                 static_cast<int64_t>(mesh.n_elements()),
                 static_cast<int64_t>(5 * mesh.n_elements()));
    for (const auto& el : mesh.elements)
        std::fprintf(f.get(), "4 %" PRId64 " %" PRId64 " %" PRId64 " %" PRId64 "\n",
                     static_cast<int64_t>(el[0]), static_cast<int64_t>(el[1]),
                     static_cast<int64_t>(el[2]), static_cast<int64_t>(el[3]));
    std::fprintf(f.get(), "CELL_TYPES %" PRId64 "\n",
                 static_cast<int64_t>(mesh.n_elements()));
    for (Index e = 0; e < mesh.n_elements(); ++e)
        std::fprintf(f.get(), "10\n");
    std::fprintf(f.get(), "POINT_DATA %" PRId64 "\n",
                 static_cast<int64_t>(mesh.n_nodes()));
    std::fprintf(f.get(), "SCALARS v double 1\n");
    std::fprintf(f.get(), "LOOKUP_TABLE default\n");
    for (Index i = 0; i < state.v.size(); ++i)
        std::fprintf(f.get(), "%.8e\n", state.v[i]);
    if (std::ferror(f.get()))
        throw ConfigError("write failed: " + path);
}

} // namespace fraclap::app
