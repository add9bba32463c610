#include "fraclap/mesh.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace fraclap {

void Mesh1D::validate() const {
    if (n_nodes < 2)
        throw ConfigError("invalid 1D mesh: need at least 2 nodes, got " +
                          std::to_string(n_nodes));
    if (!(spacing > 0.0))
        throw ConfigError("invalid 1D mesh: spacing must be positive");
}

double TetMesh::element_volume(Index e) const {
    const auto& el = elements[static_cast<size_t>(e)];
    const auto& p0 = nodes[static_cast<size_t>(el[0])];
    const auto& p1 = nodes[static_cast<size_t>(el[1])];
    const auto& p2 = nodes[static_cast<size_t>(el[2])];
    const auto& p3 = nodes[static_cast<size_t>(el[3])];
    Eigen::Matrix3d J;
    for (int c = 0; c < 3; ++c) {
        J(c, 0) = p1[c] - p0[c];
        J(c, 1) = p2[c] - p0[c];
        J(c, 2) = p3[c] - p0[c];
    }
    return std::abs(J.determinant()) / 6.0;
}

double TetMesh::total_volume() const {
    double v = 0.0;
    for (Index e = 0; e < n_elements(); ++e)
        v += element_volume(e);
    return v;
}

bool TetMesh::connected() const {
    const Index n = n_nodes();
    if (n == 0)
        return false;
    std::vector<std::vector<Index>> adj(static_cast<size_t>(n));
    for (const auto& el : elements)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                adj[static_cast<size_t>(el[a])].push_back(el[b]);
                adj[static_cast<size_t>(el[b])].push_back(el[a]);
            }
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::queue<Index> q;
    q.push(0);
    seen[0] = 1;
    Index count = 1;
    while (!q.empty()) {
        Index i = q.front();
        q.pop();
        for (Index j : adj[static_cast<size_t>(i)])
            if (!seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                ++count;
                q.push(j);
            }
    }
    return count == n;
}

void TetMesh::validate() const {
    if (n_nodes() < 4)
        throw ConfigError("invalid mesh: fewer than 4 nodes");
    if (n_elements() < 1)
        throw ConfigError("invalid mesh: no elements");
    for (Index e = 0; e < n_elements(); ++e)
        for (Index v : elements[static_cast<size_t>(e)])
            if (v < 0 || v >= n_nodes())
                throw ConfigError("invalid mesh: element " + std::to_string(e) +
                                  " references node " + std::to_string(v) +
                                  " outside [0," + std::to_string(n_nodes()) + ")");
    if (!connected())
        throw ConfigError("invalid mesh: node graph is not connected");
}

void TetMesh::scale(double s) {
    if (!(s > 0.0))
        throw ConfigError("mesh scale factor must be positive");
    for (auto& p : nodes)
        for (double& c : p)
            c *= s;
}

namespace {

// Strip comments, return whitespace tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::string clean = line.substr(0, line.find('#'));
    std::istringstream ss(clean);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t)
        toks.push_back(t);
    return toks;
}

} // namespace

TetMesh load_tet_mesh(const std::string& node_path, const std::string& ele_path) {
    std::ifstream nf(node_path);
    if (!nf)
        throw ConfigError("cannot open node file: " + node_path);
    std::ifstream ef(ele_path);
    if (!ef)
        throw ConfigError("cannot open element file: " + ele_path);

    TetMesh mesh;
    std::string line;
    long node_base = -1;
    long lineno = 0;
    while (std::getline(nf, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks.size() < 4)
            throw ConfigError(node_path + ":" + std::to_string(lineno) +
                              ": expected 'index x y z'");
        long idx = std::stol(toks[0]);
        if (node_base < 0) {
            if (idx != 0 && idx != 1)
                throw ConfigError(node_path + ": first node index must be 0 or 1, got " +
                                  std::to_string(idx));
            node_base = idx;
        }
        size_t pos = static_cast<size_t>(idx - node_base);
        if (mesh.nodes.size() <= pos)
            mesh.nodes.resize(pos + 1);
        mesh.nodes[pos] = {std::stod(toks[1]), std::stod(toks[2]), std::stod(toks[3])};
    }

    long ele_base = -1;
    lineno = 0;
    while (std::getline(ef, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks.size() < 5)
            throw ConfigError(ele_path + ":" + std::to_string(lineno) +
                              ": expected 'index n0 n1 n2 n3'");
        long idx = std::stol(toks[0]);
        if (ele_base < 0) {
            if (idx != 0 && idx != 1)
                throw ConfigError(ele_path + ": first element index must be 0 or 1, got " +
                                  std::to_string(idx));
            ele_base = idx;
        }
        size_t pos = static_cast<size_t>(idx - ele_base);
        if (mesh.elements.size() <= pos)
            mesh.elements.resize(pos + 1);
        // Node references share the node file's base.
        mesh.elements[pos] = {static_cast<Index>(std::stol(toks[1]) - node_base),
                              static_cast<Index>(std::stol(toks[2]) - node_base),
                              static_cast<Index>(std::stol(toks[3]) - node_base),
                              static_cast<Index>(std::stol(toks[4]) - node_base)};
    }

    mesh.validate();
    return mesh;
}

} // namespace fraclap
