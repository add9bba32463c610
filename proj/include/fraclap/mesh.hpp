#pragma once

#include <array>
#include <string>
#include <vector>

#include "fraclap/types.hpp"

namespace fraclap {

/// Uniform 1D grid. Node i sits at origin + i * spacing.
struct Mesh1D {
    Index n_nodes = 0;
    double spacing = 0.0; // cm
    double origin = 0.0;  // cm

    double coord(Index i) const { return origin + static_cast<double>(i) * spacing; }
    double length() const { return static_cast<double>(n_nodes - 1) * spacing; }

    void validate() const;
};

/// Unstructured tetrahedral mesh. Element orientation is not required;
/// assembly normalises by absolute volume.
struct TetMesh {
    std::vector<std::array<double, 3>> nodes;    // cm
    std::vector<std::array<Index, 4>> elements;

    Index n_nodes() const { return static_cast<Index>(nodes.size()); }
    Index n_elements() const { return static_cast<Index>(elements.size()); }

    double element_volume(Index e) const;
    double total_volume() const;
    bool connected() const;

    void validate() const;

    /// Multiply all node coordinates by s (unit conversion knob).
    void scale(double s);
};

/// Read a tetrahedral mesh from plain-text node/element files.
/// Node file lines: "index x y z"; element file lines: "index n0 n1 n2 n3".
/// 0- or 1-based indexing is auto-detected from the first index; '#' starts
/// a comment.
TetMesh load_tet_mesh(const std::string& node_path, const std::string& ele_path);

} // namespace fraclap
