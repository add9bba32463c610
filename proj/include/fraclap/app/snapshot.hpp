#pragma once

#include <string>

#include "fraclap/mesh.hpp"
#include "fraclap/reaction.hpp"

namespace fraclap::app {

/// Text table, one row per node: x, v (and the seven gating columns when
/// with_gates is set). Fixed 9-significant-digit scientific format so
/// identical states produce identical bytes.
void write_snapshot_1d(const State& state, const Mesh1D& mesh, const std::string& path,
                       bool with_gates = false);

/// Read back a 1D snapshot written by write_snapshot_1d (x and v columns).
void read_snapshot_1d(const std::string& path, Vector& x, Vector& v);

/// Legacy ASCII VTK unstructured grid (tetra cells, point scalars "v").
void write_snapshot_3d(const State& state, const TetMesh& mesh, const std::string& path);

} // namespace fraclap::app
