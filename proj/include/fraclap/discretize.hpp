#pragma once

#include <functional>
#include <vector>

#include "fraclap/mesh.hpp"
#include "fraclap/sparse_operator.hpp"

namespace fraclap {

/// Two-region node partition. Region 1 is the principal region (healthy
/// tissue); region 2 carries the correction term of the split operator.
/// Nodes keep their original ordering; membership is stored as index sets.
class RegionPartition {
public:
    RegionPartition() = default;

    /// region_of[i] must be 1 or 2 for every node.
    explicit RegionPartition(std::vector<int> region_of);

    static RegionPartition all_region1(Index n);

    Index n_nodes() const { return static_cast<Index>(region_of_.size()); }
    int region_of(Index i) const { return region_of_[static_cast<size_t>(i)]; }
    const std::vector<Index>& region1() const { return idx1_; }
    const std::vector<Index>& region2() const { return idx2_; }

    /// Apply the selector E_{Omega_2}: zero everywhere except identity on
    /// region-2 rows. mask2(u) + mask1(u) == u exactly.
    Vector mask2(const Vector& u) const;
    Vector mask1(const Vector& u) const;

    /// Swap the roles of the two regions (used when the fractional orders
    /// are exchanged so that the implicit solve sees the integer order).
    RegionPartition swapped() const;

private:
    std::vector<int> region_of_;
    std::vector<Index> idx1_, idx2_;
};

/// Point-classification predicate: true => node belongs to region 2.
using RegionPredicate = std::function<bool(double x, double y, double z)>;

/// Region 2 is the open half-interval x > split (region 1 is closed on the
/// left: x <= split).
RegionPredicate half_interval_predicate(double split);

/// Region 2 is a sphere minus an axis-aligned exclusion box given by the
/// conjunction x < x_lt && y > y_gt && x > x_gt.
RegionPredicate sphere_with_box_exclusion_predicate(double cx, double cy, double cz,
                                                    double radius, double x_lt,
                                                    double y_gt, double x_gt);

RegionPartition partition_regions(const Mesh1D& mesh, const RegionPredicate& in_region2);
RegionPartition partition_regions(const TetMesh& mesh, const RegionPredicate& in_region2);

/// Uniform finite differences with the symmetric Neumann closure:
/// interior rows (-1, 2, -1)/dx^2, boundary rows (1, -1)/dx^2.
SparseOperator build_laplacian_1d(const Mesh1D& mesh);

/// Vertex-centred finite volumes on a tetrahedral mesh: diagonal mass
/// (quarter of each incident element volume) and linear-basis stiffness.
MassStiffness build_fvm_tet(const TetMesh& mesh);

/// A~ = M^{-1/2} K M^{-1/2}, keeping the scaling vectors so that callers
/// can evaluate f(M^{-1} K).
SymmetrizedOperator symmetrize(const MassStiffness& ms);

/// Wrap a plain operator (identity mass) in the common interface.
SymmetrizedOperator as_symmetrized(SparseOperator op);

} // namespace fraclap
