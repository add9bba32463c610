#include "fraclap/discretize.hpp"

#include <cmath>

namespace fraclap {

RegionPartition::RegionPartition(std::vector<int> region_of)
    : region_of_(std::move(region_of)) {
    for (size_t i = 0; i < region_of_.size(); ++i) {
        if (region_of_[i] == 1)
            idx1_.push_back(static_cast<Index>(i));
        else if (region_of_[i] == 2)
            idx2_.push_back(static_cast<Index>(i));
        else
            throw ConfigError("region label must be 1 or 2, node " + std::to_string(i) +
                              " has " + std::to_string(region_of_[i]) +
                              " (more than two regions is not supported)");
    }
}

RegionPartition RegionPartition::all_region1(Index n) {
    return RegionPartition(std::vector<int>(static_cast<size_t>(n), 1));
}

Vector RegionPartition::mask2(const Vector& u) const {
    Vector out = Vector::Zero(u.size());
    for (Index i : idx2_)
        out[i] = u[i];
    return out;
}

Vector RegionPartition::mask1(const Vector& u) const {
    Vector out = Vector::Zero(u.size());
    for (Index i : idx1_)
        out[i] = u[i];
    return out;
}

RegionPartition RegionPartition::swapped() const {
    std::vector<int> flipped(region_of_.size());
    for (size_t i = 0; i < region_of_.size(); ++i)
        flipped[i] = region_of_[i] == 1 ? 2 : 1;
    return RegionPartition(std::move(flipped));
}

RegionPredicate half_interval_predicate(double split) {
    return [split](double x, double, double) { return x > split; };
}

RegionPredicate sphere_with_box_exclusion_predicate(double cx, double cy, double cz,
                                                    double radius, double x_lt,
                                                    double y_gt, double x_gt) {
    return [=](double x, double y, double z) {
        const double dx = x - cx, dy = y - cy, dz = z - cz;
        if (dx * dx + dy * dy + dz * dz > radius * radius)
            return false;
        const bool excluded = (x < x_lt) && (y > y_gt) && (x > x_gt);
        return !excluded;
    };
}

RegionPartition partition_regions(const Mesh1D& mesh, const RegionPredicate& in_region2) {
    mesh.validate();
    std::vector<int> labels(static_cast<size_t>(mesh.n_nodes));
    for (Index i = 0; i < mesh.n_nodes; ++i)
        labels[static_cast<size_t>(i)] = in_region2(mesh.coord(i), 0.0, 0.0) ? 2 : 1;
    return RegionPartition(std::move(labels));
}

RegionPartition partition_regions(const TetMesh& mesh, const RegionPredicate& in_region2) {
    std::vector<int> labels(mesh.nodes.size());
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
        const auto& p = mesh.nodes[i];
        labels[i] = in_region2(p[0], p[1], p[2]) ? 2 : 1;
    }
    return RegionPartition(std::move(labels));
}

SparseOperator build_laplacian_1d(const Mesh1D& mesh) {
    mesh.validate();
    const Index n = mesh.n_nodes;
    const double s = 1.0 / (mesh.spacing * mesh.spacing);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(3 * n));
    for (Index i = 0; i < n; ++i) {
        if (i > 0)
            trips.emplace_back(i, i - 1, -s);
        const double diag = (i == 0 || i == n - 1) ? s : 2.0 * s;
        trips.emplace_back(i, i, diag);
        if (i < n - 1)
            trips.emplace_back(i, i + 1, -s);
    }
    SparseOperator::Matrix mat(n, n);
    mat.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(std::move(mat));
}

MassStiffness build_fvm_tet(const TetMesh& mesh) {
    mesh.validate();
    const Index n = mesh.n_nodes();
    Vector mass = Vector::Zero(n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(mesh.elements.size() * 16);

    for (Index e = 0; e < mesh.n_elements(); ++e) {
        const auto& el = mesh.elements[static_cast<size_t>(e)];
        const auto& p0 = mesh.nodes[static_cast<size_t>(el[0])];
        const auto& p1 = mesh.nodes[static_cast<size_t>(el[1])];
        const auto& p2 = mesh.nodes[static_cast<size_t>(el[2])];
        const auto& p3 = mesh.nodes[static_cast<size_t>(el[3])];
        Eigen::Matrix3d J;
        for (int c = 0; c < 3; ++c) {
            J(c, 0) = p1[c] - p0[c];
            J(c, 1) = p2[c] - p0[c];
            J(c, 2) = p3[c] - p0[c];
        }
        const double det = J.determinant();
        const double vol = std::abs(det) / 6.0;
        if (!(vol > 0.0) || !std::isfinite(vol))
            throw ConfigError("degenerate element " + std::to_string(e) +
                              ": zero or non-finite volume");

        // Gradients of the linear basis functions (constant per element).
        Eigen::Matrix3d Jinv_t = J.inverse().transpose();
        Eigen::Matrix<double, 3, 4> grads;
        grads.col(1) = Jinv_t.col(0);
        grads.col(2) = Jinv_t.col(1);
        grads.col(3) = Jinv_t.col(2);
        grads.col(0) = -(grads.col(1) + grads.col(2) + grads.col(3));

        for (int a = 0; a < 4; ++a) {
            mass[el[a]] += vol / 4.0;
            for (int b = 0; b < 4; ++b) {
                const double kab = vol * grads.col(a).dot(grads.col(b));
                trips.emplace_back(el[a], el[b], kab);
            }
        }
    }

    SparseOperator::Matrix K(n, n);
    K.setFromTriplets(trips.begin(), trips.end());
    return MassStiffness{std::move(mass), SparseOperator(std::move(K))};
}

SymmetrizedOperator symmetrize(const MassStiffness& ms) {
    const Index n = ms.mass.size();
    if (n != ms.stiffness.dim())
        throw ConfigError("mass/stiffness dimension mismatch");
    for (Index i = 0; i < n; ++i)
        if (!(ms.mass[i] > 0.0))
            throw ConfigError("nonpositive mass entry at node " + std::to_string(i));

    Vector sqrt_m = ms.mass.cwiseSqrt();
    Vector inv_sqrt_m = sqrt_m.cwiseInverse();

    SparseOperator::Matrix scaled = ms.stiffness.matrix();
    for (Index i = 0; i < scaled.outerSize(); ++i)
        for (SparseOperator::Matrix::InnerIterator it(scaled, i); it; ++it)
            it.valueRef() *= inv_sqrt_m[it.row()] * inv_sqrt_m[it.col()];

    SymmetrizedOperator out;
    out.sym = SparseOperator(std::move(scaled));
    out.sqrt_mass = std::move(sqrt_m);
    out.inv_sqrt_mass = std::move(inv_sqrt_m);
    return out;
}

SymmetrizedOperator as_symmetrized(SparseOperator op) {
    SymmetrizedOperator out;
    out.sym = std::move(op);
    return out;
}

} // namespace fraclap
