#include <doctest.h>

#include <cmath>

#include "fraclap/discretize.hpp"
#include "support/oracles.hpp"
#include "support/testmesh.hpp"

using namespace fraclap;

TEST_CASE("two- and three-node 1D Laplacians") {
    const auto A2 = build_laplacian_1d(Mesh1D{2, 1.0, 0.0});
    CHECK(A2.matrix().coeff(0, 0) == 1.0);
    CHECK(A2.matrix().coeff(0, 1) == -1.0);
    CHECK(A2.matrix().coeff(1, 0) == -1.0);
    CHECK(A2.matrix().coeff(1, 1) == 1.0);

    const auto A3 = build_laplacian_1d(Mesh1D{3, 1.0, 0.0});
    const Eigen::MatrixXd D = oracle::densify(A3);
    Eigen::MatrixXd expect(3, 3);
    expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK((D - expect).norm() == 0.0);
}

TEST_CASE("1D operator invariants: symmetry, null space, PSD, spectrum") {
    for (Index n : {7, 50, 200}) {
        const double dx = 0.31;
        const auto A = build_laplacian_1d(Mesh1D{n, dx, 0.0});
        CHECK(A.symmetry_defect() <= 1e-14);
        CHECK(A.row_sums().lpNorm<Eigen::Infinity>() <= 1e-12);

        // Constant vector is annihilated.
        const Vector ones = Vector::Ones(n);
        CHECK((A.apply(ones)).lpNorm<Eigen::Infinity>() <= 1e-12);

        const oracle::DenseSpectral dense(A);
        CHECK(dense.eigenvalues()[0] >= -1e-10 * dense.eigenvalues()[n - 1]);

        // Analytic Neumann spectrum.
        const Vector analytic = oracle::neumann_1d_spectrum(n, dx);
        for (Index k = 1; k < n; ++k)
            CHECK(dense.eigenvalues()[k] ==
                  doctest::Approx(analytic[k]).epsilon(1e-10));
    }
    CHECK_THROWS_AS(build_laplacian_1d(Mesh1D{1, 1.0, 0.0}), ConfigError);
}

TEST_CASE("single right tetrahedron mass") {
    const auto ms = build_fvm_tet(testmesh::unit_right_tet());
    for (Index i = 0; i < 4; ++i)
        CHECK(ms.mass[i] == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(ms.stiffness.row_sums().lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("two-element mesh stiffness matches per-element assembly oracle") {
    TetMesh mesh;
    mesh.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    mesh.elements = {{0, 1, 2, 3}, {1, 2, 3, 4}};
    const auto ms = build_fvm_tet(mesh);
    CHECK(ms.stiffness.symmetry_defect() <= 1e-14);

    // Direct per-element gradient computation.
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(5, 5);
    for (const auto& el : mesh.elements) {
        Eigen::Matrix3d J;
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r)
                J(r, c) = mesh.nodes[static_cast<size_t>(el[static_cast<size_t>(c + 1)])]
                                    [static_cast<size_t>(r)] -
                          mesh.nodes[static_cast<size_t>(el[0])][static_cast<size_t>(r)];
        const double vol = std::abs(J.determinant()) / 6.0;
        Eigen::Matrix<double, 3, 4> g;
        const Eigen::Matrix3d Jit = J.inverse().transpose();
        g.col(1) = Jit.col(0);
        g.col(2) = Jit.col(1);
        g.col(3) = Jit.col(2);
        g.col(0) = -(g.col(1) + g.col(2) + g.col(3));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                K(el[static_cast<size_t>(a)], el[static_cast<size_t>(b)]) +=
                    vol * g.col(a).dot(g.col(b));
    }
    CHECK((oracle::densify(ms.stiffness) - K).norm() <= 1e-13 * K.norm());
}

TEST_CASE("FVM mass sums to mesh volume and K annihilates constants") {
    const auto mesh = testmesh::box(4, 3, 3, 2.0, 1.0, 1.5);
    const auto ms = build_fvm_tet(mesh);
    CHECK(ms.mass.sum() == doctest::Approx(mesh.total_volume()).epsilon(1e-12));
    CHECK(ms.mass.sum() == doctest::Approx(2.0 * 1.0 * 1.5).epsilon(1e-12));
    CHECK(ms.stiffness.row_sums().lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(ms.stiffness.symmetry_defect() <= 1e-14);
    for (Index i = 0; i < ms.mass.size(); ++i)
        CHECK(ms.mass[i] > 0.0);
}

TEST_CASE("degenerate element is reported by index") {
    TetMesh mesh;
    mesh.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
    mesh.elements = {{0, 1, 2, 3}, {0, 1, 2, 4}}; // element 1 is planar
    CHECK_THROWS_WITH_AS(build_fvm_tet(mesh), doctest::Contains("element 1"), ConfigError);
}

TEST_CASE("symmetrize examples") {
    // M = I leaves K unchanged.
    {
        SparseOperator::Matrix k(2, 2);
        k.insert(0, 0) = 1.0;
        k.insert(0, 1) = -1.0;
        k.insert(1, 0) = -1.0;
        k.insert(1, 1) = 1.0;
        MassStiffness ms{Vector::Ones(2), SparseOperator(std::move(k))};
        const auto sym = symmetrize(ms);
        CHECK((oracle::densify(sym.sym) - oracle::densify(ms.stiffness)).norm() == 0.0);
    }
    // M = diag(4, 1).
    {
        SparseOperator::Matrix k(2, 2);
        k.insert(0, 0) = 1.0;
        k.insert(0, 1) = -1.0;
        k.insert(1, 0) = -1.0;
        k.insert(1, 1) = 1.0;
        Vector m(2);
        m << 4.0, 1.0;
        MassStiffness ms{m, SparseOperator(std::move(k))};
        const auto sym = symmetrize(ms);
        const Eigen::MatrixXd S = oracle::densify(sym.sym);
        CHECK(S(0, 0) == doctest::Approx(0.25));
        CHECK(S(0, 1) == doctest::Approx(-0.5));
        CHECK(S(1, 0) == doctest::Approx(-0.5));
        CHECK(S(1, 1) == doctest::Approx(1.0));

        // Similarity: eigenvalues of A~ equal those of M^{-1} K.
        Eigen::MatrixXd MinvK(2, 2);
        MinvK << 0.25, -0.25, -1.0, 1.0;
        const Eigen::VectorXcd ev = MinvK.eigenvalues();
        const oracle::DenseSpectral ds(sym.sym);
        std::vector<double> got{ds.eigenvalues()[0], ds.eigenvalues()[1]};
        std::vector<double> want{ev[0].real(), ev[1].real()};
        std::sort(want.begin(), want.end());
        CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-12));
        CHECK(got[1] == doctest::Approx(want[1]).epsilon(1e-12));
    }
    // Nonpositive mass rejected.
    {
        SparseOperator::Matrix k(1, 1);
        k.insert(0, 0) = 1.0;
        Vector m(1);
        m << 0.0;
        MassStiffness ms{m, SparseOperator(std::move(k))};
        CHECK_THROWS_AS(symmetrize(ms), ConfigError);
    }
}

TEST_CASE("region partition of the half interval") {
    const Mesh1D mesh{101, 0.1, 0.0}; // L = 10
    const auto part = partition_regions(mesh, half_interval_predicate(5.0));
    // x = 5.0 belongs to region 1 (closed on the left), 5.1 to region 2.
    CHECK(part.region_of(50) == 1);
    CHECK(part.region_of(51) == 2);
    CHECK(part.region1().size() + part.region2().size() == 101);

    // Selector identities.
    Vector u = Vector::LinSpaced(101, -3.0, 7.0);
    CHECK(((part.mask1(u) + part.mask2(u)) - u).lpNorm<Eigen::Infinity>() == 0.0);
    const Vector m2 = part.mask2(u);
    for (Index i : part.region1())
        CHECK(m2[i] == 0.0);
}

TEST_CASE("sphere-with-exclusion predicate") {
    const auto pred = sphere_with_box_exclusion_predicate(1.0352, -0.6256, 0.248, 1.25,
                                                          1.3, 0.095, -0.3);
    CHECK(pred(1.0, -0.6, 0.2));        // inside the sphere
    CHECK(!pred(3.0, 0.0, 0.0));        // outside the sphere
    CHECK(!pred(0.5, 0.2, 0.3));        // inside the sphere but excluded box
    CHECK(pred(1.0352, -0.6256, 0.248)); // centre, y < 0.095 so not excluded
}

TEST_CASE("all-false predicate yields an empty region 2") {
    const Mesh1D mesh{11, 1.0, 0.0};
    const auto part =
        partition_regions(mesh, [](double, double, double) { return false; });
    CHECK(part.region2().empty());
    CHECK(part.region1().size() == 11);
}

TEST_CASE("node and element files round through the loader") {
    const auto mesh = testmesh::box(3, 2, 2, 1.0, 1.0, 1.0);
    const std::string nodef = "/tmp/fraclap_test.node";
    const std::string elef = "/tmp/fraclap_test.ele";
    {
        FILE* f = fopen(nodef.c_str(), "w");
        fprintf(f, "# one-based node file\n");
        for (size_t i = 0; i < mesh.nodes.size(); ++i)
            fprintf(f, "%zu %.17g %.17g %.17g\n", i + 1, mesh.nodes[i][0],
                    mesh.nodes[i][1], mesh.nodes[i][2]);
        fclose(f);
        f = fopen(elef.c_str(), "w");
        for (size_t e = 0; e < mesh.elements.size(); ++e)
            fprintf(f, "%zu %lld %lld %lld %lld\n", e + 1,
                    static_cast<long long>(mesh.elements[e][0] + 1),
                    static_cast<long long>(mesh.elements[e][1] + 1),
                    static_cast<long long>(mesh.elements[e][2] + 1),
                    static_cast<long long>(mesh.elements[e][3] + 1));
        fclose(f);
    }
    const auto loaded = load_tet_mesh(nodef, elef);
    REQUIRE(loaded.n_nodes() == mesh.n_nodes());
    REQUIRE(loaded.n_elements() == mesh.n_elements());
    CHECK(loaded.nodes[5][2] == mesh.nodes[5][2]);
    CHECK(loaded.elements[3] == mesh.elements[3]);
    CHECK(loaded.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
}
