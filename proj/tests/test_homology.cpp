#include "helpers.hpp"

#include <doctest.h>

using namespace ghf;

TEST_CASE("generator counts") {
    CHECK(tree_cotree_generators(sphere_mesh(1)).count() == 0);

    FlatTorus torus = flat_torus(8, 8);
    GeneratorSet gens = tree_cotree_generators(torus.mesh);
    CHECK(gens.count() == 2);

    TriMesh genus2 = testing::genus2_mesh(8, 8);
    CHECK(tree_cotree_generators(genus2).count() == 4);

    CHECK_THROWS_AS(tree_cotree_generators(disk_mesh(1.0, 4)), NotClosed);
}

TEST_CASE("cocycles are integer and exactly closed") {
    FlatTorus torus = flat_torus(8, 8);
    GeneratorSet gens = tree_cotree_generators(torus.mesh);
    ExteriorDerivatives d = exterior_derivatives(torus.mesh);
    for (const auto& chi : gens.cocycles) {
        for (int e = 0; e < chi.size(); e++) CHECK(chi[e] == std::round(chi[e]));
        CHECK((d.d1 * chi).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("periods") {
    auto gen = testing::rng();
    FlatTorus torus = flat_torus(8, 8);
    const TriMesh& mesh = torus.mesh;
    GeneratorSet gens = tree_cotree_generators(mesh);
    ExteriorDerivatives d = exterior_derivatives(mesh);

    // Exact forms have exactly zero periods.
    Cochain0 f = testing::random_cochain0(mesh.num_vertices(), gen);
    Eigen::VectorXd p = periods(mesh, d.d0 * f, gens.cycles);
    CHECK(p.cwiseAbs().maxCoeff() < 1e-12);

    // Each generator pairs +-1 with its own cycle and 0 with the other.
    Eigen::MatrixXd pm = period_matrix(mesh, gens, gens.cocycles);
    CHECK(std::abs(std::abs(pm.determinant()) - 1.0) < 1e-12);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            CHECK(std::abs(pm(i, j) - std::round(pm(i, j))) < 1e-12);

    // Brute-force handle test: periods around the canonical grid loops form
    // a unimodular integer matrix, so the two generators wrap the two
    // handles independently.
    auto canonical = testing::flat_torus_canonical_loops(torus, 8, 8);
    Eigen::MatrixXd wrap(2, 2);
    for (int j = 0; j < 2; j++) wrap.col(j) = periods(mesh, gens.cocycles[j], canonical);
    CHECK(std::abs(std::abs(wrap.determinant()) - 1.0) < 1e-12);

    // Cohomology invariance under omega -> omega + d0 f, 100 random f.
    for (int trial = 0; trial < 100; trial++) {
        Cochain0 g = testing::random_cochain0(mesh.num_vertices(), gen);
        Eigen::VectorXd before = periods(mesh, gens.cocycles[0], gens.cycles);
        Eigen::VectorXd after = periods(mesh, gens.cocycles[0] + d.d0 * g, gens.cycles);
        CHECK((before - after).cwiseAbs().maxCoeff() < 1e-12);
    }

    // Open walks are rejected.
    EdgeLoop broken;
    broken.edges = {0, 1};
    broken.signs = {1, 1};
    CHECK_THROWS_AS(periods(mesh, gens.cocycles[0], {broken}), OpenLoop);
}

TEST_CASE("generator count equals 2 - chi") {
    FlatTorus torus = flat_torus(6, 9);
    TopologySummary t = topology_invariants(torus.mesh);
    GeneratorSet gens = tree_cotree_generators(torus.mesh);
    CHECK(gens.count() == 2 - t.chi);
}

TEST_CASE("disconnected mesh is rejected") {
    // Two disjoint tetrahedra.
    std::vector<Vec3> pos;
    std::vector<std::array<int, 3>> faces;
    for (int copy = 0; copy < 2; copy++) {
        int base = 4 * copy;
        double shift = 10.0 * copy;
        pos.push_back({1 + shift, 1, 1});
        pos.push_back({1 + shift, -1, -1});
        pos.push_back({-1 + shift, 1, -1});
        pos.push_back({-1 + shift, -1, 1});
        faces.push_back({base + 0, base + 1, base + 2});
        faces.push_back({base + 0, base + 3, base + 1});
        faces.push_back({base + 0, base + 2, base + 3});
        faces.push_back({base + 1, base + 3, base + 2});
    }
    TriMesh mesh = build_mesh(pos, faces);
    CHECK_THROWS_AS(tree_cotree_generators(mesh), Disconnected);
}
