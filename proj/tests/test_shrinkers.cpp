#include "helpers.hpp"

#include "ghf/geometry.hpp"
#include "ghf/io.hpp"

#include <doctest.h>

using namespace ghf;

TEST_CASE("sphere generator") {
    TriMesh level0 = sphere_mesh(0);
    CHECK(level0.num_vertices() == 12);
    for (const auto& p : level0.positions) CHECK(p.norm() == doctest::Approx(2.0).epsilon(1e-14));

    TriMesh level4 = sphere_mesh(4);
    CHECK(level4.num_vertices() == 2562);
    CHECK(topology_invariants(level4).genus == 0);
}

TEST_CASE("disk generator") {
    TriMesh disk = disk_mesh(6.0, 16);
    TopologySummary t = topology_invariants(disk);
    CHECK(t.chi == 1);
    CHECK(t.boundary_loops == 1);

    // Gaussian weight at the rim: exp(-9).
    Cochain0 w = gaussian_weight(disk);
    CHECK(w.minCoeff() == doctest::Approx(std::exp(-9.0)).epsilon(1e-9));

    GeometryCache cache = curvature_data(disk);
    CHECK(shrinker_residual(disk, cache).maxCoeff() < 1e-8);
}

TEST_CASE("cylinder generator") {
    TriMesh cyl = cylinder_mesh(3.0, 64);
    TopologySummary t = topology_invariants(cyl);
    CHECK(t.genus == 0);
    CHECK(t.boundary_loops == 2);

    GeometryCache cache = curvature_data(cyl);
    Cochain0 res = shrinker_residual(cyl, cache);
    double sup = 0.0;
    for (int v = 0; v < cyl.num_vertices(); v++)
        if (cache.trusted[v]) sup = std::max(sup, res[v]);
    CHECK(sup < 1e-2);
}

TEST_CASE("angenent profile shooting") {
    ProfileCurve profile = angenent_profile();
    CHECK(profile.closure_error < 1e-8);
    CHECK(profile.shooting_parameter > 0.0);
    CHECK(profile.shooting_parameter < 2.0);
    for (const auto& p : profile.points) CHECK(p[1] > 0.0);

    // Mirror symmetry about x = 0: extremal x values match.
    double xmin = 0.0, xmax = 0.0;
    for (const auto& p : profile.points) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
    }
    CHECK(xmax == doctest::Approx(-xmin).epsilon(1e-6));

    CHECK_THROWS_AS(angenent_profile(1.0, 1.2), NoSignChange);
}

TEST_CASE("revolved torus passes the residual gate") {
    TriMesh torus = angenent_torus(96);
    TopologySummary t = topology_invariants(torus);
    CHECK(t.genus == 1);
    CHECK(t.chi == 0);

    GeometryCache cache = curvature_data(torus);
    CHECK(shrinker_residual(torus, cache).maxCoeff() < 0.05);

    // Self-intersecting profiles are rejected.
    ProfileCurve bad;
    bad.points = {{0.0, 1.0}, {1.0, -0.5}, {0.0, 0.5}};
    CHECK_THROWS_AS(revolve_profile(bad, 8), SelfIntersection);
}

TEST_CASE("generators are deterministic") {
    CHECK(mesh_hash(sphere_mesh(2)) == mesh_hash(sphere_mesh(2)));
    CHECK(mesh_hash(angenent_torus(48)) == mesh_hash(angenent_torus(48)));
    FlatTorus a = flat_torus(9, 7), b = flat_torus(9, 7);
    CHECK(mesh_hash(a.mesh) == mesh_hash(b.mesh));
}

TEST_CASE("flat torus generator") {
    auto weight_fn = [](double u, double) { return 2.0 + std::sin(6.28318530718 * u); };
    FlatTorus torus = flat_torus(8, 10, weight_fn);
    CHECK(topology_invariants(torus.mesh).genus == 1);
    CHECK(torus.mesh.num_vertices() == 80);
    CHECK(!torus.mesh.has_positions());
    CHECK(torus.weight.minCoeff() > 0.0);
    CHECK(torus.weight.size() == 80);

    // Intrinsic JSON round-trip.
    write_intrinsic_json(torus.mesh, &torus.weight, "/tmp/ghf_test_torus.json");
    auto [back, weight] = read_intrinsic_json("/tmp/ghf_test_torus.json");
    CHECK(mesh_hash(back) == mesh_hash(torus.mesh));
    CHECK((weight - torus.weight).cwiseAbs().maxCoeff() == 0.0);
}
