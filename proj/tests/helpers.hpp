#pragma once

#include "ghf/dec.hpp"
#include "ghf/forms.hpp"
#include "ghf/homology.hpp"
#include "ghf/mesh.hpp"
#include "ghf/shrinkers.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace ghf::testing {

inline TriMesh tetrahedron() {
    std::vector<Vec3> pos = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return build_mesh(pos, faces);
}

/// Planar grid patch on [0,1]^2 in the z = 0 plane (disk topology).
inline TriMesh planar_grid(int m) {
    std::vector<Vec3> pos;
    for (int i = 0; i <= m; i++)
        for (int j = 0; j <= m; j++)
            pos.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m, 0.0});
    std::vector<std::array<int, 3>> faces;
    auto idx = [&](int i, int j) { return i * (m + 1) + j; };
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++) {
            faces.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            faces.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    return build_mesh(pos, faces);
}

/// Ordinary (non-shrinker) torus of revolution, handy as an embedded
/// genus-1 surface.
inline TriMesh circle_torus(double ring_radius, double tube_radius, int m, int n) {
    ProfileCurve profile;
    for (int k = 0; k < m; k++) {
        double a = 2.0 * 3.14159265358979323846 * k / m;
        profile.points.push_back(
            {tube_radius * std::sin(a), ring_radius + tube_radius * std::cos(a)});
    }
    return revolve_profile(profile, n);
}

/// Two flat tori glued along a removed face: closed genus-2 intrinsic mesh.
inline TriMesh genus2_mesh(int m, int n) {
    FlatTorus a = flat_torus(m, n);
    FlatTorus b = flat_torus(m, n);
    const int va = a.mesh.num_vertices();
    auto fa = a.mesh.faces;
    auto fb = b.mesh.faces;
    auto removed_a = fa.front();
    auto removed_b = fb.front();
    fa.erase(fa.begin());
    fb.erase(fb.begin());

    // Identify the two boundary triangles vertex by vertex (matching side
    // lengths); the orientation repair in build settles the windings.
    std::vector<int> remap(va, -1);
    remap[removed_b[0]] = removed_a[0];
    remap[removed_b[1]] = removed_a[1];
    remap[removed_b[2]] = removed_a[2];
    int next = va;
    std::vector<int> fresh(va, -1);
    auto relabel = [&](int v) {
        if (remap[v] >= 0) return remap[v];
        if (fresh[v] < 0) fresh[v] = next++;
        return fresh[v];
    };
    for (auto& f : fb)
        for (int c = 0; c < 3; c++) f[c] = relabel(f[c]);
    fa.insert(fa.end(), fb.begin(), fb.end());

    // Rebuild the canonical edge-length table.
    std::map<std::array<int, 2>, double> lengths;
    auto note = [&](const TriMesh& mesh, const std::function<int(int)>& map) {
        for (int e = 0; e < mesh.num_edges(); e++) {
            int i = map(mesh.edges[e][0]), j = map(mesh.edges[e][1]);
            lengths[{std::min(i, j), std::max(i, j)}] = mesh.edge_length[e];
        }
    };
    note(a.mesh, [](int v) { return v; });
    note(b.mesh, relabel);

    std::set<std::array<int, 2>> unique;
    for (const auto& f : fa)
        for (int c = 0; c < 3; c++) {
            int i = f[c], j = f[(c + 1) % 3];
            unique.insert({std::min(i, j), std::max(i, j)});
        }
    std::vector<double> ordered;
    for (const auto& e : unique) ordered.push_back(lengths.at(e));
    return build_intrinsic_mesh(next, fa, ordered);
}

/// The exact harmonic cochains du and dv on the regular flat torus.
inline std::pair<Cochain1, Cochain1> flat_torus_harmonic_cochains(const FlatTorus& torus) {
    const TriMesh& mesh = torus.mesh;
    Cochain1 du(mesh.num_edges()), dv(mesh.num_edges());
    for (int e = 0; e < mesh.num_edges(); e++) {
        const auto& uv_i = torus.uv[mesh.edges[e][0]];
        const auto& uv_j = torus.uv[mesh.edges[e][1]];
        auto wrap = [](double d) {
            if (d > 0.5) return d - 1.0;
            if (d < -0.5) return d + 1.0;
            return d;
        };
        du[e] = wrap(uv_j[0] - uv_i[0]);
        dv[e] = wrap(uv_j[1] - uv_i[1]);
    }
    return {du, dv};
}

/// Canonical handle loops of the flat torus, for period oracles.
inline std::vector<EdgeLoop> flat_torus_canonical_loops(const FlatTorus& torus, int m, int n) {
    const TriMesh& mesh = torus.mesh;
    auto idx = [&](int i, int j) { return ((i + m) % m) * n + ((j + n) % n); };
    EdgeLoop uloop, vloop;
    for (int i = 0; i < m; i++) {
        int a = idx(i, 0), b = idx(i + 1, 0);
        uloop.edges.push_back(mesh.edge_between(a, b));
        uloop.signs.push_back(a < b ? +1 : -1);
    }
    for (int j = 0; j < n; j++) {
        int a = idx(0, j), b = idx(0, j + 1);
        vloop.edges.push_back(mesh.edge_between(a, b));
        vloop.signs.push_back(a < b ? +1 : -1);
    }
    return {uloop, vloop};
}

inline std::mt19937_64 rng(std::uint64_t seed = 12345) { return std::mt19937_64(seed); }

inline Cochain0 random_cochain0(int n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Cochain0 f(n);
    for (int i = 0; i < n; i++) f[i] = dist(gen);
    return f;
}

} // namespace ghf::testing
