#include "ghf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace ghf {

namespace {

std::array<int, 2> canonical(int i, int j) {
    return i < j ? std::array<int, 2>{i, j} : std::array<int, 2>{j, i};
}

// Heron's formula, stabilized for thin triangles.
double triangle_area(double a, double b, double c) {
    double s = (a + b + c) / 2.0;
    double arg = s * (s - a) * (s - b) * (s - c);
    return std::sqrt(std::max(arg, 0.0));
}

struct EdgeTable {
    std::vector<std::array<int, 2>> edges; // sorted
    int index(int i, int j) const {
        auto key = canonical(i, j);
        auto it = std::lower_bound(edges.begin(), edges.end(), key);
        if (it == edges.end() || *it != key) return -1;
        return static_cast<int>(it - edges.begin());
    }
};

EdgeTable collect_edges(const std::vector<std::array<int, 3>>& faces) {
    std::set<std::array<int, 2>> unique;
    for (const auto& f : faces)
        for (int c = 0; c < 3; c++) unique.insert(canonical(f[c], f[(c + 1) % 3]));
    EdgeTable table;
    table.edges.assign(unique.begin(), unique.end());
    return table;
}

// Flip faces by BFS over face adjacency until every interior edge is
// traversed in opposite directions by its two faces. Returns false when a
// conflict makes that impossible.
bool orient_faces(std::vector<std::array<int, 3>>& faces, const EdgeTable& table) {
    const int F = static_cast<int>(faces.size());
    const int E = static_cast<int>(table.edges.size());
    std::vector<std::vector<std::pair<int, int>>> edge_faces(E); // (face, direction)
    for (int f = 0; f < F; f++) {
        for (int c = 0; c < 3; c++) {
            int i = faces[f][c], j = faces[f][(c + 1) % 3];
            int e = table.index(i, j);
            edge_faces[e].push_back({f, i < j ? +1 : -1});
        }
    }
    std::vector<int> flip(F, -1); // -1 unvisited, 0 keep, 1 flip
    for (int seed = 0; seed < F; seed++) {
        if (flip[seed] >= 0) continue;
        flip[seed] = 0;
        std::queue<int> queue;
        queue.push(seed);
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop();
            for (int c = 0; c < 3; c++) {
                int i = faces[f][c], j = faces[f][(c + 1) % 3];
                int e = table.index(i, j);
                for (auto [g, dir_g] : edge_faces[e]) {
                    if (g == f) continue;
                    int dir_f = (i < j ? +1 : -1) * (flip[f] ? -1 : 1);
                    // Consistent orientation: the two faces traverse e in
                    // opposite directions.
                    int want = (dir_f * (dir_g > 0 ? 1 : -1) > 0) ? 1 : 0;
                    if (flip[g] < 0) {
                        flip[g] = want;
                        queue.push(g);
                    } else if (flip[g] != want) {
                        return false;
                    }
                }
            }
        }
    }
    for (int f = 0; f < F; f++)
        if (flip[f]) std::swap(faces[f][1], faces[f][2]);
    return true;
}

TriMesh assemble(std::vector<Vec3> positions, int n_vertices,
                 std::vector<std::array<int, 3>> faces,
                 std::vector<double> edge_lengths_opt) {
    TriMesh mesh;
    const int F = static_cast<int>(faces.size());

    for (const auto& f : faces) {
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw DegenerateFace("face with repeated vertex index");
        for (int c = 0; c < 3; c++)
            if (f[c] < 0 || f[c] >= n_vertices)
                throw Error("face index out of range");
    }

    EdgeTable table = collect_edges(faces);
    const int E = static_cast<int>(table.edges.size());

    // Manifoldness: each edge borders one or two faces.
    {
        std::vector<int> count(E, 0);
        for (const auto& f : faces)
            for (int c = 0; c < 3; c++) count[table.index(f[c], f[(c + 1) % 3])]++;
        for (int e = 0; e < E; e++)
            if (count[e] > 2) throw NonManifold("edge shared by more than two faces");
    }

    if (!orient_faces(faces, table))
        throw NonOrientable("no globally consistent face orientation exists");

    mesh.positions = std::move(positions);
    mesh.faces = std::move(faces);
    mesh.edges = table.edges;
    mesh.n_vertices = n_vertices;

    // Halfedges and twins.
    mesh.halfedge_twin.assign(3 * F, -1);
    mesh.halfedge_edge.assign(3 * F, -1);
    mesh.edge_face.assign(E, {-1, -1});
    std::vector<int> he_from_edge(E, -1); // halfedge traversing e as (i -> j), i < j
    std::vector<int> he_against_edge(E, -1);
    for (int f = 0; f < F; f++) {
        for (int c = 0; c < 3; c++) {
            int i = mesh.faces[f][c], j = mesh.faces[f][(c + 1) % 3];
            int e = table.index(i, j);
            int h = 3 * f + c;
            mesh.halfedge_edge[h] = e;
            (i < j ? he_from_edge[e] : he_against_edge[e]) = h;
            auto& ef = mesh.edge_face[e];
            (ef[0] < 0 ? ef[0] : ef[1]) = f;
        }
    }
    for (int e = 0; e < E; e++) {
        int a = he_from_edge[e], b = he_against_edge[e];
        if (a >= 0 && b >= 0) {
            mesh.halfedge_twin[a] = b;
            mesh.halfedge_twin[b] = a;
        } else if (a < 0 && b < 0) {
            throw Error("internal: edge with no halfedge");
        }
        // Keep edge_face[0] as the face whose halfedge runs (i -> j).
        if (a >= 0) {
            int fa = a / 3;
            if (mesh.edge_face[e][0] != fa) std::swap(mesh.edge_face[e][0], mesh.edge_face[e][1]);
        } else {
            if (mesh.edge_face[e][1] >= 0) std::swap(mesh.edge_face[e][0], mesh.edge_face[e][1]);
        }
    }

    // Metric.
    if (!edge_lengths_opt.empty()) {
        if (static_cast<int>(edge_lengths_opt.size()) != E)
            throw Error("edge length count does not match edge count");
        mesh.edge_length = std::move(edge_lengths_opt);
    } else {
        mesh.edge_length.resize(E);
        for (int e = 0; e < E; e++)
            mesh.edge_length[e] =
                (mesh.positions[mesh.edges[e][1]] - mesh.positions[mesh.edges[e][0]]).norm();
    }
    for (int e = 0; e < E; e++)
        if (!(mesh.edge_length[e] > 0.0)) throw DegenerateFace("non-positive edge length");

    // Degeneracy gate.
    if (mesh.has_positions()) {
        double diag = mesh.bounding_box_diagonal();
        double floor = 1e-12 * diag * diag;
        for (int f = 0; f < F; f++)
            if (mesh.face_area(f) <= floor) throw DegenerateFace("triangle area below floor");
    } else {
        for (int f = 0; f < F; f++) {
            double a = mesh.edge_length[table.index(mesh.faces[f][0], mesh.faces[f][1])];
            double b = mesh.edge_length[table.index(mesh.faces[f][1], mesh.faces[f][2])];
            double c = mesh.edge_length[table.index(mesh.faces[f][2], mesh.faces[f][0])];
            if (a + b <= c || b + c <= a || a + c <= b)
                throw DegenerateFace("edge lengths violate the triangle inequality");
        }
    }

    // Adjacency and boundary flags.
    mesh.vertex_faces.assign(n_vertices, {});
    mesh.vertex_neighbors.assign(n_vertices, {});
    mesh.vertex_on_boundary.assign(n_vertices, 0);
    for (int f = 0; f < F; f++)
        for (int c = 0; c < 3; c++) mesh.vertex_faces[mesh.faces[f][c]].push_back(f);
    for (int e = 0; e < E; e++) {
        mesh.vertex_neighbors[mesh.edges[e][0]].push_back(mesh.edges[e][1]);
        mesh.vertex_neighbors[mesh.edges[e][1]].push_back(mesh.edges[e][0]);
        if (mesh.edge_face[e][0] < 0 || mesh.edge_face[e][1] < 0) {
            mesh.vertex_on_boundary[mesh.edges[e][0]] = 1;
            mesh.vertex_on_boundary[mesh.edges[e][1]] = 1;
        }
    }
    for (auto& nbrs : mesh.vertex_neighbors) std::sort(nbrs.begin(), nbrs.end());

    return mesh;
}

} // namespace

bool TriMesh::is_closed() const {
    for (const auto& ef : edge_face)
        if (ef[1] < 0) return false;
    return true;
}

int TriMesh::edge_between(int i, int j) const {
    auto key = canonical(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) return -1;
    return static_cast<int>(it - edges.begin());
}

double TriMesh::face_area(int f) const {
    double a = edge_length[edge_between(faces[f][0], faces[f][1])];
    double b = edge_length[edge_between(faces[f][1], faces[f][2])];
    double c = edge_length[edge_between(faces[f][2], faces[f][0])];
    return triangle_area(a, b, c);
}

Eigen::VectorXd TriMesh::vertex_dual_areas() const {
    Eigen::VectorXd area = Eigen::VectorXd::Zero(n_vertices);
    for (int f = 0; f < num_faces(); f++) {
        double third = face_area(f) / 3.0;
        for (int c = 0; c < 3; c++) area[faces[f][c]] += third;
    }
    return area;
}

double TriMesh::bounding_box_diagonal() const {
    if (positions.empty()) return 0.0;
    Vec3 lo = positions[0], hi = positions[0];
    for (const auto& p : positions) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

TriMesh build_mesh(const std::vector<Vec3>& positions,
                   const std::vector<std::array<int, 3>>& faces) {
    return assemble(positions, static_cast<int>(positions.size()), faces, {});
}

TriMesh build_intrinsic_mesh(int n_vertices,
                             const std::vector<std::array<int, 3>>& faces,
                             const std::vector<double>& edge_lengths) {
    return assemble({}, n_vertices, faces, edge_lengths);
}

TopologySummary topology_invariants(const TriMesh& mesh) {
    TopologySummary t;
    t.V = mesh.num_vertices();
    t.E = mesh.num_edges();
    t.F = mesh.num_faces();
    t.chi = t.V - t.E + t.F;

    // Count boundary loops by walking boundary edges vertex to vertex.
    std::map<int, std::vector<int>> boundary_adj;
    for (int e = 0; e < t.E; e++) {
        if (mesh.edge_face[e][1] >= 0) continue;
        boundary_adj[mesh.edges[e][0]].push_back(mesh.edges[e][1]);
        boundary_adj[mesh.edges[e][1]].push_back(mesh.edges[e][0]);
    }
    std::set<int> seen;
    for (const auto& [v, nbrs] : boundary_adj) {
        if (seen.count(v)) continue;
        t.boundary_loops++;
        int prev = -1, cur = v;
        while (!seen.count(cur)) {
            seen.insert(cur);
            const auto& adj = boundary_adj[cur];
            int next = (adj[0] != prev) ? adj[0] : (adj.size() > 1 ? adj[1] : -1);
            prev = cur;
            cur = next;
            if (cur < 0) break;
        }
    }

    t.genus = (2 - t.chi - t.boundary_loops) / 2;
    return t;
}

TriMesh subdivide_midpoint(const TriMesh& mesh, const SurfaceProjector& projector) {
    const int V = mesh.num_vertices();
    const int E = mesh.num_edges();

    std::vector<std::array<int, 3>> faces;
    faces.reserve(4 * mesh.num_faces());
    auto midpoint_index = [&](int e) { return V + e; };

    for (int f = 0; f < mesh.num_faces(); f++) {
        int i = mesh.faces[f][0], j = mesh.faces[f][1], k = mesh.faces[f][2];
        int mij = midpoint_index(mesh.edge_between(i, j));
        int mjk = midpoint_index(mesh.edge_between(j, k));
        int mki = midpoint_index(mesh.edge_between(k, i));
        faces.push_back({i, mij, mki});
        faces.push_back({j, mjk, mij});
        faces.push_back({k, mki, mjk});
        faces.push_back({mij, mjk, mki});
    }

    if (mesh.has_positions()) {
        std::vector<Vec3> positions = mesh.positions;
        positions.resize(V + E);
        for (int e = 0; e < E; e++) {
            Vec3 mid = 0.5 * (mesh.positions[mesh.edges[e][0]] + mesh.positions[mesh.edges[e][1]]);
            positions[V + e] = projector ? projector(mid) : mid;
        }
        return build_mesh(positions, faces);
    }

    // Intrinsic case: each flat parent triangle splits into four triangles
    // whose side lengths are exactly half the parent's.
    EdgeTable child_edges = collect_edges(faces);
    std::vector<double> lengths(child_edges.edges.size());
    for (size_t e = 0; e < child_edges.edges.size(); e++) {
        int a = child_edges.edges[e][0], b = child_edges.edges[e][1];
        if (a < V) {
            // vertex -> midpoint of an incident edge: half that edge
            lengths[e] = 0.5 * mesh.edge_length[b - V];
        } else {
            // midpoint -> midpoint inside a face: half the edge joining the
            // opposite endpoints (medial triangle)
            const auto ea = mesh.edges[a - V];
            const auto eb = mesh.edges[b - V];
            int shared = -1;
            for (int u : {ea[0], ea[1]})
                for (int w : {eb[0], eb[1]})
                    if (u == w) shared = u;
            int pa = (ea[0] == shared) ? ea[1] : ea[0];
            int pb = (eb[0] == shared) ? eb[1] : eb[0];
            lengths[e] = 0.5 * mesh.edge_length[mesh.edge_between(pa, pb)];
        }
    }
    return assemble({}, V + E, faces, std::move(lengths));
}

} // namespace ghf
