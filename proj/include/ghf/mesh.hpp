#pragma once

#include "ghf/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace ghf {

/// Oriented manifold triangle mesh. Immutable after construction; safe to
/// share read-only across threads.
///
/// Halfedge h = 3*f + c is the directed edge faces[f][c] -> faces[f][(c+1)%3].
/// Edges are stored as (i, j) with i < j, sorted lexicographically; all
/// 1-cochain signs reference this orientation.
struct TriMesh {
    std::vector<Vec3> positions;             // empty for intrinsic meshes
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 2>> edges;
    std::vector<double> edge_length;         // intrinsic metric
    std::vector<int> halfedge_twin;          // -1 on boundary
    std::vector<int> halfedge_edge;
    std::vector<std::array<int, 2>> edge_face; // second entry -1 on boundary
    std::vector<std::vector<int>> vertex_faces;
    std::vector<std::vector<int>> vertex_neighbors;
    std::vector<char> vertex_on_boundary;
    int n_vertices = 0;

    int num_vertices() const { return n_vertices; }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
    bool has_positions() const { return !positions.empty(); }
    bool is_closed() const;

    /// Index of edge (i, j) in either vertex order; -1 if absent.
    int edge_between(int i, int j) const;

    /// Area of face f from the intrinsic edge lengths (Heron).
    double face_area(int f) const;

    /// Barycentric dual area of every vertex (one third of incident faces).
    Eigen::VectorXd vertex_dual_areas() const;

    double bounding_box_diagonal() const;
};

struct TopologySummary {
    int V = 0, E = 0, F = 0;
    int chi = 0;
    int genus = 0;
    int boundary_loops = 0;
};

/// Build a TriMesh from positions and face index triples.
///
/// Face orientations are repaired by BFS across face adjacency; NonOrientable
/// is raised only when no consistent orientation exists. Throws NonManifold
/// for edges with three or more faces and DegenerateFace for repeated indices
/// or triangles with area below 1e-12 times the squared bounding box diagonal.
TriMesh build_mesh(const std::vector<Vec3>& positions,
                   const std::vector<std::array<int, 3>>& faces);

/// Build a position-free mesh from faces plus a metric given as lengths per
/// canonical edge (i, j), i < j, in lexicographic edge order.
TriMesh build_intrinsic_mesh(int n_vertices,
                             const std::vector<std::array<int, 3>>& faces,
                             const std::vector<double>& edge_lengths);

TopologySummary topology_invariants(const TriMesh& mesh);

using SurfaceProjector = std::function<Vec3(const Vec3&)>;

/// 1->4 midpoint subdivision. New vertices sit at edge midpoints, then pass
/// through `projector` when given. Preserves chi, genus and boundary loops.
/// Intrinsic meshes subdivide exactly (all child lengths are half the parent
/// lengths of the flat triangle).
TriMesh subdivide_midpoint(const TriMesh& mesh,
                           const SurfaceProjector& projector = nullptr);

} // namespace ghf
