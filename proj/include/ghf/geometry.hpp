#pragma once

#include "ghf/mesh.hpp"

namespace ghf {

/// Pointwise extrinsic data for a codimension-one surface, one entry per
/// vertex. The shape operator uses the convention A(X, Y) = <D_X n, Y>, so a
/// radius-2 sphere with outward normal has kappa = +1/2 and H = +1. The
/// global normal sign is chosen so that the mesh average of H * <x, n> is
/// non-negative; the radius-2 sphere then satisfies H = x^N/2 with H > 0.
struct GeometryCache {
    Cochain0 weight;                   // exp(-|x|^2/4)
    std::vector<Vec3> normal;          // unit
    std::vector<Vec3> frame_u, frame_v; // orthonormal tangent frame (u, v, n)
    std::vector<Mat2> shape;           // shape operator in the tangent frame
    Cochain0 kappa1, kappa2;           // principal curvatures, kappa1 >= kappa2
    Cochain0 H;                        // kappa1 + kappa2
    Cochain0 K;                        // kappa1 * kappa2
    Cochain0 A2;                       // kappa1^2 + kappa2^2
    std::vector<Vec3> x_tangent, x_normal; // x = xT + xN, xT perp n
    std::vector<char> trusted;         // false within two rings of a boundary
};

/// Per-vertex Gaussian weight exp(-|x|^2/4); all entries in (0, 1].
Cochain0 gaussian_weight(const TriMesh& mesh);

/// Per-vertex curvature data by an iterated polynomial jet fit over the
/// 2-ring: fit z = (a u^2 + 2 b u v + c v^2)/2 + d u + e v + (cubic and
/// quartic terms) in the local tangent frame, re-aligning the frame with the
/// fitted normal until the linear terms vanish. The higher-order terms only
/// absorb truncation error; the shape operator comes from the quadratic
/// block. Throws FrameDegenerate when a fit star is rank deficient.
GeometryCache curvature_data(const TriMesh& mesh);

/// Relative defect of H n = x^N / 2 per vertex:
/// |H n - xN/2| / max(|H|, |xN|/2, 0.1). Vanishes on exact self-shrinkers.
Cochain0 shrinker_residual(const TriMesh& mesh, const GeometryCache& cache);

/// Tangential/normal split of the position vector (copies of the cache
/// fields, recomputed against the cached normals).
std::pair<std::vector<Vec3>, std::vector<Vec3>>
position_split(const TriMesh& mesh, const GeometryCache& cache);

/// Vertices of the 1.5-ring fit star of v: the 1-ring plus, for each
/// incident face, the far vertex across the opposite edge.
std::vector<int> fit_star(const TriMesh& mesh, int v);

} // namespace ghf
