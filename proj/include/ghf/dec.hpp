#pragma once

#include "ghf/geometry.hpp"
#include "ghf/mesh.hpp"

namespace ghf {

struct ExteriorDerivatives {
    SparseMat d0; // E x V signed incidence, (d0 f)_e = f_j - f_i for e = (i, j)
    SparseMat d1; // F x E, sums edge values around each oriented face
};

/// Discrete inner products for the measure lambda^2 dV. M0 is the lumped
/// vertex mass (lambda^2 times barycentric dual area); star1 carries cotan
/// edge weights times the mean endpoint weight. At lambda == 1 these are the
/// standard cotan DEC stars. Entries of star1 may be negative on obtuse
/// triangles; they are kept as-is so the adjointness identities stay exact.
struct WeightedStars {
    Eigen::VectorXd M0;    // V, positive
    Eigen::VectorXd star1; // E
};

/// Built from connectivity alone; d1 * d0 == 0 exactly (integer entries).
ExteriorDerivatives exterior_derivatives(const TriMesh& mesh);

/// Cotangents come from the intrinsic edge lengths, so position-free meshes
/// work. Throws NonPositiveWeight unless lambda2 > 0 entrywise.
WeightedStars weighted_stars(const TriMesh& mesh, const Cochain0& lambda2);

/// delta_lambda omega = -M0^{-1} d0^T star1 omega. Zero (to solver tolerance)
/// exactly when omega is gaussian co-closed.
Cochain0 weighted_codifferential(const Cochain1& omega, const WeightedStars& stars,
                                 const SparseMat& d0);

/// S_lambda = d0^T star1 d0: the quadratic form f^T S f = int lambda^2 |grad f|^2.
/// Symmetric, constants in the kernel.
SparseMat weighted_stiffness(const WeightedStars& stars, const SparseMat& d0);

/// Whitney-interpolate omega to a constant vector per face, average to
/// vertices with face-area weights, then project onto the tangent plane.
/// `normals` overrides the area-weighted vertex normals used for the
/// projection (pass cache.normal to stay consistent with curvature data).
std::vector<Vec3> one_form_to_vertex_field(const TriMesh& mesh, const Cochain1& omega,
                                           const std::vector<Vec3>* normals = nullptr);

/// Per-vertex covariant derivative G[u][v] ~ <grad_u W, v> in the cache's
/// tangent frame, from a weighted linear fit of W over the 1.5-ring after
/// parallel transport into the center tangent plane. W must be tangent.
std::vector<Mat2> covariant_gradient_field(const TriMesh& mesh, const GeometryCache& cache,
                                           const std::vector<Vec3>& field);

} // namespace ghf
