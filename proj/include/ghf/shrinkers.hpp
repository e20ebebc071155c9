#pragma once

#include "ghf/mesh.hpp"

#include <functional>

namespace ghf {

/// Closed profile curve of a surface of revolution about the x-axis, as an
/// arclength polyline of (x, r) points with r > 0, symmetric about x = 0.
struct ProfileCurve {
    std::vector<Eigen::Vector2d> points; // cyclic, no duplicated endpoint
    double closure_error = 0.0;          // |theta - pi| at the far crossing
    double shooting_parameter = 0.0;     // initial radius r0
};

/// Icosahedron subdivided `level` times, vertices projected to radius 2
/// (the only round-sphere self-shrinker: H = 2/r and x^N = r force r = 2).
TriMesh sphere_mesh(int level);

/// Triangulated disk of radius R in the plane z = 0, centered at the origin;
/// `rings` concentric rings with 6k vertices on ring k.
TriMesh disk_mesh(double radius, int rings);

/// Cylinder of radius sqrt(2) about the x-axis, x in [-half_length,
/// half_length], with `n_angular` vertices per parallel; two boundary loops.
TriMesh cylinder_mesh(double half_length, int n_angular);

/// Shooting solve for the rotationally symmetric genus-1 shrinker profile:
/// integrate x' = cos t, r' = sin t, t' = (x sin t - r cos t)/2 + cos t/r
/// from (0, r0, 0) by classical RK4 (step <= 1e-3 arclength) to the next
/// crossing of x = 0, and bisect r0 inside `bracket` until the crossing
/// tangent is again perpendicular to the mirror line; the half-curve is then
/// mirrored shut. Throws NoSignChange when the bracket does not straddle a
/// closure sign change and StepFailure when a trajectory hits the axis in a
/// way that leaves no sign information.
ProfileCurve angenent_profile(double bracket_lo = 0.3, double bracket_hi = 0.6,
                              double tol = 1e-10);

/// Resample to m points, spaced by arclength against a per-point density
/// (uniform when empty). Used to grade the meridian resolution by local
/// curvature before revolving.
ProfileCurve resample_profile(const ProfileCurve& profile, int m,
                              const std::vector<double>& density = {});

/// max(|kappa_mer|, |kappa_par|, 0.35) per profile point, from the polyline
/// turning angles; the grading density used by angenent_torus.
std::vector<double> profile_curvature_density(const ProfileCurve& profile);

/// Torus of revolution about the x-axis; vertex count = points * n_angular.
/// Throws SelfIntersection if the profile touches the axis.
TriMesh revolve_profile(const ProfileCurve& profile, int n_angular);

/// One-call Angenent torus: shoot, grade the meridian sampling by profile
/// curvature so it matches the angular spacing at the inner circle, revolve.
TriMesh angenent_torus(int n_angular);

struct FlatTorus {
    TriMesh mesh;                               // intrinsic (no positions)
    Cochain0 weight;                            // per-vertex lambda^2
    std::vector<Eigen::Vector2d> uv;            // (i/m, j/n) chart per vertex
};

/// Regular (m x n) triangulated unit square torus given by edge lengths;
/// `weight` evaluates lambda^2 at (u, v) and defaults to 1.
FlatTorus flat_torus(int m, int n,
                     const std::function<double(double, double)>& weight = nullptr);

} // namespace ghf
