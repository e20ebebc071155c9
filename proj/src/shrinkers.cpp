#include "ghf/shrinkers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ghf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// --- icosphere -------------------------------------------------------------

TriMesh icosahedron_radius2() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> pos = {
        {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& p : pos) p = 2.0 * p.normalized();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10},  {0, 10, 11},
        {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6},  {7, 1, 8},
        {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},   {3, 8, 9},
        {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},   {9, 8, 1},
    };
    return build_mesh(pos, faces);
}

// --- profile ODE -----------------------------------------------------------

struct ProfileState {
    double x, r, theta;
};

ProfileState ode_rhs(const ProfileState& s) {
    return {std::cos(s.theta), std::sin(s.theta),
            (s.x * std::sin(s.theta) - s.r * std::cos(s.theta)) / 2.0 +
                std::cos(s.theta) / s.r};
}

ProfileState rk4_step(const ProfileState& s, double h) {
    auto add = [](const ProfileState& a, const ProfileState& b, double c) {
        return ProfileState{a.x + c * b.x, a.r + c * b.r, a.theta + c * b.theta};
    };
    ProfileState k1 = ode_rhs(s);
    ProfileState k2 = ode_rhs(add(s, k1, h / 2));
    ProfileState k3 = ode_rhs(add(s, k2, h / 2));
    ProfileState k4 = ode_rhs(add(s, k3, h));
    return {s.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
            s.r + h / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r),
            s.theta + h / 6 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta)};
}

struct ShotResult {
    double closure;               // theta - pi at the crossing
    bool crossed;                 // reached x = 0 again (vs. hit the axis)
    std::vector<ProfileState> path;
};

// Integrate from (0, r0, 0) to the next crossing of x = 0.
ShotResult shoot(double r0, bool keep_path) {
    const double h = 1e-3;
    const double s_max = 60.0;
    ShotResult out;
    ProfileState y{0.0, r0, 0.0};
    if (keep_path) out.path.push_back(y);
    for (double s = 0.0; s < s_max; s += h) {
        ProfileState next = rk4_step(y, h);
        if (next.r < 0.02) {
            // Dived into the axis; theta is far below pi, which gives the
            // bisection a definite sign.
            out.closure = next.theta - kPi;
            out.crossed = false;
            return out;
        }
        if (s > 0.0 && y.x > 0.0 && next.x <= 0.0) {
            double f = y.x / (y.x - next.x);
            ProfileState cross{0.0, y.r + f * (next.r - y.r),
                               y.theta + f * (next.theta - y.theta)};
            if (keep_path) out.path.push_back(cross);
            out.closure = cross.theta - kPi;
            out.crossed = true;
            return out;
        }
        y = next;
        if (keep_path) out.path.push_back(y);
    }
    throw StepFailure("profile integration exceeded the arclength budget");
}

} // namespace

TriMesh sphere_mesh(int level) {
    if (level < 0) throw Error("sphere level must be >= 0");
    TriMesh mesh = icosahedron_radius2();
    auto project = [](const Vec3& p) -> Vec3 { return 2.0 * p.normalized(); };
    for (int l = 0; l < level; l++) mesh = subdivide_midpoint(mesh, project);
    return mesh;
}

TriMesh disk_mesh(double radius, int rings) {
    if (!(radius > 0.0) || rings < 1) throw Error("disk needs radius > 0 and rings >= 1");
    std::vector<Vec3> pos{{0.0, 0.0, 0.0}};
    std::vector<int> ring_start{0};
    for (int k = 1; k <= rings; k++) {
        ring_start.push_back(static_cast<int>(pos.size()));
        double rk = radius * k / rings;
        int count = 6 * k;
        for (int j = 0; j < count; j++) {
            double a = 2.0 * kPi * j / count;
            pos.push_back({rk * std::cos(a), rk * std::sin(a), 0.0});
        }
    }

    std::vector<std::array<int, 3>> faces;
    // Center fan.
    for (int j = 0; j < 6; j++)
        faces.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});
    // Annulus stitches: advance whichever ring pointer trails in angle.
    for (int k = 2; k <= rings; k++) {
        int n_in = 6 * (k - 1), n_out = 6 * k;
        int in0 = ring_start[k - 1], out0 = ring_start[k];
        int i = 0, o = 0;
        auto ang_in = [&](int t) { return 2.0 * kPi * t / n_in; };
        auto ang_out = [&](int t) { return 2.0 * kPi * t / n_out; };
        while (i < n_in || o < n_out) {
            bool advance_out = (o < n_out) &&
                               (i == n_in || ang_out(o + 1) <= ang_in(i + 1) + 1e-12);
            if (advance_out) {
                faces.push_back({out0 + o % n_out, out0 + (o + 1) % n_out, in0 + i % n_in});
                o++;
            } else {
                faces.push_back({in0 + (i + 1) % n_in, out0 + o % n_out, in0 + i % n_in});
                i++;
            }
        }
    }
    return build_mesh(pos, faces);
}

TriMesh cylinder_mesh(double half_length, int n_angular) {
    if (!(half_length > 0.0) || n_angular < 3)
        throw Error("cylinder needs half_length > 0 and n_angular >= 3");
    const double r = std::sqrt(2.0);
    int n_axial = std::max(2, static_cast<int>(std::lround(
                                  2.0 * half_length / (2.0 * kPi * r / n_angular))));
    std::vector<Vec3> pos;
    for (int i = 0; i <= n_axial; i++) {
        double x = -half_length + 2.0 * half_length * i / n_axial;
        for (int j = 0; j < n_angular; j++) {
            double a = 2.0 * kPi * j / n_angular;
            pos.push_back({x, r * std::cos(a), r * std::sin(a)});
        }
    }
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < n_axial; i++) {
        for (int j = 0; j < n_angular; j++) {
            int a = i * n_angular + j;
            int b = (i + 1) * n_angular + j;
            int c = (i + 1) * n_angular + (j + 1) % n_angular;
            int d = i * n_angular + (j + 1) % n_angular;
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return build_mesh(pos, faces);
}

ProfileCurve angenent_profile(double bracket_lo, double bracket_hi, double tol) {
    if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo))
        throw Error("bad shooting bracket");
    double flo = shoot(bracket_lo, false).closure;
    double fhi = shoot(bracket_hi, false).closure;
    if (flo * fhi > 0.0)
        throw NoSignChange("closure functional has the same sign at both bracket ends");

    double lo = bracket_lo, hi = bracket_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = shoot(mid, false).closure;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }

    double r0 = 0.5 * (lo + hi);
    ShotResult half = shoot(r0, true);
    if (!half.crossed) throw StepFailure("converged trajectory hit the axis");

    ProfileCurve curve;
    curve.shooting_parameter = r0;
    curve.closure_error = std::abs(half.closure);
    for (const auto& s : half.path) curve.points.push_back({s.x, s.r});
    // Mirror across x = 0, skipping the duplicated endpoints.
    for (size_t i = half.path.size() - 1; i-- > 1;)
        curve.points.push_back({-half.path[i].x, half.path[i].r});
    return curve;
}

ProfileCurve resample_profile(const ProfileCurve& profile, int m,
                              const std::vector<double>& density) {
    const auto& pts = profile.points;
    const int n = static_cast<int>(pts.size());
    if (n < 3 || m < 3) throw Error("profile too short to resample");
    if (!density.empty() && static_cast<int>(density.size()) != n)
        throw Error("density length does not match profile");

    // Cumulative density-weighted arclength around the closed polyline.
    std::vector<double> cum(n + 1, 0.0);
    for (int i = 0; i < n; i++) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        double seg = (b - a).norm();
        double w = density.empty() ? 1.0 : 0.5 * (density[i] + density[(i + 1) % n]);
        cum[i + 1] = cum[i] + seg * w;
    }

    ProfileCurve out;
    out.shooting_parameter = profile.shooting_parameter;
    out.closure_error = profile.closure_error;
    int seg = 0;
    for (int k = 0; k < m; k++) {
        double target = cum[n] * k / m;
        while (seg + 1 < n && cum[seg + 1] < target) seg++;
        double t = (target - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300);
        out.points.push_back(pts[seg] + t * (pts[(seg + 1) % n] - pts[seg]));
    }
    return out;
}

TriMesh revolve_profile(const ProfileCurve& profile, int n_angular) {
    const int m = static_cast<int>(profile.points.size());
    if (m < 3 || n_angular < 3) throw Error("revolve needs >= 3 profile points and angles");
    for (const auto& p : profile.points)
        if (!(p[1] > 0.0)) throw SelfIntersection("profile touches the rotation axis");

    std::vector<Vec3> pos(static_cast<size_t>(m) * n_angular);
    for (int k = 0; k < m; k++) {
        for (int j = 0; j < n_angular; j++) {
            double a = 2.0 * kPi * j / n_angular;
            pos[static_cast<size_t>(k) * n_angular + j] = {
                profile.points[k][0], profile.points[k][1] * std::cos(a),
                profile.points[k][1] * std::sin(a)};
        }
    }
    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<size_t>(2) * m * n_angular);
    for (int k = 0; k < m; k++) {
        for (int j = 0; j < n_angular; j++) {
            int a = k * n_angular + j;
            int b = ((k + 1) % m) * n_angular + j;
            int c = ((k + 1) % m) * n_angular + (j + 1) % n_angular;
            int d = k * n_angular + (j + 1) % n_angular;
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return build_mesh(pos, faces);
}

std::vector<double> profile_curvature_density(const ProfileCurve& profile) {
    const auto& pts = profile.points;
    const int n = static_cast<int>(pts.size());
    std::vector<double> density(n);
    for (int i = 0; i < n; i++) {
        const auto& prev = pts[(i + n - 1) % n];
        const auto& cur = pts[i];
        const auto& next = pts[(i + 1) % n];
        Eigen::Vector2d a = cur - prev, b = next - cur;
        double la = a.norm(), lb = b.norm();
        double turn = std::atan2(a[0] * b[1] - a[1] * b[0], a.dot(b));
        double kappa_mer = std::abs(turn) / std::max(0.5 * (la + lb), 1e-300);
        Eigen::Vector2d t = (a + b).normalized();
        double kappa_par = std::abs(t[0]) / std::max(cur[1], 1e-300);
        density[i] = std::max({kappa_mer, kappa_par, 0.35});
    }
    return density;
}

TriMesh angenent_torus(int n_angular) {
    ProfileCurve fine = angenent_profile();
    std::vector<double> density = profile_curvature_density(fine);

    const int n = static_cast<int>(fine.points.size());
    double total_weighted = 0.0;
    double r_min = fine.points[0][1];
    double w_inner = density[0];
    for (int i = 0; i < n; i++) {
        const auto& a = fine.points[i];
        const auto& b = fine.points[(i + 1) % n];
        total_weighted += (b - a).norm() * 0.5 * (density[i] + density[(i + 1) % n]);
        if (a[1] < r_min) {
            r_min = a[1];
            w_inner = density[i];
        }
    }
    // Match the meridian spacing at the inner circle (where curvature peaks)
    // to the angular spacing there, with a little headroom.
    double angular_inner = 2.0 * kPi * r_min / n_angular;
    int m = std::max(16, static_cast<int>(std::lround(
                             1.05 * total_weighted / (angular_inner * w_inner))));
    ProfileCurve graded = resample_profile(fine, m, density);
    return revolve_profile(graded, n_angular);
}

FlatTorus flat_torus(int m, int n, const std::function<double(double, double)>& weight) {
    if (m < 3 || n < 3) throw Error("flat torus needs m, n >= 3");
    FlatTorus out;
    const double hu = 1.0 / m, hv = 1.0 / n;

    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<size_t>(2) * m * n);
    auto idx = [&](int i, int j) { return ((i + m) % m) * n + ((j + n) % n); };
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < n; j++) {
            faces.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            faces.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    }

    // Canonical edge lengths from the wrapped grid offsets, collected the
    // same way build_intrinsic_mesh orders edges (sorted pairs).
    std::set<std::array<int, 2>> unique;
    for (const auto& f : faces)
        for (int c = 0; c < 3; c++) {
            int a = f[c], b = f[(c + 1) % 3];
            unique.insert({std::min(a, b), std::max(a, b)});
        }
    std::vector<double> lengths;
    lengths.reserve(unique.size());
    for (const auto& e : unique) {
        int i1 = e[0] / n, j1 = e[0] % n, i2 = e[1] / n, j2 = e[1] % n;
        int di = std::abs(i1 - i2);
        di = std::min(di, m - di);
        int dj = std::abs(j1 - j2);
        dj = std::min(dj, n - dj);
        lengths.push_back(std::sqrt(di * di * hu * hu + dj * dj * hv * hv));
    }
    out.mesh = build_intrinsic_mesh(m * n, faces, lengths);

    out.uv.resize(static_cast<size_t>(m) * n);
    out.weight.resize(m * n);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < n; j++) {
            double u = static_cast<double>(i) / m, v = static_cast<double>(j) / n;
            out.uv[idx(i, j)] = {u, v};
            out.weight[idx(i, j)] = weight ? weight(u, v) : 1.0;
        }
    for (int v = 0; v < m * n; v++)
        if (!(out.weight[v] > 0.0)) throw NonPositiveWeight("synthetic weight must be positive");
    return out;
}

} // namespace ghf
