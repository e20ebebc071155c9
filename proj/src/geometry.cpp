#include "ghf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace ghf {

namespace {

// Orthonormal tangent pair from a unit normal, seeded by the coordinate axis
// least aligned with it.
void frame_from_normal(const Vec3& n, Vec3& t1, Vec3& t2) {
    int axis = 0;
    for (int a = 1; a < 3; a++)
        if (std::abs(n[a]) < std::abs(n[axis])) axis = a;
    Vec3 seed = Vec3::Zero();
    seed[axis] = 1.0;
    t1 = (seed - n.dot(seed) * n).normalized();
    t2 = n.cross(t1);
}

std::vector<Vec3> area_weighted_normals(const TriMesh& mesh) {
    std::vector<Vec3> normal(mesh.num_vertices(), Vec3::Zero());
    for (int f = 0; f < mesh.num_faces(); f++) {
        const auto& tri = mesh.faces[f];
        Vec3 va = 0.5 * (mesh.positions[tri[1]] - mesh.positions[tri[0]])
                            .cross(mesh.positions[tri[2]] - mesh.positions[tri[0]]);
        for (int c = 0; c < 3; c++) normal[tri[c]] += va;
    }
    for (auto& n : normal) {
        double len = n.norm();
        if (len <= 0.0) throw FrameDegenerate("zero vertex normal");
        n /= len;
    }
    return normal;
}

// Hop distance to the nearest boundary vertex (INT_MAX-ish when closed).
std::vector<int> boundary_distance(const TriMesh& mesh) {
    std::vector<int> dist(mesh.num_vertices(), mesh.num_vertices() + 1);
    std::queue<int> queue;
    for (int v = 0; v < mesh.num_vertices(); v++) {
        if (mesh.vertex_on_boundary[v]) {
            dist[v] = 0;
            queue.push(v);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : mesh.vertex_neighbors[v]) {
            if (dist[w] > dist[v] + 1) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

Mat2 inverse_sqrt(const Mat2& e) {
    Eigen::SelfAdjointEigenSolver<Mat2> eig(e);
    Mat2 d = Mat2::Zero();
    d(0, 0) = 1.0 / std::sqrt(eig.eigenvalues()[0]);
    d(1, 1) = 1.0 / std::sqrt(eig.eigenvalues()[1]);
    return eig.eigenvectors() * d * eig.eigenvectors().transpose();
}

} // namespace

std::vector<int> fit_star(const TriMesh& mesh, int v) {
    std::set<int> star(mesh.vertex_neighbors[v].begin(), mesh.vertex_neighbors[v].end());
    for (int f : mesh.vertex_faces[v]) {
        const auto& tri = mesh.faces[f];
        int a = -1, b = -1;
        for (int c = 0; c < 3; c++) {
            if (tri[c] == v) continue;
            (a < 0 ? a : b) = tri[c];
        }
        int e = mesh.edge_between(a, b);
        int other = (mesh.edge_face[e][0] == f) ? mesh.edge_face[e][1] : mesh.edge_face[e][0];
        if (other >= 0)
            for (int c = 0; c < 3; c++) star.insert(mesh.faces[other][c]);
    }
    star.erase(v);
    if (star.size() < 5) {
        // Fall back to the 2-ring for tiny or very open stars.
        for (int w : mesh.vertex_neighbors[v])
            for (int u : mesh.vertex_neighbors[w]) star.insert(u);
        star.erase(v);
    }
    return {star.begin(), star.end()};
}

std::vector<int> curvature_star(const TriMesh& mesh, int v) {
    // Two rings, grown further if that still undersamples the quartic jet.
    std::set<int> star(mesh.vertex_neighbors[v].begin(), mesh.vertex_neighbors[v].end());
    std::set<int> frontier = star;
    for (int grow = 0; grow < 3; grow++) {
        std::set<int> next;
        for (int w : frontier)
            for (int u : mesh.vertex_neighbors[w])
                if (u != v && !star.count(u)) next.insert(u);
        star.insert(next.begin(), next.end());
        if (star.size() >= 18) break;
        frontier = std::move(next);
    }
    return {star.begin(), star.end()};
}

Cochain0 gaussian_weight(const TriMesh& mesh) {
    if (!mesh.has_positions()) throw Error("gaussian_weight needs vertex positions");
    Cochain0 w(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); v++)
        w[v] = std::exp(-mesh.positions[v].squaredNorm() / 4.0);
    return w;
}

GeometryCache curvature_data(const TriMesh& mesh) {
    if (!mesh.has_positions()) throw Error("curvature_data needs vertex positions");
    const int V = mesh.num_vertices();

    GeometryCache cache;
    cache.weight = gaussian_weight(mesh);
    cache.normal = area_weighted_normals(mesh);
    cache.frame_u.resize(V);
    cache.frame_v.resize(V);
    cache.shape.resize(V);
    cache.kappa1.resize(V);
    cache.kappa2.resize(V);
    cache.H.resize(V);
    cache.K.resize(V);
    cache.A2.resize(V);
    cache.x_tangent.resize(V);
    cache.x_normal.resize(V);

    auto dist = boundary_distance(mesh);
    cache.trusted.resize(V);
    for (int v = 0; v < V; v++) cache.trusted[v] = dist[v] > 2;

    for (int v = 0; v < V; v++) {
        std::vector<int> star = curvature_star(mesh, v);
        if (star.size() < 5) throw FrameDegenerate("fit star has fewer than 5 vertices");

        Vec3 n = cache.normal[v];
        Vec3 t1, t2;
        frame_from_normal(n, t1, t2);

        const Vec3 origin = mesh.positions[v];
        double scale = 0.0;
        for (int w : star) scale += (mesh.positions[w] - origin).norm();
        scale /= static_cast<double>(star.size());
        if (!(scale > 0.0)) throw FrameDegenerate("collapsed fit star");

        // Quartic jet, 14 monomials: the quadratic block carries the shape
        // operator and the higher terms only absorb truncation error. One-
        // sided stars (mesh boundaries) can make the high-order columns
        // exactly dependent, so the order drops until the fit has full rank.
        auto fill_row = [](Eigen::MatrixXd& m, size_t r, double u, double w, int cols) {
            m(r, 0) = 0.5 * u * u;
            m(r, 1) = u * w;
            m(r, 2) = 0.5 * w * w;
            m(r, 3) = u;
            m(r, 4) = w;
            if (cols > 5) {
                m(r, 5) = u * u * u;
                m(r, 6) = u * u * w;
                m(r, 7) = u * w * w;
                m(r, 8) = w * w * w;
            }
            if (cols > 9) {
                m(r, 9) = u * u * u * u;
                m(r, 10) = u * u * u * w;
                m(r, 11) = u * u * w * w;
                m(r, 12) = u * w * w * w;
                m(r, 13) = w * w * w * w;
            }
        };

        Eigen::VectorXd rhs(star.size());
        Eigen::VectorXd coeff;
        double d = 0.0, e = 0.0;
        for (int pass = 0; pass < 4; pass++) {
            bool solved = false;
            for (int cols : {14, 9, 5}) {
                if (static_cast<int>(star.size()) < cols) continue;
                Eigen::MatrixXd lhs(star.size(), cols);
                for (size_t r = 0; r < star.size(); r++) {
                    Vec3 q = (mesh.positions[star[r]] - origin) / scale;
                    fill_row(lhs, r, q.dot(t1), q.dot(t2), cols);
                    rhs(r) = q.dot(n);
                }
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(lhs);
                qr.setThreshold(1e-10);
                if (qr.rank() < cols) continue;
                coeff = qr.solve(rhs);
                solved = true;
                break;
            }
            if (!solved) throw FrameDegenerate("rank-deficient jet fit");
            d = coeff[3];
            e = coeff[4];
            if (d * d + e * e < 1e-24 || pass == 3) break;
            // Re-align the frame with the fitted normal and refit.
            n = (n - d * t1 - e * t2).normalized();
            frame_from_normal(n, t1, t2);
        }

        // Shape operator of the graph, reduced to the orthonormal frame:
        // S = -E^{-1/2} Hess E^{-1/2} / sqrt(1 + |g|^2) with g the fitted
        // slope. The sign makes the outward-normal sphere positively curved.
        Eigen::Vector2d g(d, e);
        Mat2 hess;
        hess << coeff[0], coeff[1], coeff[1], coeff[2];
        hess /= std::sqrt(1.0 + g.squaredNorm());
        Mat2 first = Mat2::Identity() + g * g.transpose();
        Mat2 inv_sqrt = inverse_sqrt(first);
        Mat2 shape = -(inv_sqrt * hess * inv_sqrt) / scale;
        shape(0, 1) = shape(1, 0) = 0.5 * (shape(0, 1) + shape(1, 0));

        Eigen::SelfAdjointEigenSolver<Mat2> eig(shape);
        cache.normal[v] = n;
        cache.frame_u[v] = t1;
        cache.frame_v[v] = t2;
        cache.shape[v] = shape;
        cache.kappa1[v] = eig.eigenvalues()[1];
        cache.kappa2[v] = eig.eigenvalues()[0];
    }

    // Pick the global orientation with mesh-average <H n, x^N> >= 0.
    Eigen::VectorXd dual_area = mesh.vertex_dual_areas();
    double sign_sum = 0.0;
    for (int v = 0; v < V; v++) {
        double h = cache.shape[v].trace();
        sign_sum += dual_area[v] * h * mesh.positions[v].dot(cache.normal[v]);
    }
    if (sign_sum < 0.0) {
        for (int v = 0; v < V; v++) {
            cache.normal[v] = -cache.normal[v];
            cache.frame_v[v] = -cache.frame_v[v];
            Mat2& s = cache.shape[v];
            Mat2 flipped;
            flipped << -s(0, 0), s(0, 1), s(1, 0), -s(1, 1);
            s = flipped;
            double k1 = cache.kappa1[v];
            cache.kappa1[v] = -cache.kappa2[v];
            cache.kappa2[v] = -k1;
        }
    }

    for (int v = 0; v < V; v++) {
        cache.H[v] = cache.kappa1[v] + cache.kappa2[v];
        cache.K[v] = cache.kappa1[v] * cache.kappa2[v];
        cache.A2[v] = cache.kappa1[v] * cache.kappa1[v] + cache.kappa2[v] * cache.kappa2[v];
        const Vec3& x = mesh.positions[v];
        cache.x_normal[v] = x.dot(cache.normal[v]) * cache.normal[v];
        cache.x_tangent[v] = x - cache.x_normal[v];
    }

    return cache;
}

Cochain0 shrinker_residual(const TriMesh& mesh, const GeometryCache& cache) {
    Cochain0 res(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); v++) {
        Vec3 hv = cache.H[v] * cache.normal[v];
        Vec3 target = 0.5 * cache.x_normal[v];
        double denom = std::max({std::abs(cache.H[v]), 0.5 * cache.x_normal[v].norm(), 0.1});
        res[v] = (hv - target).norm() / denom;
    }
    return res;
}

std::pair<std::vector<Vec3>, std::vector<Vec3>>
position_split(const TriMesh& mesh, const GeometryCache& cache) {
    std::vector<Vec3> xt(mesh.num_vertices()), xn(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); v++) {
        xn[v] = mesh.positions[v].dot(cache.normal[v]) * cache.normal[v];
        xt[v] = mesh.positions[v] - xn[v];
    }
    return {xt, xn};
}

} // namespace ghf
