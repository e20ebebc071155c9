#include "ghf/dec.hpp"

#include <cmath>

namespace ghf {

namespace {

// Rotate `x` by the minimal rotation taking unit vector `from` to `to`.
Vec3 transport(const Vec3& x, const Vec3& from, const Vec3& to) {
    Vec3 axis = from.cross(to);
    double s = axis.norm();
    double c = from.dot(to);
    if (s < 1e-14) {
        if (c > 0.0) return x;
        // Antipodal normals never happen inside a fit star; fall back to a
        // 180-degree flip about an arbitrary orthogonal axis.
        Vec3 t1, t2;
        t1 = from.unitOrthogonal();
        return 2.0 * x.dot(t1) * t1 - x;
    }
    Vec3 u = axis / s;
    return x * c + u.cross(x) * s + u * u.dot(x) * (1.0 - c);
}

} // namespace

ExteriorDerivatives exterior_derivatives(const TriMesh& mesh) {
    const int V = mesh.num_vertices(), E = mesh.num_edges(), F = mesh.num_faces();
    ExteriorDerivatives out;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * E);
    for (int e = 0; e < E; e++) {
        trip.emplace_back(e, mesh.edges[e][0], -1.0);
        trip.emplace_back(e, mesh.edges[e][1], +1.0);
    }
    out.d0.resize(E, V);
    out.d0.setFromTriplets(trip.begin(), trip.end());

    trip.clear();
    trip.reserve(3 * F);
    for (int f = 0; f < F; f++) {
        for (int c = 0; c < 3; c++) {
            int a = mesh.faces[f][c], b = mesh.faces[f][(c + 1) % 3];
            trip.emplace_back(f, mesh.edge_between(a, b), a < b ? 1.0 : -1.0);
        }
    }
    out.d1.resize(F, E);
    out.d1.setFromTriplets(trip.begin(), trip.end());
    return out;
}

WeightedStars weighted_stars(const TriMesh& mesh, const Cochain0& lambda2) {
    const int V = mesh.num_vertices(), E = mesh.num_edges(), F = mesh.num_faces();
    if (lambda2.size() != V) throw Error("weight length does not match vertex count");
    for (int v = 0; v < V; v++)
        if (!(lambda2[v] > 0.0)) throw NonPositiveWeight("weight must be positive everywhere");

    WeightedStars stars;
    stars.M0 = Eigen::VectorXd::Zero(V);
    stars.star1 = Eigen::VectorXd::Zero(E);

    for (int f = 0; f < F; f++) {
        double area = mesh.face_area(f);
        for (int c = 0; c < 3; c++) {
            // Corner c is opposite the edge joining the other two vertices.
            int i = mesh.faces[f][c];
            int j = mesh.faces[f][(c + 1) % 3];
            int k = mesh.faces[f][(c + 2) % 3];
            double lj = mesh.edge_length[mesh.edge_between(i, j)];
            double lk = mesh.edge_length[mesh.edge_between(i, k)];
            double la = mesh.edge_length[mesh.edge_between(j, k)];
            double cot = (lj * lj + lk * lk - la * la) / (4.0 * area);
            stars.star1[mesh.edge_between(j, k)] += 0.5 * cot;
            stars.M0[i] += lambda2[i] * area / 3.0;
        }
    }
    for (int e = 0; e < E; e++)
        stars.star1[e] *= 0.5 * (lambda2[mesh.edges[e][0]] + lambda2[mesh.edges[e][1]]);
    return stars;
}

Cochain0 weighted_codifferential(const Cochain1& omega, const WeightedStars& stars,
                                 const SparseMat& d0) {
    return -(d0.transpose() * stars.star1.cwiseProduct(omega)).cwiseQuotient(stars.M0);
}

SparseMat weighted_stiffness(const WeightedStars& stars, const SparseMat& d0) {
    return d0.transpose() * stars.star1.asDiagonal() * d0;
}

std::vector<Vec3> one_form_to_vertex_field(const TriMesh& mesh, const Cochain1& omega,
                                           const std::vector<Vec3>* normals) {
    if (!mesh.has_positions()) throw Error("one_form_to_vertex_field needs vertex positions");
    const int V = mesh.num_vertices(), F = mesh.num_faces();

    std::vector<Vec3> field(V, Vec3::Zero());
    std::vector<double> weight(V, 0.0);
    std::vector<Vec3> vertex_normal(V, Vec3::Zero());

    for (int f = 0; f < F; f++) {
        const auto& tri = mesh.faces[f];
        const Vec3& p0 = mesh.positions[tri[0]];
        Vec3 vec_area = 0.5 * (mesh.positions[tri[1]] - p0).cross(mesh.positions[tri[2]] - p0);
        double area = vec_area.norm();
        Vec3 n = vec_area / area;

        // Barycentric gradients: grad lambda_c is the opposite edge rotated
        // into the face, over twice the area.
        Vec3 grad[3];
        for (int c = 0; c < 3; c++) {
            Vec3 opp = mesh.positions[tri[(c + 2) % 3]] - mesh.positions[tri[(c + 1) % 3]];
            grad[c] = n.cross(opp) / (2.0 * area);
        }

        // Whitney 1-form at the barycenter.
        Vec3 w = Vec3::Zero();
        for (int c = 0; c < 3; c++) {
            int a = tri[c], b = tri[(c + 1) % 3];
            double val = omega[mesh.edge_between(a, b)] * (a < b ? 1.0 : -1.0);
            w += val * (grad[(c + 1) % 3] - grad[c]);
        }
        w /= 3.0;

        for (int c = 0; c < 3; c++) {
            field[tri[c]] += area * w;
            weight[tri[c]] += area;
            vertex_normal[tri[c]] += vec_area;
        }
    }

    for (int v = 0; v < V; v++) {
        field[v] /= weight[v];
        Vec3 n = normals ? (*normals)[v] : vertex_normal[v].normalized();
        field[v] -= field[v].dot(n) * n;
    }
    return field;
}

std::vector<Mat2> covariant_gradient_field(const TriMesh& mesh, const GeometryCache& cache,
                                           const std::vector<Vec3>& field) {
    const int V = mesh.num_vertices();
    std::vector<Mat2> grad(V);

    for (int v = 0; v < V; v++) {
        std::vector<int> star = fit_star(mesh, v);
        const Vec3& t1 = cache.frame_u[v];
        const Vec3& t2 = cache.frame_v[v];
        const Vec3& n = cache.normal[v];
        const Vec3& origin = mesh.positions[v];

        const int rows = static_cast<int>(star.size()) + 1;
        if (rows < 3) throw FrameDegenerate("too few samples for gradient fit");
        Eigen::MatrixXd lhs(rows, 3);
        Eigen::MatrixXd rhs(rows, 2);
        double mean_dist = 0.0;
        for (int w : star) mean_dist += (mesh.positions[w] - origin).norm();
        mean_dist /= static_cast<double>(star.size());

        for (int r = 0; r < rows; r++) {
            int w = (r == 0) ? v : star[r - 1];
            Vec3 delta3 = mesh.positions[w] - origin;
            Eigen::Vector2d delta(delta3.dot(t1), delta3.dot(t2));
            Vec3 moved = transport(field[w], cache.normal[w], n);
            double rho = std::exp(-delta.squaredNorm() / (2.0 * mean_dist * mean_dist));
            double sr = std::sqrt(rho);
            lhs(r, 0) = sr;
            lhs(r, 1) = sr * delta[0];
            lhs(r, 2) = sr * delta[1];
            rhs(r, 0) = sr * moved.dot(t1);
            rhs(r, 1) = sr * moved.dot(t2);
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(lhs);
        qr.setThreshold(1e-12);
        if (qr.rank() < 3) throw FrameDegenerate("rank-deficient gradient fit");
        Eigen::MatrixXd sol = qr.solve(rhs); // columns: [y0, dy/du, dy/dv] per component

        // sol(1 + j, i) = d(component i)/d(direction j); G[u][v] = <grad_u W, v>.
        Mat2 g;
        g(0, 0) = sol(1, 0);
        g(0, 1) = sol(1, 1);
        g(1, 0) = sol(2, 0);
        g(1, 1) = sol(2, 1);
        grad[v] = g;
    }
    return grad;
}

} // namespace ghf
