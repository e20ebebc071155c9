#include "ghf/operators.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>

namespace ghf {

DriftOperator drift_operator(const WeightedStars& stars, const ExteriorDerivatives& derivs) {
    return {weighted_stiffness(stars, derivs.d0), stars.M0};
}

std::vector<Vec3> apply_le_to_field(const DriftOperator& op, const std::vector<Vec3>& field) {
    const auto n = static_cast<Eigen::Index>(field.size());
    std::vector<Vec3> out(field.size());
    for (int a = 0; a < 3; a++) {
        Cochain0 coord(n);
        for (Eigen::Index v = 0; v < n; v++) coord[v] = field[v][a];
        Cochain0 res = op.apply(coord);
        for (Eigen::Index v = 0; v < n; v++) out[v][a] = res[v];
    }
    return out;
}

SymmetricPencil build_L_pencil(const TriMesh& mesh, const WeightedStars& stars,
                               const ExteriorDerivatives& derivs, const GeometryCache& cache) {
    const int V = mesh.num_vertices();
    SparseMat stiffness = weighted_stiffness(stars, derivs.d0);

    SymmetricPencil pencil;
    for (int v = 0; v < V; v++)
        if (!mesh.vertex_on_boundary[v]) pencil.dofs.push_back(v);
    const int n = static_cast<int>(pencil.dofs.size());

    std::vector<int> to_row(V, -1);
    for (int r = 0; r < n; r++) to_row[pencil.dofs[r]] = r;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(stiffness.nonZeros());
    for (int col = 0; col < stiffness.outerSize(); col++) {
        for (SparseMat::InnerIterator it(stiffness, col); it; ++it) {
            int r = to_row[it.row()], c = to_row[it.col()];
            if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
        }
    }
    for (int r = 0; r < n; r++) {
        int v = pencil.dofs[r];
        trip.emplace_back(r, r, -stars.M0[v] * (cache.A2[v] + 0.5));
    }
    pencil.S.resize(n, n);
    pencil.S.setFromTriplets(trip.begin(), trip.end());

    pencil.M.resize(n);
    for (int r = 0; r < n; r++) pencil.M[r] = stars.M0[pencil.dofs[r]];
    return pencil;
}

namespace {

double gershgorin_lower_bound(const SparseMat& s, const Eigen::VectorXd& m) {
    Eigen::VectorXd bound = Eigen::VectorXd::Zero(s.rows());
    for (int col = 0; col < s.outerSize(); col++) {
        for (SparseMat::InnerIterator it(s, col); it; ++it) {
            if (it.row() == it.col())
                bound[it.row()] += it.value();
            else
                bound[it.row()] -= std::abs(it.value());
        }
    }
    return (bound.cwiseQuotient(m)).minCoeff();
}

} // namespace

SpectrumResult lowest_eigenpairs(const SymmetricPencil& pencil, int k, std::uint64_t seed) {
    const int n = static_cast<int>(pencil.S.rows());
    if (k < 1 || 10 * k > n)
        throw Error("lowest_eigenpairs requires 1 <= k <= n/10");

    const double sigma_base = gershgorin_lower_bound(pencil.S, pencil.M);
    const double sigma = sigma_base - 0.01 * (1.0 + std::abs(sigma_base));

    SparseMat shifted = pencil.S;
    for (int i = 0; i < n; i++) shifted.coeffRef(i, i) -= sigma * pencil.M[i];
    Eigen::SimplicialLDLT<SparseMat> solver(shifted);
    if (solver.info() != Eigen::Success)
        throw FactorizationFailure("shifted pencil factorization failed");

    // Shift-inverted block subspace iteration with Rayleigh-Ritz. The block
    // carries extra guard vectors so degenerate eigenvalues keep their full
    // multiplicity.
    const int block = std::min(n, k + std::max(4, k));
    std::mt19937_64 rng(seed * 6364136223846793005ull + 1442695040888963407ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    Eigen::MatrixXd q(n, block);
    for (int j = 0; j < block; j++)
        for (int i = 0; i < n; i++) q(i, j) = unit(rng);

    auto m_orthonormalize = [&](Eigen::MatrixXd& z) {
        for (int sweep = 0; sweep < 2; sweep++) {
            for (int j = 0; j < z.cols(); j++) {
                for (int i = 0; i < j; i++)
                    z.col(j) -= z.col(i).dot(pencil.M.cwiseProduct(z.col(j))) * z.col(i);
                double norm = std::sqrt(
                    std::max(0.0, z.col(j).dot(pencil.M.cwiseProduct(z.col(j)))));
                if (norm < 1e-300) throw EigensolverStall("block collapsed");
                z.col(j) /= norm;
            }
        }
    };
    m_orthonormalize(q);

    SpectrumResult result;
    result.eigenvalues.resize(k);
    result.eigenvectors.resize(n, k);
    result.residuals.resize(k);

    const int max_iterations = 500;
    for (int it = 0; it < max_iterations; it++) {
        Eigen::MatrixXd z(n, block);
        for (int j = 0; j < block; j++)
            z.col(j) = solver.solve(pencil.M.cwiseProduct(q.col(j)));
        m_orthonormalize(z);

        // Rayleigh-Ritz on the pencil restricted to span(z).
        Eigen::MatrixXd small(block, block);
        Eigen::MatrixXd sz(n, block);
        for (int j = 0; j < block; j++) sz.col(j) = pencil.S * z.col(j);
        small = z.transpose() * sz;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (small + small.transpose()));
        q = z * eig.eigenvectors();

        bool converged = true;
        for (int j = 0; j < k; j++) {
            double eta = eig.eigenvalues()[j];
            double res = (pencil.S * q.col(j) - eta * pencil.M.cwiseProduct(q.col(j))).norm() /
                         q.col(j).norm();
            result.eigenvalues[j] = eta;
            result.residuals[j] = res;
            if (res > 1e-10) converged = false;
        }
        if (converged || it == max_iterations - 1) {
            for (int j = 0; j < k; j++) {
                Eigen::VectorXd v = q.col(j);
                v /= std::sqrt(v.dot(pencil.M.cwiseProduct(v)));
                int lead;
                v.cwiseAbs().maxCoeff(&lead);
                if (v[lead] < 0.0) v = -v;
                result.eigenvectors.col(j) = v;
                result.residuals[j] =
                    (pencil.S * v - result.eigenvalues[j] * pencil.M.cwiseProduct(v)).norm() /
                    v.norm();
            }
            if (result.residuals.maxCoeff() < 1e-8) return result;
            if (it == max_iterations - 1) break;
        }
    }
    throw EigensolverStall("subspace iteration did not meet the residual gate");
}

int morse_index(const SymmetricPencil& pencil) {
    const int n = static_cast<int>(pencil.S.rows());
    const double tau = -1e-9;

    int count = -1;
    double shift = tau;
    for (int attempt = 0; attempt < 3; attempt++) {
        SparseMat shifted = pencil.S;
        for (int i = 0; i < n; i++) shifted.coeffRef(i, i) -= shift * pencil.M[i];
        Eigen::SimplicialLDLT<SparseMat> ldlt(shifted);
        if (ldlt.info() == Eigen::Success) {
            Eigen::VectorXd d = ldlt.vectorD();
            double dmax = d.cwiseAbs().maxCoeff();
            if ((d.cwiseAbs().array() > 1e-14 * dmax).all()) {
                count = static_cast<int>((d.array() < 0.0).count());
                break;
            }
        }
        shift *= 4.0; // nudge away from a near-singular shift
    }
    if (count < 0) throw FactorizationFailure("could not factor the shifted pencil");

    if (n <= 2000) {
        Eigen::VectorXd isqrt = pencil.M.cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd b = isqrt.asDiagonal() * Eigen::MatrixXd(pencil.S) * isqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (b + b.transpose()),
                                                           Eigen::EigenvaluesOnly);
        int dense_count = static_cast<int>((eig.eigenvalues().array() < tau).count());
        if (dense_count != count)
            throw FactorizationFailure("inertia count disagrees with dense eigensolver");
    }
    return count;
}

} // namespace ghf
