#include "ghf/forms.hpp"

#include <cmath>

namespace ghf {

namespace {

void deflate_constants(Cochain0& v) {
    v.array() -= v.mean();
}

double star1_norm(const Cochain1& omega, const WeightedStars& stars) {
    return std::sqrt(std::max(0.0, omega.dot(stars.star1.cwiseProduct(omega))));
}

} // namespace

Cochain0 solve_stiffness(const SparseMat& stiffness, const Cochain0& rhs,
                         double tol, int max_iterations) {
    const auto n = rhs.size();
    Cochain0 b = rhs;
    deflate_constants(b);
    double bnorm = b.norm();
    if (bnorm == 0.0) return Cochain0::Zero(n);

    Eigen::VectorXd inv_diag(n);
    for (Eigen::Index i = 0; i < n; i++) {
        double d = stiffness.coeff(i, i);
        inv_diag[i] = d > 0.0 ? 1.0 / d : 1.0;
    }

    Cochain0 x = Cochain0::Zero(n);
    Cochain0 r = b;
    Cochain0 z = inv_diag.cwiseProduct(r);
    deflate_constants(z);
    Cochain0 p = z;
    double rz = r.dot(z);

    for (int it = 0; it < max_iterations; it++) {
        Cochain0 sp = stiffness * p;
        double psp = p.dot(sp);
        if (!(psp > 0.0)) throw SolverDivergence("stiffness not positive on search direction");
        double alpha = rz / psp;
        x += alpha * p;
        r -= alpha * sp;
        if (r.norm() <= tol * bnorm) {
            deflate_constants(x);
            return x;
        }
        z = inv_diag.cwiseProduct(r);
        deflate_constants(z);
        double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    throw SolverDivergence("conjugate gradient did not reach tolerance");
}

Cochain1 minimize_in_class(const TriMesh& mesh, const WeightedStars& stars,
                           const ExteriorDerivatives& derivs, const Cochain1& omega0) {
    (void)mesh;
    Eigen::VectorXd closed = derivs.d1 * omega0;
    double scale = std::max(1.0, omega0.cwiseAbs().maxCoeff());
    if (closed.cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw NotClosed("omega0 is not closed (d1 omega0 != 0)");

    SparseMat stiffness = weighted_stiffness(stars, derivs.d0);
    Cochain0 rhs = -(derivs.d0.transpose() * stars.star1.cwiseProduct(omega0));
    Cochain0 f = solve_stiffness(stiffness, rhs);
    return omega0 + derivs.d0 * f;
}

FormDiagnostics ghf_diagnostics(const TriMesh& mesh, const WeightedStars& stars,
                                const ExteriorDerivatives& derivs, const Cochain1& omega,
                                const GeometryCache* cache) {
    FormDiagnostics diag;
    diag.closedness_residual = (derivs.d1 * omega).cwiseAbs().maxCoeff();

    Cochain0 div = weighted_codifferential(omega, stars, derivs.d0);
    double div_m0 = std::sqrt(div.dot(stars.M0.cwiseProduct(div)));
    double omega_norm = star1_norm(omega, stars);
    diag.coclosedness_residual = omega_norm > 0.0 ? div_m0 / omega_norm : div_m0;

    if (cache && mesh.has_positions()) {
        auto field = one_form_to_vertex_field(mesh, omega, &cache->normal);
        auto grad = covariant_gradient_field(mesh, *cache, field);
        double num = 0.0, den = 0.0;
        for (int v = 0; v < mesh.num_vertices(); v++) {
            if (!cache->trusted[v]) continue;
            double r = grad[v].trace() - 0.5 * field[v].dot(cache->x_tangent[v]);
            num += stars.M0[v] * r * r;
            den += stars.M0[v] * field[v].squaredNorm();
        }
        diag.pointwise_el_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    } else {
        // Intrinsic meshes carry no position vector; the pointwise condition
        // reduces to the divergence form already reported above.
        diag.pointwise_el_residual = diag.coclosedness_residual;
    }
    return diag;
}

GhfBasis ghf_basis(const TriMesh& mesh, const WeightedStars& stars,
                   const ExteriorDerivatives& derivs, const GeneratorSet& gens,
                   const GeometryCache* cache) {
    GhfBasis basis;
    for (const auto& cocycle : gens.cocycles) {
        Cochain1 omega = minimize_in_class(mesh, stars, derivs, cocycle);
        basis.energies.push_back(omega.dot(stars.star1.cwiseProduct(omega)));
        basis.diagnostics.push_back(ghf_diagnostics(mesh, stars, derivs, omega, cache));
        basis.forms.push_back(std::move(omega));
    }

    const int g2 = static_cast<int>(basis.forms.size());
    basis.gram.resize(g2, g2);
    for (int a = 0; a < g2; a++)
        for (int b = 0; b <= a; b++) {
            double ip = basis.forms[a].dot(stars.star1.cwiseProduct(basis.forms[b]));
            basis.gram(a, b) = ip;
            basis.gram(b, a) = ip;
        }
    basis.periods = period_matrix(mesh, gens, basis.forms);
    return basis;
}

} // namespace ghf
