#pragma once

#include "ghf/dec.hpp"

#include <cstdint>

namespace ghf {

/// The drift operator as matrices: apply(f) = -M0^{-1} S_lambda f, so that
/// f^T M0 apply(g) = -(d0 f)^T star1 (d0 g) holds by construction and the
/// operator is self-adjoint for the weighted inner product.
struct DriftOperator {
    SparseMat stiffness;
    Eigen::VectorXd mass;

    Cochain0 apply(const Cochain0& f) const {
        return -(stiffness * f).cwiseQuotient(mass);
    }
};

DriftOperator drift_operator(const WeightedStars& stars, const ExteriorDerivatives& derivs);

/// Componentwise drift on an R^3-valued vertex field.
std::vector<Vec3> apply_le_to_field(const DriftOperator& op, const std::vector<Vec3>& field);

/// Quadratic form Q(phi) = phi^T S phi with norm phi^T M phi. Eigenvalues are
/// quoted in the Rayleigh-quotient convention: eta = Q(phi)/|phi|_M^2, so the
/// ground state of an unstable operator is negative. The operator form is
/// L phi = -M^{-1} S phi.
struct SymmetricPencil {
    SparseMat S;
    Eigen::VectorXd M;
    std::vector<int> dofs; // original vertex per row (after Dirichlet elimination)
};

/// S = S_lambda - M0 diag(|A|^2 + 1/2), M = M0. Boundary vertices are
/// eliminated (Dirichlet) when the mesh has a boundary.
SymmetricPencil build_L_pencil(const TriMesh& mesh, const WeightedStars& stars,
                               const ExteriorDerivatives& derivs, const GeometryCache& cache);

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // M-orthonormal columns
    Eigen::VectorXd residuals;    // |S v - eta M v| / |v|
};

/// k smallest generalized eigenvalues of (S, M) by shift-invert Lanczos with
/// full reorthogonalization; the shift sits below the Gershgorin lower bound
/// of the pencil. Deterministic for a fixed seed. Throws EigensolverStall
/// when the residual gate (1e-8) cannot be met.
SpectrumResult lowest_eigenpairs(const SymmetricPencil& pencil, int k, std::uint64_t seed = 0);

/// Number of generalized eigenvalues below -1e-9, by the inertia of
/// S + 1e-9 M under a symmetric factorization; cross-checked against a dense
/// eigensolve for pencils of dimension <= 2000.
int morse_index(const SymmetricPencil& pencil);

} // namespace ghf
