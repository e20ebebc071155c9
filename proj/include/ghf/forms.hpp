#pragma once

#include "ghf/dec.hpp"
#include "ghf/homology.hpp"

namespace ghf {

struct FormDiagnostics {
    double closedness_residual = 0.0;   // max |d1 omega|
    double coclosedness_residual = 0.0; // |delta_lambda omega|_M0 / |omega|_star1
    double pointwise_el_residual = 0.0; // |tr grad omega - omega(xT)/2| in L2(lambda^2), relative
};

struct GhfBasis {
    std::vector<Cochain1> forms;
    std::vector<double> energies; // omega^T star1 omega
    std::vector<FormDiagnostics> diagnostics;
    Eigen::MatrixXd gram;         // star1 inner products of the forms
    Eigen::MatrixXd periods;      // cycle x form
};

/// Preconditioned conjugate gradient for the stiffness system with the
/// constant vector deflated out of every iterate. Relative tolerance on
/// |r| / |b|; throws SolverDivergence past max_iterations.
Cochain0 solve_stiffness(const SparseMat& stiffness, const Cochain0& rhs,
                         double tol = 1e-12, int max_iterations = 20000);

/// Energy minimizer omega0 + d0 f in the cohomology class of omega0:
/// f solves S_lambda f = -d0^T star1 omega0. Throws NotClosed unless
/// d1 omega0 == 0.
Cochain1 minimize_in_class(const TriMesh& mesh, const WeightedStars& stars,
                           const ExteriorDerivatives& derivs, const Cochain1& omega0);

/// One minimizer per generator class plus diagnostics, Gram matrix and
/// period matrix. `cache` enables the pointwise diagnostic on embedded
/// meshes; pass nullptr for intrinsic ones.
GhfBasis ghf_basis(const TriMesh& mesh, const WeightedStars& stars,
                   const ExteriorDerivatives& derivs, const GeneratorSet& gens,
                   const GeometryCache* cache = nullptr);

/// Closedness, weighted-divergence residual, and the pointwise
/// Euler-Lagrange residual |tr grad omega - <W, xT>/2| (a convergence
/// diagnostic; computed from the covariant gradient fit on embedded meshes,
/// and as the divergence-form residual on intrinsic ones, where xT is absent).
FormDiagnostics ghf_diagnostics(const TriMesh& mesh, const WeightedStars& stars,
                                const ExteriorDerivatives& derivs, const Cochain1& omega,
                                const GeometryCache* cache = nullptr);

} // namespace ghf
