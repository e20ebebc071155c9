#pragma once

#include "ghf/mesh.hpp"

namespace ghf {

/// One homology cycle as a closed walk of directed edges.
struct EdgeLoop {
    std::vector<int> edges;  // edge indices
    std::vector<int> signs;  // +1 when traversed (i -> j) with i < j
};

/// Cohomology generators from a tree-cotree decomposition. Each cocycle is
/// integer valued, exactly closed (d1 * cocycle == 0), and supported away
/// from the primal spanning tree; the cycle/cocycle period matrix is
/// diagonal +-1 by construction.
struct GeneratorSet {
    std::vector<Cochain1> cocycles;
    std::vector<EdgeLoop> cycles;
    int count() const { return static_cast<int>(cocycles.size()); }
};

/// Breadth-first primal tree from vertex 0 and dual cotree from face 0, with
/// index-order tie breaking; the 2g leftover edges index the generators.
/// Throws NotClosed on meshes with boundary and Disconnected when the mesh
/// has several components.
GeneratorSet tree_cotree_generators(const TriMesh& mesh);

/// Signed sum of omega around each loop; exactly invariant (by telescoping)
/// under omega -> omega + d0 f. Throws OpenLoop when a walk does not chain
/// head to tail.
Eigen::VectorXd periods(const TriMesh& mesh, const Cochain1& omega,
                        const std::vector<EdgeLoop>& cycles);

/// Periods of every cocycle around every cycle; row = cycle, col = cocycle.
Eigen::MatrixXd period_matrix(const TriMesh& mesh, const GeneratorSet& gens,
                              const std::vector<Cochain1>& forms);

} // namespace ghf
