#include "ghf/homology.hpp"

#include <algorithm>
#include <queue>

namespace ghf {

namespace {

// d1-sign of the halfedge of edge e inside face f: +1 when the face
// traverses e from the lower to the higher vertex index.
int halfedge_sign(const TriMesh& mesh, int f, int e) {
    for (int c = 0; c < 3; c++) {
        int a = mesh.faces[f][c], b = mesh.faces[f][(c + 1) % 3];
        if (mesh.edge_between(a, b) == e) return a < b ? +1 : -1;
    }
    throw Error("internal: edge not on face");
}

std::vector<int> path_to_root(int node, const std::vector<int>& parent) {
    std::vector<int> path{node};
    while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
    return path;
}

} // namespace

GeneratorSet tree_cotree_generators(const TriMesh& mesh) {
    const int V = mesh.num_vertices(), E = mesh.num_edges(), F = mesh.num_faces();
    if (!mesh.is_closed()) throw NotClosed("tree-cotree generators need a closed mesh");

    // Primal spanning tree, breadth-first from vertex 0.
    std::vector<int> vparent(V, -1), vparent_edge(V, -1);
    std::vector<char> vseen(V, 0), in_tree(E, 0);
    std::queue<int> queue;
    vseen[0] = 1;
    queue.push(0);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : mesh.vertex_neighbors[v]) {
            if (vseen[w]) continue;
            vseen[w] = 1;
            vparent[w] = v;
            vparent_edge[w] = mesh.edge_between(v, w);
            in_tree[vparent_edge[w]] = 1;
            queue.push(w);
        }
    }
    if (std::find(vseen.begin(), vseen.end(), 0) != vseen.end())
        throw Disconnected("mesh has more than one component");

    // Dual spanning cotree from face 0, avoiding primal tree edges.
    std::vector<int> fparent(F, -1), fparent_edge(F, -1);
    std::vector<char> fseen(F, 0), crossed(E, 0);
    fseen[0] = 1;
    queue.push(0);
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop();
        for (int c = 0; c < 3; c++) {
            int e = mesh.edge_between(mesh.faces[f][c], mesh.faces[f][(c + 1) % 3]);
            if (in_tree[e] || crossed[e]) continue;
            int g = (mesh.edge_face[e][0] == f) ? mesh.edge_face[e][1] : mesh.edge_face[e][0];
            if (fseen[g]) continue;
            fseen[g] = 1;
            fparent[g] = f;
            fparent_edge[g] = e;
            crossed[e] = 1;
            queue.push(g);
        }
    }

    GeneratorSet gens;
    for (int leftover = 0; leftover < E; leftover++) {
        if (in_tree[leftover] || crossed[leftover]) continue;

        // Dual loop: cross `leftover` from the (i -> j) side, then walk the
        // cotree back. Each dual step f -> g over edge e adds the d1-sign of
        // e's halfedge in the source face; a closed loop then gives an
        // exactly closed cochain.
        Cochain1 chi = Cochain1::Zero(E);
        int f_from = mesh.edge_face[leftover][0];
        int f_to = mesh.edge_face[leftover][1];
        chi[leftover] += halfedge_sign(mesh, f_from, leftover);

        auto pa = path_to_root(f_to, fparent);
        auto pb = path_to_root(f_from, fparent);
        // Drop the common tail above the lowest common ancestor.
        while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
            pa.pop_back();
            pb.pop_back();
        }
        for (size_t t = 0; t + 1 < pa.size(); t++) // f_to ... lca: steps child -> parent
            chi[fparent_edge[pa[t]]] += halfedge_sign(mesh, pa[t], fparent_edge[pa[t]]);
        for (size_t t = pb.size() - 1; t > 0; t--) // lca ... f_from: steps parent -> child
            chi[fparent_edge[pb[t - 1]]] +=
                halfedge_sign(mesh, fparent[pb[t - 1]], fparent_edge[pb[t - 1]]);

        // Primal cycle: leftover edge (i -> j), then the tree path j ... i.
        EdgeLoop loop;
        int i = mesh.edges[leftover][0], j = mesh.edges[leftover][1];
        loop.edges.push_back(leftover);
        loop.signs.push_back(+1);
        auto qa = path_to_root(j, vparent);
        auto qb = path_to_root(i, vparent);
        while (qa.size() > 1 && qb.size() > 1 && qa[qa.size() - 2] == qb[qb.size() - 2]) {
            qa.pop_back();
            qb.pop_back();
        }
        for (size_t t = 0; t + 1 < qa.size(); t++) {
            int a = qa[t], b = qa[t + 1];
            loop.edges.push_back(vparent_edge[a]);
            loop.signs.push_back(a < b ? +1 : -1);
        }
        for (size_t t = qb.size() - 1; t > 0; t--) {
            int a = qb[t], b = qb[t - 1];
            loop.edges.push_back(vparent_edge[b]);
            loop.signs.push_back(a < b ? +1 : -1);
        }

        gens.cocycles.push_back(std::move(chi));
        gens.cycles.push_back(std::move(loop));
    }
    return gens;
}

Eigen::VectorXd periods(const TriMesh& mesh, const Cochain1& omega,
                        const std::vector<EdgeLoop>& cycles) {
    Eigen::VectorXd out(cycles.size());
    for (size_t c = 0; c < cycles.size(); c++) {
        const EdgeLoop& loop = cycles[c];
        if (loop.edges.empty() || loop.edges.size() != loop.signs.size())
            throw OpenLoop("empty or malformed loop");
        // Verify the walk chains head to tail and closes.
        auto head = [&](size_t t) {
            const auto& e = mesh.edges[loop.edges[t]];
            return loop.signs[t] > 0 ? e[1] : e[0];
        };
        auto tail = [&](size_t t) {
            const auto& e = mesh.edges[loop.edges[t]];
            return loop.signs[t] > 0 ? e[0] : e[1];
        };
        for (size_t t = 0; t < loop.edges.size(); t++)
            if (head(t) != tail((t + 1) % loop.edges.size()))
                throw OpenLoop("walk does not close");

        double sum = 0.0;
        for (size_t t = 0; t < loop.edges.size(); t++)
            sum += loop.signs[t] * omega[loop.edges[t]];
        out[c] = sum;
    }
    return out;
}

Eigen::MatrixXd period_matrix(const TriMesh& mesh, const GeneratorSet& gens,
                              const std::vector<Cochain1>& forms) {
    Eigen::MatrixXd P(gens.cycles.size(), forms.size());
    for (size_t j = 0; j < forms.size(); j++)
        P.col(j) = periods(mesh, forms[j], gens.cycles);
    return P;
}

} // namespace ghf
