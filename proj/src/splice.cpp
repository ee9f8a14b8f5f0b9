#include "pcsf/splice.hpp"

#include <algorithm>
#include <sstream>

namespace pcsf {

OuterFaceGraph splice_open(const WeightedGraph& g, const Rotation& rot,
                           const std::vector<int>& tree_edges,
                           const std::vector<int>& required_vertices) {
    // The tree must be a tree and must cover the required vertices.
    std::vector<char> in_tree(g.edge_count(), 0);
    UnionFind uf(g.vertex_count());
    for (int e : tree_edges) {
        if (!uf.unite(g.edge(e).u, g.edge(e).v))
            throw ValidationError("splice_open: tree edge set contains a cycle");
        in_tree[e] = 1;
    }
    if (tree_edges.empty()) throw ValidationError("splice_open: empty tree");
    int troot = g.edge(tree_edges[0]).u;
    std::vector<char> in_tree_vertex(g.vertex_count(), 0);
    for (int e : tree_edges) {
        if (!uf.same(g.edge(e).u, troot))
            throw ValidationError("splice_open: tree edge set is disconnected");
        in_tree_vertex[g.edge(e).u] = 1;
        in_tree_vertex[g.edge(e).v] = 1;
    }
    for (int v : required_vertices)
        if (!in_tree_vertex[v]) {
            std::ostringstream os;
            os << "splice_open: required vertex " << v << " is not on the tree";
            throw ValidationError(os.str());
        }

    // Rotation successors.
    int nd = 2 * g.edge_count();
    std::vector<int> sigma(nd, -1);
    {
        FaceSet check = compute_faces(g, rot);  // validates the rotation
        (void)check;
        for (int v = 0; v < g.vertex_count(); ++v)
            for (std::size_t i = 0; i < rot[v].size(); ++i)
                sigma[rot[v][i]] = rot[v][(i + 1) % rot[v].size()];
    }

    // Euler tour around the tree: from an entering dart, skip the non-tree
    // darts of the corner and leave through the next tree dart.
    auto tour_next = [&](int d, std::vector<int>* corner_darts) {
        int cur = sigma[dart_twin(d)];
        while (!in_tree[dart_edge(cur)]) {
            if (corner_darts) corner_darts->push_back(cur);
            cur = sigma[cur];
        }
        return cur;
    };

    int start = -1;
    for (int e : tree_edges) start = start == -1 ? 2 * e : std::min(start, 2 * e);
    std::vector<int> tour;                        // tree darts in tour order
    std::vector<std::vector<int>> corner_darts;   // non-tree darts owned by corner k
    {
        int d = start;
        do {
            std::vector<int> corner;
            int nxt = tour_next(d, &corner);
            tour.push_back(nxt);
            corner_darts.push_back(std::move(corner));  // corner at head(d)
            d = nxt;
        } while (d != start);
        // Rotate so corners align: corner k holds the darts seen arriving at
        // base(tour[k]); tour[k] leaves from corner k.
    }
    int L = static_cast<int>(tour.size());

    OuterFaceGraph out;
    // Vertex copies: one per corner for tree vertices, originals elsewhere.
    std::vector<int> plain_copy(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!in_tree_vertex[v]) {
            plain_copy[v] = out.graph.add_vertex();
            out.vertex_origin.push_back(v);
        }
    std::vector<int> corner_copy(L, -1);
    for (int k = 0; k < L; ++k) {
        corner_copy[k] = out.graph.add_vertex();
        out.vertex_origin.push_back(dart_base(g, tour[k]));
    }

    // Tree copies: tour step k joins corner k to corner k+1.
    std::vector<int> step_edge(L, -1);
    for (int k = 0; k < L; ++k) {
        int e = dart_edge(tour[k]);
        step_edge[k] = out.graph.add_edge(corner_copy[k], corner_copy[(k + 1) % L],
                                          g.edge(e).length);
        out.edge_origin.push_back(e);
    }
    // Non-tree edges: endpoints resolve to the corner owning their dart.
    std::vector<int> dart_corner(nd, -1);
    for (int k = 0; k < L; ++k)
        for (int d : corner_darts[k]) dart_corner[d] = k;
    std::vector<int> nontree_copy(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        auto endpoint = [&](int d) {
            int v = dart_base(g, d);
            if (!in_tree_vertex[v]) return plain_copy[v];
            if (dart_corner[d] == -1)
                throw ValidationError("splice_open: dart not assigned to any corner");
            return corner_copy[dart_corner[d]];
        };
        nontree_copy[e] = out.graph.add_edge(endpoint(2 * e), endpoint(2 * e + 1),
                                             g.edge(e).length);
        out.edge_origin.push_back(e);
    }

    // Rotation. New dart ids follow the new edge ids.
    auto new_dart = [&](int old_dart) {
        int e = dart_edge(old_dart);
        int ne = nontree_copy[e];
        return 2 * ne + (old_dart & 1);
    };
    out.rotation.assign(out.graph.vertex_count(), {});
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (in_tree_vertex[v]) continue;
        for (int d : rot[v]) out.rotation[plain_copy[v]].push_back(new_dart(d));
    }
    for (int k = 0; k < L; ++k) {
        // Corner k at vertex base(tour[k]): entered via step k-1, leaves via
        // step k. Order: incoming copy, the skipped darts, outgoing copy.
        std::vector<int>& list = out.rotation[corner_copy[k]];
        int prev = (k + L - 1) % L;
        int incoming = 2 * step_edge[prev] + 1;  // head side of the previous step
        list.push_back(incoming);
        for (int d : corner_darts[k]) list.push_back(new_dart(d));
        list.push_back(2 * step_edge[k]);  // tail side of this step
    }

    out.faces = compute_faces(out.graph, out.rotation);

    // The slit face consists purely of tree copies and covers all of them.
    std::vector<char> is_copy(out.graph.edge_count(), 0);
    for (int k = 0; k < L; ++k) is_copy[step_edge[k]] = 1;
    out.outer_face = -1;
    for (std::size_t f = 0; f < out.faces.faces.size(); ++f) {
        if (static_cast<int>(out.faces.faces[f].size()) != L) continue;
        bool pure = true;
        for (int d : out.faces.faces[f])
            if (!is_copy[dart_edge(d)]) pure = false;
        if (pure) {
            out.outer_face = static_cast<int>(f);
            break;  // lowest face id when the doubled cycle leaves two choices
        }
    }
    if (out.outer_face == -1)
        throw ValidationError("splice_open: no pure doubled-tour face found");
    out.outer_walk = out.faces.faces[out.outer_face];
    out.outer_length = out.faces.face_length(out.graph, out.outer_face);

    Rat tree_len = 0;
    for (int e : tree_edges) tree_len += g.edge(e).length;
    if (out.outer_length != 2 * tree_len)
        throw ValidationError("splice_open: outer face is not the doubled tree");
    EmbeddingReport rep = check_embedding(out.graph, out.rotation, out.outer_face);
    if (!rep.ok) throw ValidationError("splice_open: result is not planar: " + rep.diagnostic);
    return out;
}

}  // namespace pcsf
