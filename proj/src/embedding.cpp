#include "pcsf/embedding.hpp"

#include <sstream>

namespace pcsf {

namespace {

// next_at[d] = successor of dart d in the rotation of its base vertex.
std::vector<int> rotation_successors(const WeightedGraph& g, const Rotation& rot) {
    int nd = 2 * g.edge_count();
    std::vector<int> next_at(nd, -1);
    std::vector<char> seen(nd, 0);
    if (static_cast<int>(rot.size()) != g.vertex_count())
        throw ValidationError("rotation has wrong number of vertices");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& cyc = rot[v];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int d = cyc[i];
            if (d < 0 || d >= nd) {
                std::ostringstream os;
                os << "vertex " << v << " lists unknown dart " << d;
                throw ValidationError(os.str());
            }
            if (dart_base(g, d) != v) {
                std::ostringstream os;
                os << "vertex " << v << " lists dart " << d << " based elsewhere";
                throw ValidationError(os.str());
            }
            if (seen[d]) {
                std::ostringstream os;
                os << "dart " << d << " appears twice (vertex " << v << ")";
                throw ValidationError(os.str());
            }
            seen[d] = 1;
            next_at[d] = cyc[(i + 1) % cyc.size()];
        }
    }
    for (int d = 0; d < nd; ++d)
        if (!seen[d]) {
            std::ostringstream os;
            os << "dart " << d << " missing from the rotation of vertex " << dart_base(g, d);
            throw ValidationError(os.str());
        }
    return next_at;
}

}  // namespace

FaceSet compute_faces(const WeightedGraph& g, const Rotation& rot) {
    std::vector<int> next_at = rotation_successors(g, rot);
    int nd = 2 * g.edge_count();
    FaceSet out;
    out.dart_face.assign(nd, -1);
    for (int start = 0; start < nd; ++start) {
        if (out.dart_face[start] != -1) continue;
        int f = static_cast<int>(out.faces.size());
        std::vector<int> walk;
        int d = start;
        do {
            out.dart_face[d] = f;
            walk.push_back(d);
            d = next_at[dart_twin(d)];
        } while (d != start);
        out.faces.push_back(std::move(walk));
    }
    return out;
}

EmbeddingReport check_embedding(const WeightedGraph& g, const Rotation& rot, int outer_face) {
    EmbeddingReport rep;
    FaceSet fs;
    try {
        fs = compute_faces(g, rot);
    } catch (const ValidationError& err) {
        rep.ok = false;
        rep.diagnostic = err.what();
        return rep;
    }
    rep.face_count = static_cast<int>(fs.faces.size());

    // Euler's formula per connected component (isolated vertices are trivial).
    UnionFind uf(g.vertex_count());
    for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
    std::vector<int> verts(g.vertex_count(), 0), edges(g.vertex_count(), 0), faces(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++verts[uf.find(v)];
    for (const Edge& e : g.edges()) ++edges[uf.find(e.u)];
    std::vector<char> face_seen(fs.faces.size(), 0);
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        int rep_v = uf.find(dart_base(g, fs.faces[f][0]));
        ++faces[rep_v];
        (void)face_seen;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (uf.find(v) != v || edges[v] == 0) continue;
        if (verts[v] - edges[v] + faces[v] != 2) {
            rep.ok = false;
            std::ostringstream os;
            os << "Euler formula fails on the component of vertex " << v << ": " << verts[v]
               << " - " << edges[v] << " + " << faces[v] << " != 2";
            rep.diagnostic = os.str();
            return rep;
        }
    }

    rep.ok = true;
    if (rep.face_count > 0) {
        int f = outer_face >= 0 && outer_face < rep.face_count ? outer_face : 0;
        rep.outer_face = f;
        rep.outer_face_length = fs.face_length(g, f);
    }
    return rep;
}

}  // namespace pcsf
