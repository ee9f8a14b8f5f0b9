#pragma once

#include <string>
#include <vector>

#include "pcsf/graph.hpp"
#include "pcsf/instance.hpp"

namespace pcsf {

inline int dart_of(int edge, int side) { return 2 * edge + side; }
inline int dart_edge(int d) { return d / 2; }
inline int dart_twin(int d) { return d ^ 1; }

inline int dart_base(const WeightedGraph& g, int d) {
    const Edge& e = g.edge(dart_edge(d));
    return (d & 1) ? e.v : e.u;
}
inline int dart_head(const WeightedGraph& g, int d) { return dart_base(g, dart_twin(d)); }

// Face walks induced by a rotation system. faces[f] is the dart cycle of face
// f; dart_face[d] is the face to the left of dart d.
struct FaceSet {
    std::vector<std::vector<int>> faces;
    std::vector<int> dart_face;

    Rat face_length(const WeightedGraph& g, int f) const {
        Rat sum = 0;
        for (int d : faces[f]) sum += g.edge(dart_edge(d)).length;
        return sum;
    }
};

// Throws ValidationError if the rotation does not list every dart exactly once
// at its base vertex.
FaceSet compute_faces(const WeightedGraph& g, const Rotation& rot);

struct EmbeddingReport {
    bool ok = false;
    std::string diagnostic;
    int face_count = 0;
    int outer_face = -1;
    Rat outer_face_length;
};

// Validates rotation consistency and the genus-0 Euler identity per connected
// component. outer_face selects which face to measure; -1 means face 0.
EmbeddingReport check_embedding(const WeightedGraph& g, const Rotation& rot, int outer_face = -1);

}  // namespace pcsf
