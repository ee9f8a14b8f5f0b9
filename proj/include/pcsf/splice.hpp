#pragma once

#include <vector>

#include "pcsf/embedding.hpp"
#include "pcsf/instance.hpp"

namespace pcsf {

// Result of cutting the plane graph open along the Euler tour of a tree: the
// doubled tour becomes the outer face, tree vertices split into one copy per
// corner, and every other attachment is preserved.
struct OuterFaceGraph {
    WeightedGraph graph;
    Rotation rotation;
    FaceSet faces;
    int outer_face = -1;
    std::vector<int> outer_walk;     // dart cycle of the outer face
    std::vector<int> vertex_origin;  // new vertex -> original vertex
    std::vector<int> edge_origin;    // new edge -> original edge
    Rat outer_length;
};

// tree_edges must form a tree containing every vertex listed in
// required_vertices (the instance's positive-penalty terminals).
OuterFaceGraph splice_open(const WeightedGraph& g, const Rotation& rot,
                           const std::vector<int>& tree_edges,
                           const std::vector<int>& required_vertices);

}  // namespace pcsf
