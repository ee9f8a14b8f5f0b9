#pragma once

#include <string>
#include <vector>

#include "pcsf/instance.hpp"

namespace pcsf {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;      // sorted vertex lists
    std::vector<std::pair<int, int>> links;  // tree edges between nodes
    int n = 0;                               // vertex count of the decomposed graph

    int width() const;
};

enum class NodeKind { Leaf, Join, Introduce, Forget };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    std::vector<int> bag;  // sorted
    int child_left = -1;
    int child_right = -1;
    int vertex = -1;  // introduced / forgotten vertex
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;  // children precede parents
    int root = -1;
    int n = 0;

    int width() const;
};

// Min-fill elimination order (ties: min degree, then min id).
TreeDecomposition heuristic_decomposition(const WeightedGraph& g);

struct DecompositionReport {
    bool valid = false;
    std::string diagnostic;
    int width = -1;
};

DecompositionReport verify_decomposition(const WeightedGraph& g, const TreeDecomposition& td);

// Nice form of the same width, rooted at a node whose bag contains root_vertex.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root_vertex);

// Structural check of the nice form plus the underlying decomposition rules.
DecompositionReport verify_nice(const WeightedGraph& g, const NiceTreeDecomposition& ntd);

// Exact treewidth by elimination-order DP; test oracle for <= ~10 vertices.
int exact_treewidth(const WeightedGraph& g, int vertex_cap = 12);

struct EdgePartition {
    int k = 0;
    std::vector<std::vector<int>> classes;  // edge ids per class
    std::vector<Rat> class_length;
    int selected = -1;  // index of the minimum-length class

    const std::vector<int>& selected_edges() const { return classes[selected]; }
};

// Stand-in contraction-friendly partition: class of an edge is the smaller
// BFS level of its endpoints mod k. The selected class always satisfies
// Length(E_i*) <= Length(H)/k; the post-contraction width is measured by the
// caller, not asserted.
EdgePartition partition_edges(const WeightedGraph& h, int k);

struct ContractionResult {
    PcInstance instance;             // quotient instance with remapped penalties
    std::vector<int> vertex_map;     // original vertex -> quotient vertex
    std::vector<int> edge_map;       // original edge -> quotient edge or -1
    std::vector<int> quotient_edge_source;  // quotient edge -> original edge
    std::vector<int> contracted_edges;      // the set E that was contracted
    std::vector<int> auto_connected_pairs;  // pairs whose endpoints merged (forest mode)

    // Edge ids in the original graph realizing a quotient solution plus E.
    std::vector<int> lift(const std::vector<int>& quotient_edges) const;
};

// Contracts E in inst's graph and remaps terminals onto quotient vertices.
// Forest mode keeps pair penalties; merged pairs are dropped as connected for
// free. Tree mode sums vertex penalties into the quotient vertex.
ContractionResult contract_edges(const PcInstance& inst, const std::vector<int>& edges);

// PACE-style .td text format.
std::string td_to_string(const TreeDecomposition& td);
TreeDecomposition td_from_string(const std::string& text);

}  // namespace pcsf
