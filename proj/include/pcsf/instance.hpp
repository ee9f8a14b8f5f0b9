#pragma once

#include <optional>
#include <vector>

#include "pcsf/graph.hpp"

namespace pcsf {

struct TerminalPair {
    int s = -1;
    int t = -1;
    Rat penalty;
};

enum class InstanceKind { Forest, Tree };

// Rotation system: per vertex, the cyclic counterclockwise order of incident
// darts. Dart 2*e leaves edge(e).u, dart 2*e+1 leaves edge(e).v.
using Rotation = std::vector<std::vector<int>>;

// Records how a normalized instance maps back onto the original one.
struct Normalization {
    bool from_tree = false;
    int original_n = 0;
    std::vector<int> copy_of;             // vertex in normalized graph -> original vertex
    std::vector<int> pair_source_vertex;  // tree mode only: pair index -> penalized vertex
};

struct PcInstance {
    WeightedGraph graph;
    InstanceKind kind = InstanceKind::Forest;
    std::vector<TerminalPair> pairs;   // forest mode
    int root = -1;                     // tree mode
    std::vector<Rat> vertex_penalty;   // tree mode, size n
    bool normalized = false;
    std::optional<Rotation> rotation;
    std::optional<Normalization> normalization;

    Rat penalty_sum() const;
    void validate() const;
};

struct SolutionForest {
    std::vector<int> edges;  // ids into the instance graph
    Rat length;
    Rat penalty;
    Rat cost;
};

// Length/Penalty/Cost of an edge set; connectivity via union-find.
SolutionForest evaluate(const PcInstance& inst, const std::vector<int>& edge_ids);

// Moves every terminal occurrence onto its own zero-length degree-1 pendant;
// rewrites tree instances as forest instances with one pair per penalized
// vertex, each paired against a fresh zero-length pendant of the root.
// Total function; objective values are preserved exactly.
PcInstance normalize_terminals(const PcInstance& inst);

}  // namespace pcsf
