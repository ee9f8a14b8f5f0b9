#pragma once

#include <vector>

#include "pcsf/graph.hpp"

namespace pcsf {

struct ShortestPaths {
    std::vector<Rat> dist;
    std::vector<char> reached;
    std::vector<int> pred_edge;  // edge id used to enter each vertex, -1 at source
};

// Exact-rational Dijkstra; edge_allowed restricts the usable edge set.
ShortestPaths dijkstra(const WeightedGraph& g, int source,
                       const std::vector<char>* edge_allowed = nullptr);

// Edge ids of a shortest source->target path (empty when target == source).
std::vector<int> shortest_path_edges(const WeightedGraph& g, const ShortestPaths& sp, int target);

// Dreyfus-Wagner subset dynamic program. One run answers the minimum Steiner
// tree for every nonempty subset of the given terminals.
class SteinerSubsets {
  public:
    SteinerSubsets(const WeightedGraph& g, std::vector<int> terminals, int terminal_cap = 10);

    int terminal_count() const { return static_cast<int>(terminals_.size()); }
    bool feasible(unsigned mask) const;
    Rat length(unsigned mask) const;
    // Edge ids of an optimal tree spanning the masked terminals; pruned to a
    // tree whose non-terminal leaves are removed.
    std::vector<int> tree_edges(unsigned mask) const;

  private:
    struct Choice {
        enum Kind { None, Base, Merge, Walk } kind = None;
        unsigned sub = 0;  // Merge: submask
        int via = -1;      // Base: terminal index; Walk: intermediate vertex
    };

    void collect(unsigned mask, int v, std::vector<int>& edges) const;

    const WeightedGraph& g_;
    std::vector<int> terminals_;
    std::vector<ShortestPaths> from_vertex_;          // per-vertex shortest path trees
    std::vector<std::vector<Rat>> dp_;                // [mask][v]
    std::vector<std::vector<char>> ok_;               // [mask][v]
    std::vector<std::vector<Choice>> choice_;         // [mask][v]
};

// Convenience wrapper: exact minimum Steiner tree for one terminal set.
struct SteinerTree {
    bool feasible = false;
    Rat length;
    std::vector<int> edges;
};
SteinerTree dreyfus_wagner(const WeightedGraph& g, const std::vector<int>& terminals,
                           int terminal_cap = 10);

}  // namespace pcsf
