#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcsf/rational.hpp"

namespace pcsf {

struct Edge {
    int u = -1;
    int v = -1;
    Rat length;

    int other(int x) const { return x == u ? v : u; }
};

// Undirected multigraph with exact rational edge lengths. Parallel edges and
// self-loops are representable; self-loops are rejected by validate() unless
// allow_loops is set by the caller.
class WeightedGraph {
  public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n), incident_(n) {}

    int add_vertex();
    int add_edge(int u, int v, Rat length);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[e]; }
    void set_edge_length(int e, Rat length) { edges_[e].length = std::move(length); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return incident_[v]; }

    bool has_parallel_or_loops() const;
    Rat total_length(const std::vector<int>& edge_ids) const;

    // Throws ValidationError on negative lengths, bad endpoints, or a stale
    // adjacency index.
    void validate() const;

    // Simple copy with parallel edges collapsed to minimum length and
    // self-loops dropped; keep[i] is the surviving original edge id for the
    // i-th simplified edge.
    WeightedGraph simplified(std::vector<int>* keep = nullptr) const;

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    int find(int x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

    bool same(int a, int b) const { return find(a) == find(b); }

  private:
    mutable std::vector<int> parent_;
    std::vector<int> rank_;
};

}  // namespace pcsf
