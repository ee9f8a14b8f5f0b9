#include "pcsf/steiner.hpp"

#include <algorithm>
#include <sstream>

#include "pcsf/instance.hpp"

namespace pcsf {

ShortestPaths dijkstra(const WeightedGraph& g, int source, const std::vector<char>* edge_allowed) {
    int n = g.vertex_count();
    ShortestPaths sp;
    sp.dist.assign(n, Rat(0));
    sp.reached.assign(n, 0);
    sp.pred_edge.assign(n, -1);
    std::vector<char> done(n, 0);
    sp.reached[source] = 1;
    // O(n^2) scan keeps comparisons exact and the tie rule (lowest id) obvious.
    for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (sp.reached[v] && !done[v] && (u == -1 || sp.dist[v] < sp.dist[u])) u = v;
        if (u == -1) break;
        done[u] = 1;
        for (int e : g.incident(u)) {
            if (edge_allowed && !(*edge_allowed)[e]) continue;
            int w = g.edge(e).other(u);
            if (w == u) continue;
            Rat cand = sp.dist[u] + g.edge(e).length;
            if (!sp.reached[w] || cand < sp.dist[w]) {
                if (done[w]) continue;
                sp.dist[w] = cand;
                sp.reached[w] = 1;
                sp.pred_edge[w] = e;
            }
        }
    }
    return sp;
}

std::vector<int> shortest_path_edges(const WeightedGraph& g, const ShortestPaths& sp, int target) {
    std::vector<int> out;
    int v = target;
    while (sp.pred_edge[v] != -1) {
        int e = sp.pred_edge[v];
        out.push_back(e);
        v = g.edge(e).other(v);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

SteinerSubsets::SteinerSubsets(const WeightedGraph& g, std::vector<int> terminals, int terminal_cap)
    : g_(g), terminals_(std::move(terminals)) {
    int k = static_cast<int>(terminals_.size());
    if (k > terminal_cap) {
        std::ostringstream os;
        os << "Steiner subset engine capped at " << terminal_cap << " terminals, got " << k;
        throw ValidationError(os.str());
    }
    int n = g_.vertex_count();
    from_vertex_.reserve(n);
    for (int v = 0; v < n; ++v) from_vertex_.push_back(dijkstra(g_, v));

    unsigned masks = k > 0 ? (1u << k) : 1u;
    dp_.assign(masks, std::vector<Rat>(n, Rat(0)));
    ok_.assign(masks, std::vector<char>(n, 0));
    choice_.assign(masks, std::vector<Choice>(n));

    for (int i = 0; i < k; ++i) {
        unsigned m = 1u << i;
        const ShortestPaths& sp = from_vertex_[terminals_[i]];
        for (int v = 0; v < n; ++v) {
            if (!sp.reached[v]) continue;
            dp_[m][v] = sp.dist[v];
            ok_[m][v] = 1;
            choice_[m][v] = Choice{Choice::Base, 0, i};
        }
    }

    for (unsigned mask = 1; mask < masks; ++mask) {
        if ((mask & (mask - 1)) == 0) continue;  // singletons are the base case
        // Merge two sub-trees at a shared vertex; singleton splits cover the
        // case of a terminal acting as the attachment point.
        for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
            unsigned rest = mask ^ sub;
            if (sub > rest) continue;  // each split considered once
            for (int v = 0; v < n; ++v) {
                if (!ok_[sub][v] || !ok_[rest][v]) continue;
                Rat cand = dp_[sub][v] + dp_[rest][v];
                if (!ok_[mask][v] || cand < dp_[mask][v]) {
                    dp_[mask][v] = cand;
                    ok_[mask][v] = 1;
                    choice_[mask][v] = Choice{Choice::Merge, sub, -1};
                }
            }
        }
        // Metric closure over the merge values; snapshot so each walk is a
        // single hop from a merge entry.
        std::vector<Rat> merged = dp_[mask];
        std::vector<char> merged_ok = ok_[mask];
        for (int v = 0; v < n; ++v) {
            const ShortestPaths& sp = from_vertex_[v];
            for (int u = 0; u < n; ++u) {
                if (u == v || !merged_ok[u] || !sp.reached[u]) continue;
                Rat cand = merged[u] + sp.dist[u];
                if (!ok_[mask][v] || cand < dp_[mask][v]) {
                    dp_[mask][v] = cand;
                    ok_[mask][v] = 1;
                    choice_[mask][v] = Choice{Choice::Walk, 0, u};
                }
            }
        }
    }
}

bool SteinerSubsets::feasible(unsigned mask) const {
    if (mask == 0) return true;
    int root = terminals_[static_cast<int>(__builtin_ctz(mask))];
    return ok_[mask][root] != 0;
}

Rat SteinerSubsets::length(unsigned mask) const {
    if (mask == 0) return Rat(0);
    int root = terminals_[static_cast<int>(__builtin_ctz(mask))];
    if (!ok_[mask][root]) throw ValidationError("terminal set is not connected in the graph");
    return dp_[mask][root];
}

void SteinerSubsets::collect(unsigned mask, int v, std::vector<int>& edges) const {
    const Choice& c = choice_[mask][v];
    switch (c.kind) {
        case Choice::Base: {
            const ShortestPaths& sp = from_vertex_[terminals_[c.via]];
            for (int e : shortest_path_edges(g_, sp, v)) edges.push_back(e);
            break;
        }
        case Choice::Merge:
            collect(c.sub, v, edges);
            collect(mask ^ c.sub, v, edges);
            break;
        case Choice::Walk: {
            const ShortestPaths& sp = from_vertex_[v];
            for (int e : shortest_path_edges(g_, sp, c.via)) edges.push_back(e);
            collect(mask, c.via, edges);
            break;
        }
        case Choice::None:
            break;
    }
}

std::vector<int> SteinerSubsets::tree_edges(unsigned mask) const {
    std::vector<int> out;
    if (mask == 0 || (mask & (mask - 1)) == 0) return out;  // zero or one terminal
    int root = terminals_[static_cast<int>(__builtin_ctz(mask))];
    if (!ok_[mask][root]) throw ValidationError("terminal set is not connected in the graph");
    std::vector<int> raw;
    collect(mask, root, raw);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

    // Spanning tree of the collected subgraph, then prune non-terminal leaves.
    UnionFind uf(g_.vertex_count());
    std::vector<int> tree;
    for (int e : raw)
        if (uf.unite(g_.edge(e).u, g_.edge(e).v)) tree.push_back(e);
    std::vector<char> is_terminal(g_.vertex_count(), 0);
    for (int i = 0; i < terminal_count(); ++i)
        if (mask & (1u << i)) is_terminal[terminals_[i]] = 1;
    for (;;) {
        std::vector<int> degree(g_.vertex_count(), 0);
        for (int e : tree) {
            ++degree[g_.edge(e).u];
            ++degree[g_.edge(e).v];
        }
        bool removed = false;
        std::vector<int> next;
        for (int e : tree) {
            int u = g_.edge(e).u, v = g_.edge(e).v;
            if ((degree[u] == 1 && !is_terminal[u]) || (degree[v] == 1 && !is_terminal[v])) {
                removed = true;
            } else {
                next.push_back(e);
            }
        }
        tree.swap(next);
        if (!removed) break;
    }
    return tree;
}

SteinerTree dreyfus_wagner(const WeightedGraph& g, const std::vector<int>& terminals,
                           int terminal_cap) {
    SteinerTree out;
    std::vector<int> distinct = terminals;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() <= 1) {
        out.feasible = true;
        out.length = 0;
        return out;
    }
    SteinerSubsets engine(g, distinct, terminal_cap);
    unsigned full = (1u << distinct.size()) - 1;
    if (!engine.feasible(full)) return out;
    out.feasible = true;
    out.edges = engine.tree_edges(full);
    out.length = g.total_length(out.edges);
    // The pruned tree must still realize the DP optimum.
    if (out.length != engine.length(full))
        throw ValidationError("Steiner reconstruction disagrees with the table value");
    return out;
}

}  // namespace pcsf
