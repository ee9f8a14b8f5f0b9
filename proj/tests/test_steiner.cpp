#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcsf/rng.hpp"
#include "pcsf/steiner.hpp"

using namespace pcsf;

TEST_CASE("two terminals reduce to a shortest path") {
    WeightedGraph g(4);  // path 0-1-2-3 plus a shortcut 0-3
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    g.add_edge(2, 3, Rat(1));
    g.add_edge(0, 3, Rat(5));
    SteinerTree st = dreyfus_wagner(g, {0, 3});
    REQUIRE(st.feasible);
    CHECK(st.length == Rat(3));
    CHECK(st.edges == std::vector<int>{0, 1, 2});
}

TEST_CASE("unit triangle with three terminals costs 2") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    g.add_edge(2, 0, Rat(1));
    SteinerTree st = dreyfus_wagner(g, {0, 1, 2});
    REQUIRE(st.feasible);
    CHECK(st.length == Rat(2));
    CHECK(st.edges.size() == 2);
}

TEST_CASE("single terminal: empty tree") {
    WeightedGraph g(2);
    g.add_edge(0, 1, Rat(1));
    SteinerTree st = dreyfus_wagner(g, {1});
    REQUIRE(st.feasible);
    CHECK(st.length == 0);
    CHECK(st.edges.empty());
}

TEST_CASE("steiner point gets used") {
    // Star: center 4 with unit spokes to 0,1,2; direct edges cost 3.
    WeightedGraph g(5);
    g.add_edge(0, 4, Rat(1));
    g.add_edge(1, 4, Rat(1));
    g.add_edge(2, 4, Rat(1));
    g.add_edge(0, 1, Rat(3));
    g.add_edge(1, 2, Rat(3));
    SteinerTree st = dreyfus_wagner(g, {0, 1, 2});
    REQUIRE(st.feasible);
    CHECK(st.length == Rat(3));
    CHECK(st.edges == std::vector<int>{0, 1, 2});
}

TEST_CASE("disconnected terminals are infeasible") {
    WeightedGraph g(4);
    g.add_edge(0, 1, Rat(1));
    g.add_edge(2, 3, Rat(1));
    SteinerTree st = dreyfus_wagner(g, {0, 2});
    CHECK(!st.feasible);
}

namespace {

// Exact Steiner tree by spanning-subtree enumeration over edge subsets.
Rat steiner_by_edge_subsets(const WeightedGraph& g, const std::vector<int>& terminals) {
    int m = g.edge_count();
    bool found = false;
    Rat best = 0;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        UnionFind uf(g.vertex_count());
        Rat len = 0;
        bool acyclic = true;
        for (int e = 0; e < m && acyclic; ++e)
            if (mask & (1ul << e)) {
                if (!uf.unite(g.edge(e).u, g.edge(e).v)) acyclic = false;
                len += g.edge(e).length;
            }
        if (!acyclic) continue;
        bool connected = true;
        for (std::size_t i = 1; i < terminals.size(); ++i)
            if (!uf.same(terminals[0], terminals[i])) {
                connected = false;
                break;
            }
        if (!connected) continue;
        if (!found || len < best) {
            best = len;
            found = true;
        }
    }
    REQUIRE(found);
    return best;
}

}  // namespace

TEST_CASE("random graphs agree with edge-subset enumeration") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.range(2, 6));
        WeightedGraph g(n);
        // Spanning path so every terminal set is feasible.
        for (int v = 1; v < n; ++v) g.add_edge(v - 1, v, rng.small_positive(9, 4));
        while (g.edge_count() < n + 2 && g.edge_count() < 12) {
            int u = static_cast<int>(rng.range(0, n - 1));
            int v = static_cast<int>(rng.range(0, n - 1));
            if (u != v) g.add_edge(u, v, rng.small_positive(9, 4));
        }
        int k = static_cast<int>(rng.range(2, std::min(n, 4)));
        std::vector<int> terms;
        for (int i = 0; i < k; ++i) terms.push_back(static_cast<int>(rng.range(0, n - 1)));
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        if (terms.size() < 2) continue;
        SteinerTree st = dreyfus_wagner(g, terms);
        REQUIRE(st.feasible);
        CHECK(st.length == steiner_by_edge_subsets(g, terms));
        CHECK(g.total_length(st.edges) == st.length);
    }
}
