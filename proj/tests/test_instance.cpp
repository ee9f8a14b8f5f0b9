#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcsf/brute_force.hpp"
#include "pcsf/instance.hpp"
#include "pcsf/rng.hpp"

using namespace pcsf;

namespace {

PcInstance k2(const Rat& len, const Rat& pi) {
    PcInstance inst;
    inst.graph = WeightedGraph(2);
    inst.graph.add_edge(0, 1, len);
    inst.pairs.push_back(TerminalPair{0, 1, pi});
    return inst;
}

}  // namespace

TEST_CASE("evaluate on K2") {
    PcInstance inst = k2(Rat(2), Rat(6));
    SolutionForest with_edge = evaluate(inst, {0});
    CHECK(with_edge.cost == Rat(2));
    CHECK(with_edge.penalty == Rat(0));
    SolutionForest empty = evaluate(inst, {});
    CHECK(empty.cost == Rat(6));
    CHECK(empty.length == Rat(0));
    CHECK_THROWS_AS(evaluate(inst, {5}), ValidationError);
}

TEST_CASE("evaluate: everything connected pays nothing") {
    PcInstance inst;
    inst.graph = WeightedGraph(3);
    inst.graph.add_edge(0, 1, Rat(1));
    inst.graph.add_edge(1, 2, Rat(1));
    inst.pairs.push_back(TerminalPair{0, 2, Rat(9)});
    inst.pairs.push_back(TerminalPair{0, 1, Rat(4)});
    SolutionForest all = evaluate(inst, {0, 1});
    CHECK(all.penalty == 0);
    CHECK(all.cost == Rat(2));
    CHECK(all.cost == all.length + all.penalty);
}

TEST_CASE("normalize_terminals moves terminals onto zero pendants") {
    PcInstance inst;
    inst.graph = WeightedGraph(4);  // star around 0
    inst.graph.add_edge(0, 1, Rat(1));
    inst.graph.add_edge(0, 2, Rat(1));
    inst.graph.add_edge(0, 3, Rat(1));
    inst.pairs.push_back(TerminalPair{0, 2, Rat(5)});
    PcInstance norm = normalize_terminals(inst);
    REQUIRE(norm.pairs.size() == 1);
    int s = norm.pairs[0].s, t = norm.pairs[0].t;
    CHECK(s != 0);  // degree-3 vertex got a pendant
    CHECK(norm.graph.incident(s).size() == 1);
    CHECK(norm.graph.incident(t).size() == 1);
    CHECK(norm.graph.edge(norm.graph.incident(s)[0]).length == 0);
    // Idempotent.
    PcInstance again = normalize_terminals(norm);
    CHECK(again.graph.vertex_count() == norm.graph.vertex_count());
    CHECK(again.graph.edge_count() == norm.graph.edge_count());
    CHECK(again.pairs.size() == norm.pairs.size());
    CHECK(again.pairs[0].s == norm.pairs[0].s);
    CHECK(again.pairs[0].t == norm.pairs[0].t);
}

TEST_CASE("pcst to pcsf conversion uses distinct root pendants") {
    PcInstance inst;
    inst.graph = WeightedGraph(3);
    inst.graph.add_edge(0, 1, Rat(1));
    inst.graph.add_edge(1, 2, Rat(1));
    inst.kind = InstanceKind::Tree;
    inst.root = 0;
    inst.vertex_penalty = {Rat(0), Rat(3), Rat(2)};
    PcInstance norm = normalize_terminals(inst);
    REQUIRE(norm.pairs.size() == 2);
    CHECK(norm.kind == InstanceKind::Forest);
    CHECK(norm.pairs[0].t != norm.pairs[1].t);  // distinct pendants of the root
    // Both pendants hang off the root.
    for (const auto& p : norm.pairs) {
        int pend = p.t;
        REQUIRE(norm.graph.incident(pend).size() == 1);
        const Edge& e = norm.graph.edge(norm.graph.incident(pend)[0]);
        CHECK(e.other(pend) == 0);
        CHECK(e.length == 0);
    }
}

TEST_CASE("normalization preserves brute-force optimum") {
    Rng rng(20260810);
    for (int trial = 0; trial < 40; ++trial) {
        PcInstance inst;
        int n = static_cast<int>(rng.range(2, 5));
        inst.graph = WeightedGraph(n);
        int m = static_cast<int>(rng.range(1, 8));
        for (int i = 0; i < m; ++i) {
            int u = static_cast<int>(rng.range(0, n - 1));
            int v = static_cast<int>(rng.range(0, n - 1));
            if (u == v) continue;
            inst.graph.add_edge(u, v, rng.small_positive(6, 3));
        }
        if (rng.chance(1, 2)) {
            int p = static_cast<int>(rng.range(1, 3));
            for (int i = 0; i < p; ++i) {
                int s = static_cast<int>(rng.range(0, n - 1));
                int t = static_cast<int>(rng.range(0, n - 1));
                if (s == t) continue;
                inst.pairs.push_back(TerminalPair{s, t, rng.small_positive(8, 2)});
            }
        } else {
            inst.kind = InstanceKind::Tree;
            inst.root = 0;
            inst.vertex_penalty.assign(n, Rat(0));
            for (int v = 1; v < n; ++v)
                if (rng.chance(1, 2)) inst.vertex_penalty[v] = rng.small_positive(8, 2);
        }
        if (inst.graph.edge_count() > 10) continue;
        PcInstance norm = normalize_terminals(inst);
        SolutionForest before = brute_force_pcsf(inst);
        SolutionForest after = brute_force_pcsf(norm);
        CHECK(before.cost == after.cost);
    }
}
