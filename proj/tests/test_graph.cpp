#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcsf/graph.hpp"

using namespace pcsf;

TEST_CASE("rational parsing is exact") {
    CHECK(rat_parse("2") == Rat(2));
    CHECK(rat_parse("0.5") == rat_frac(1, 2));
    CHECK(rat_parse("3/2") == rat_frac(3, 2));
    CHECK(rat_parse("-0.25") == rat_frac(-1, 4));
    CHECK(rat_parse("10.00") == Rat(10));
    CHECK(rat_str(rat_parse("0.5")) == "1/2");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK_THROWS_AS(rat_parse("abc"), ParseError);
    CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
    CHECK_THROWS_AS(rat_parse(""), ParseError);
}

TEST_CASE("graph validation") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rat(2));
    g.add_edge(1, 2, rat_frac(1, 3));
    CHECK_NOTHROW(g.validate());
    CHECK(g.total_length({0, 1}) == rat_frac(7, 3));

    WeightedGraph bad(2);
    bad.add_edge(0, 1, Rat(-1));
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("simplified collapses parallel edges to the minimum") {
    WeightedGraph g(3);
    g.add_edge(0, 1, Rat(5));
    g.add_edge(1, 0, Rat(2));
    g.add_edge(1, 1, Rat(1));  // loop goes away
    g.add_edge(1, 2, Rat(4));
    std::vector<int> keep;
    WeightedGraph s = g.simplified(&keep);
    REQUIRE(s.edge_count() == 2);
    CHECK(s.edge(0).length == Rat(2));
    CHECK(keep[0] == 1);
    CHECK(s.edge(1).length == Rat(4));
    CHECK(keep[1] == 3);
}

TEST_CASE("union-find") {
    UnionFind uf(4);
    CHECK(uf.unite(0, 1));
    CHECK(!uf.unite(1, 0));
    CHECK(uf.same(0, 1));
    CHECK(!uf.same(0, 2));
}
