#include <doctest.h>

#include <set>

#include "endscope/unfold.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

TEST_CASE("unfold: ray depth 3 is a path on 5 vertices") {
    FiniteGraph g = unfold(zoo_graph("ray"), 3);
    CHECK(g.size() == 5);
    CHECK(g.edge_count() == 4);
    int32_t last = g.find(VertexId::Tail_(0, 3, 0));
    CHECK(g.boundary[static_cast<size_t>(last)]);
    int32_t mid = g.find(VertexId::Tail_(0, 1, 0));
    CHECK(!g.boundary[static_cast<size_t>(mid)]);
}

TEST_CASE("unfold: fan depth 2") {
    FiniteGraph g = unfold(zoo_graph("fan"), 2);
    CHECK(g.size() == 4);  // h + a0..a2
    // h adjacent to a0,a1,a2 plus path edges a0-a1-a2
    CHECK(g.edge_count() == 5);
    int32_t h = g.find(VertexId::Core_(0));
    CHECK(g.boundary[static_cast<size_t>(h)]);
}

TEST_CASE("unfold: ladder depth 10 counts") {
    EpgPresentation ladder = zoo_graph("ladder");
    FiniteGraph g = unfold(ladder, 10);
    CHECK(g.size() == 2 + 22);
    const TailSpec& t = ladder.tails[0];
    int64_t expect = static_cast<int64_t>(t.intra.size()) * 11 +
                     static_cast<int64_t>(t.inter.size()) * 10 +
                     static_cast<int64_t>(t.attach.size());
    CHECK(g.edge_count() == expect);
}

TEST_CASE("unfold(n) is an induced subgraph of unfold(n+1)") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        for (int64_t n : {0, 3, 7}) {
            FiniteGraph small = unfold(pres, n);
            FiniteGraph big = unfold(pres, n + 1);
            for (size_t x = 0; x < small.size(); ++x) {
                const VertexId& v = small.vertices[x];
                int32_t y = big.find(v);
                REQUIRE(y >= 0);
                // edges within the smaller vertex set must coincide
                std::set<VertexId> se, be;
                for (int32_t w : small.adj[x]) se.insert(small.vertices[static_cast<size_t>(w)]);
                for (int32_t w : big.adj[static_cast<size_t>(y)]) {
                    const VertexId& u = big.vertices[static_cast<size_t>(w)];
                    if (small.find(u) >= 0) be.insert(u);
                }
                CHECK(se == be);
            }
        }
    }
}
