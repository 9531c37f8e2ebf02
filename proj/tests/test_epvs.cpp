#include <doctest.h>

#include <random>
#include <set>

#include "endscope/epvs.hpp"
#include "endscope/zoo.hpp"
#include "oracle.hpp"

using namespace endscope;

TEST_CASE("epvs membership and algebra") {
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs bottom = Epvs::empty_like(ladder);
    bottom.set_strand(0, 0, Upis::all());
    Epvs top = Epvs::empty_like(ladder);
    top.set_strand(0, 1, Upis::all());

    CHECK(bottom.contains(VertexId::Tail_(0, 5, 0)));
    CHECK(!bottom.contains(VertexId::Tail_(0, 5, 1)));
    CHECK((bottom | top).contains(VertexId::Tail_(0, 5, 1)));
    CHECK((bottom & top).is_empty());
    CHECK(!bottom.is_finite());
    Epvs rest = bottom.complement();
    CHECK(rest.core_member(0));
    CHECK(rest.core_member(1));
    CHECK(rest.contains(VertexId::Tail_(0, 3, 1)));
    CHECK(!rest.contains(VertexId::Tail_(0, 3, 0)));

    Epvs fin = Epvs::of_vertices(ladder, {VertexId::Core_(0), VertexId::Tail_(0, 2, 1)});
    CHECK(fin.is_finite());
    CHECK(*fin.size_if_finite() == 2);
    CHECK(*fin.min_vertex() == VertexId::Core_(0));
    CHECK(!fin.complement().is_finite());
}

TEST_CASE("epvs neighbors: single vertices against spec examples") {
    // fan hub: all spine copies
    EpgPresentation fan = zoo_graph("fan");
    Epvs nh = neighbors(fan, VertexId::Core_(0));
    CHECK(nh.strand(0, 0) == Upis::all());
    CHECK(!nh.core_member(0));

    // ray interior vertex
    EpgPresentation ray = zoo_graph("ray");
    Epvs nr = neighbors(ray, VertexId::Tail_(0, 5, 0));
    CHECK(nr == Epvs::of_vertices(
                    ray, {VertexId::Tail_(0, 4, 0), VertexId::Tail_(0, 6, 0)}));

    // ladder rung + rails at copy 3
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs nl = neighbors(ladder, VertexId::Tail_(0, 3, 0));
    CHECK(nl == Epvs::of_vertices(ladder, {VertexId::Tail_(0, 3, 1), VertexId::Tail_(0, 2, 0),
                                           VertexId::Tail_(0, 4, 0)}));
}

TEST_CASE("epvs neighbors agree with unfolding scan across the zoo") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        FiniteGraph g = unfold(pres, 14);
        for (const VertexId& v : g.vertices) {
            if (v.is_tail() && v.copy > 12) continue;  // interior of the unfolding only
            Epvs n = neighbors(pres, v);
            auto expect = testutil::oracle_neighbors(pres, v, 14);
            if (pres.is_hub(v.is_core() ? v.core : -1)) {
                // hubs reach beyond any unfolding; compare the restriction
                for (const VertexId& w : g.vertices) {
                    if (w.is_tail() && w.copy > 12) continue;
                    CHECK(n.contains(w) == (expect.count(w) > 0));
                }
            } else {
                CHECK(n == Epvs::of_vertices(
                              pres, std::vector<VertexId>(expect.begin(), expect.end())));
            }
        }
    }
}

TEST_CASE("epvs randomized algebra sanity") {
    std::mt19937 rng(99);
    EpgPresentation pres = zoo_graph("twostrand");
    for (int trial = 0; trial < 200; ++trial) {
        Epvs a = testutil::random_epvs(pres, rng);
        Epvs b = testutil::random_epvs(pres, rng);
        CHECK((a - b) == (a & b.complement()));
        CHECK((a | b).complement() == (a.complement() & b.complement()));
        CHECK(a.subset_of(a | b));
        CHECK((a & b).subset_of(a));
    }
}
