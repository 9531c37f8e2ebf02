#include <doctest.h>

#include <stdexcept>

#include "endscope/spanning_tree.hpp"
#include "endscope/verify.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

TEST_CASE("spanning tree: the ray is its own tree with one certificate") {
    EpgPresentation ray = zoo_graph("ray");
    SpanningTreePrefix st = build_spanning_tree(ray, 6, 40);
    CHECK(st.root == VertexId::Core_(0));
    REQUIRE(st.ray_certificates.size() == 1);
    // the certificate follows the ray itself
    const auto& cert = st.ray_certificates[0].ray;
    REQUIRE(cert.size() >= 2);
    CHECK(cert.front() == VertexId::Core_(0));
    for (size_t i = 1; i < cert.size(); ++i) CHECK(adjacent(ray, cert[i - 1], cert[i]));
    auto rep = check_end_faithful(ray, st);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("spanning tree: comb keeps one certificate on the spine direction") {
    EpgPresentation comb = zoo_graph("comb");
    SpanningTreePrefix st = build_spanning_tree(comb, 6, 40);
    REQUIRE(st.ray_certificates.size() == 1);
    auto rep = check_end_faithful(comb, st);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("spanning tree: fan spans everything with no certificates") {
    EpgPresentation fan = zoo_graph("fan");
    SpanningTreePrefix st = build_spanning_tree(fan, 4, 40);
    CHECK(st.ray_certificates.empty());
    CHECK(st.spans == Epvs::all_of(fan));
    auto rep = check_end_faithful(fan, st);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
}

TEST_CASE("spanning tree: horizon too small is an explicit error") {
    EpgPresentation ray = zoo_graph("ray");
    CHECK_THROWS_WITH_AS(build_spanning_tree(ray, 6, 2), doctest::Contains("horizon"),
                         std::invalid_argument);
}

TEST_CASE("spanning tree: every zoo graph verifies at depth 5, horizon 40") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        SpanningTreePrefix st = build_spanning_tree(pres, 5, 40);
        auto rep = check_end_faithful(pres, st);
        CAPTURE(rep.summary());
        CHECK(rep.pass);
    }
}

TEST_CASE("spanning tree: trees nest as the depth grows") {
    EpgPresentation two = zoo_graph("twostrand");
    SpanningTreePrefix a = build_spanning_tree(two, 3, 40);
    SpanningTreePrefix b = build_spanning_tree(two, 5, 40);
    auto pb = b.parent_map();
    for (const auto& [child, parent] : a.edges) {
        auto it = pb.find(child);
        REQUIRE(it != pb.end());
        CHECK(it->second == parent);
    }
}
