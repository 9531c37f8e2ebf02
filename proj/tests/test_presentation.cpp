#include <doctest.h>

#include <stdexcept>

#include "endscope/presentation.hpp"
#include "endscope/textio.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

TEST_CASE("validate: zoo graphs are valid and connected") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        ValidationReport rep = validate(pres);
        CHECK(rep.structurally_valid);
        CHECK(rep.connected);
    }
}

TEST_CASE("validate: ray without attach edge is valid but disconnected") {
    EpgPresentation g = zoo_graph("ray");
    g.tails[0].attach.clear();
    ValidationReport rep = validate(g);
    CHECK(rep.structurally_valid);
    CHECK(!rep.connected);
}

TEST_CASE("validate: hub stride zero is rejected") {
    EpgPresentation g = zoo_graph("fan");
    g.tails[0].hubs[0].stride = 0;
    ValidationReport rep = validate(g);
    CHECK(!rep.structurally_valid);
}

TEST_CASE("validate: duplicate and out-of-range edges are reported") {
    EpgPresentation g = zoo_graph("ladder");
    g.core_edges = {{0, 1}, {1, 0}};
    CHECK(!validate(g).structurally_valid);

    g = zoo_graph("ladder");
    g.tails[0].intra.push_back({0, 5});
    CHECK(!validate(g).structurally_valid);

    g = zoo_graph("fan");
    g.tails[0].attach.push_back({0, 0});  // duplicates the hub edge at copy 0
    CHECK(!validate(g).structurally_valid);
}

TEST_CASE("presentation text round trip over the zoo") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        EpgPresentation back = parse_presentation(emit_presentation(pres));
        CHECK(back == pres);
    }
}

TEST_CASE("parser errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_presentation("graph g\ncore 1\nhub 0 0 0 0 0\n"),
                         doctest::Contains("line 3"), std::invalid_argument);
    // tail referenced before declaration
    CHECK_THROWS_WITH_AS(parse_presentation("graph g\ncore 1\nintra 0 0 1\ntail 0 period 2\n"),
                         doctest::Contains("forward reference"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_presentation("graph g\ncore 1\nbogus 1 2\n"),
                         doctest::Contains("unknown directive"), std::invalid_argument);
}

TEST_CASE("vertex set syntax round trip") {
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs s = parse_vertex_set(ladder, "cores: 0; strand 0 0: 1,3..5,8+2k; strand 0 1: >=4");
    CHECK(s.core_member(0));
    CHECK(!s.core_member(1));
    CHECK(s.strand(0, 0).contains(1));
    CHECK(s.strand(0, 0).contains(4));
    CHECK(s.strand(0, 0).contains(10));
    CHECK(!s.strand(0, 0).contains(9));
    CHECK(s.strand(0, 1) == Upis::at_least(4));

    Epvs back = parse_vertex_set(ladder, emit_vertex_set(s));
    CHECK(back == s);
}

TEST_CASE("vertex literal parsing") {
    CHECK(parse_vertex("c2") == VertexId::Core_(2));
    CHECK(parse_vertex("0.15.1") == VertexId::Tail_(0, 15, 1));
    CHECK_THROWS_AS(parse_vertex("zzz"), std::invalid_argument);
}
