#include <doctest.h>

#include <random>
#include <stdexcept>

#include "endscope/ends.hpp"
#include "endscope/envelope.hpp"
#include "endscope/unfold.hpp"
#include "endscope/zoo.hpp"
#include "oracle.hpp"

using namespace endscope;

TEST_CASE("finite_adhesion: ladder bottom rail fails with the top-rail witness") {
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs bottom = Epvs::empty_like(ladder);
    bottom.set_strand(0, 0, Upis::all());
    AdhesionReport rep = finite_adhesion(ladder, bottom);
    CHECK(!rep.finite_adhesion);
    REQUIRE(rep.witness.has_value());
    // witness component carries the top rail, its neighborhood is infinite
    CHECK(!rep.witness->first.strand(0, 1).is_finite());
    CHECK(!rep.witness->second.is_finite());
    // oracle: |N(C)| grows with the unfolding depth
    for (int64_t n : {20, 40, 80}) {
        FiniteGraph g = unfold(ladder, n);
        int64_t count = 0;
        for (const VertexId& v : g.vertices)
            if (rep.witness->second.contains(v)) ++count;
        CHECK(count >= n);
    }
}

TEST_CASE("finite_adhesion: finite sets and infstar leaves") {
    EpgPresentation ray = zoo_graph("ray");
    Epvs fin = Epvs::of_vertices(ray, {VertexId::Tail_(0, 4, 0)});
    CHECK(finite_adhesion(ray, fin).finite_adhesion);

    EpgPresentation star = zoo_graph("infstar");
    Epvs leaves = Epvs::empty_like(star);
    leaves.set_strand(0, 0, Upis::all());
    AdhesionReport rep = finite_adhesion(star, leaves);
    CHECK(!rep.finite_adhesion);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->first.core_member(0));
}

TEST_CASE("components_of_complement: spec examples") {
    EpgPresentation fan = zoo_graph("fan");
    auto parts = components_of_complement(fan, Epvs::of_vertices(fan, {VertexId::Core_(0)}));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].vertices.strand(0, 0).is_all());
}

TEST_CASE("envelope: infstar leaves absorb the hub") {
    EpgPresentation star = zoo_graph("infstar");
    Epvs leaves = Epvs::empty_like(star);
    leaves.set_strand(0, 0, Upis::all());
    Epvs e = envelope(star, leaves);
    CHECK(e == Epvs::all_of(star));
}

TEST_CASE("envelope: ladder bottom rail reaches an envelope with one end") {
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs bottom = Epvs::empty_like(ladder);
    bottom.set_strand(0, 0, Upis::all());
    Epvs e = envelope(ladder, bottom);
    CHECK(bottom.subset_of(e));
    auto check = verify_envelope(ladder, bottom, e);
    CAPTURE(check.message);
    CHECK(check.ok());
    CHECK(closure(ladder, e).size() == 1);
}

TEST_CASE("envelope: even copies of the ray force the whole ray") {
    EpgPresentation ray = zoo_graph("ray");
    Epvs evens = Epvs::empty_like(ray);
    evens.set_strand(0, 0, Upis::arithmetic(0, 2));
    Epvs e = envelope(ray, evens);
    CHECK(e.strand(0, 0).is_all());
}

TEST_CASE("envelope: a finite set is its own envelope candidate") {
    EpgPresentation fan = zoo_graph("fan");
    Epvs u = Epvs::of_vertices(fan, {VertexId::Tail_(0, 0, 0)});
    Epvs e = envelope(fan, u);
    CHECK(u.subset_of(e));
    CHECK(e.is_finite());
    auto check = verify_envelope(fan, u, e);
    CAPTURE(check.message);
    CHECK(check.ok());
}

TEST_CASE("envelope rejects empty input and disconnected graphs") {
    EpgPresentation ray = zoo_graph("ray");
    CHECK_THROWS_AS(envelope(ray, Epvs::empty_like(ray)), std::invalid_argument);
    EpgPresentation g = zoo_graph("ray");
    g.tails[0].attach.clear();
    Epvs u = Epvs::of_vertices(g, {VertexId::Core_(0)});
    CHECK_THROWS_AS(envelope(g, u), std::invalid_argument);
}

TEST_CASE("envelope postconditions hold for randomized sets across the zoo") {
    std::mt19937 rng(20240818);
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        for (int trial = 0; trial < 10; ++trial) {
            Epvs u = testutil::random_epvs(pres, rng);
            if (u.is_empty()) continue;
            Epvs e = envelope(pres, u);
            auto check = verify_envelope(pres, u, e);
            CAPTURE(pres.name);
            CAPTURE(u.to_string());
            CAPTURE(check.message);
            REQUIRE(check.ok());
            // idempotence-shaped property: the envelope of the envelope still
            // satisfies the postconditions with respect to the original set
            Epvs e2 = envelope(pres, e);
            auto check2 = verify_envelope(pres, u, e2);
            CAPTURE(check2.message);
            REQUIRE(check2.ok());
        }
    }
}
