#include <doctest.h>

#include <map>
#include <stdexcept>
#include <set>

#include "endscope/ends.hpp"
#include "endscope/textio.hpp"
#include "endscope/unfold.hpp"
#include "endscope/zoo.hpp"
#include "oracle.hpp"

using namespace endscope;

namespace {

// Unfolding oracle for the end census: delete cores and everything up to
// cut_depth, count components of unfold(2*cut_depth) that reach the
// boundary. Stabilized counts equal the number of ends.
int64_t oracle_end_count(const EpgPresentation& pres, int64_t cut_depth) {
    FiniteGraph g = unfold(pres, 2 * cut_depth);
    auto keep = [&g](int32_t x) {
        const VertexId& v = g.vertices[static_cast<size_t>(x)];
        return v.is_tail();
    };
    auto comp = finite_components(g, [&](int32_t x) {
        const VertexId& v = g.vertices[static_cast<size_t>(x)];
        return keep(x) && v.copy > cut_depth;
    });
    std::map<int32_t, int64_t> size;
    std::set<int32_t> touches_boundary;
    for (size_t x = 0; x < g.size(); ++x) {
        const VertexId& v = g.vertices[x];
        if (comp[x] < 0) continue;
        ++size[comp[x]];
        if (v.is_tail() && v.copy == 2 * cut_depth) touches_boundary.insert(comp[x]);
    }
    // an end component spans every level beyond the cut; transient pieces
    // are bounded
    int64_t n = 0;
    for (int32_t c : touches_boundary)
        if (size[c] >= cut_depth / 2) ++n;
    return n;
}

}  // namespace

TEST_CASE("end census across the zoo") {
    std::map<std::string, std::pair<int64_t, bool>> expect = {
        // name -> (end count, any dominated)
        {"ray", {1, false}},       {"double_ray", {2, false}},
        {"ladder", {1, false}},    {"comb", {1, false}},
        {"fan", {1, true}},        {"infstar", {0, false}},
        {"twostrand", {2, false}}, {"hubbed_ladder", {1, true}},
    };
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        auto ends = enumerate_ends(pres);
        auto [count, dominated] = expect.at(pres.name);
        CHECK(static_cast<int64_t>(ends.size()) == count);
        bool any_dom = false;
        for (const End& e : ends) {
            require_valid_ray(pres, e.representative);
            if (!e.topological) any_dom = true;
            CHECK(e.topological == e.dominators.empty());
        }
        CHECK(any_dom == dominated);
        // oracle: stabilized deep-component counts
        CHECK(oracle_end_count(pres, 12) == count);
        CHECK(oracle_end_count(pres, 24) == count);
    }
}

TEST_CASE("fan end is dominated by the hub") {
    auto ends = enumerate_ends(zoo_graph("fan"));
    REQUIRE(ends.size() == 1);
    CHECK(ends[0].dominators == std::vector<int32_t>{0});
    CHECK(!ends[0].topological);
}

TEST_CASE("hubbed ladder end is dominated") {
    auto ends = enumerate_ends(zoo_graph("hubbed_ladder"));
    REQUIRE(ends.size() == 1);
    CHECK(ends[0].dominators == std::vector<int32_t>{0});
    CHECK(ends[0].strands == std::vector<int32_t>{0, 1});
}

TEST_CASE("crossing presentation has two ends sharing strand support") {
    EpgPresentation g = parse_presentation(
        "graph crossing\ncore 1\ntail 0 period 2\n"
        "inter 0 0 1\ninter 0 1 0\nattach 0 0 0\nattach 0 0 1\n");
    auto ends = enumerate_ends(g);
    REQUIRE(ends.size() == 2);
    CHECK(ends[0].strands == ends[1].strands);
    CHECK(ends[0].component != ends[1].component);
    for (const auto& e : ends) require_valid_ray(g, e.representative);
}

TEST_CASE("enumerate_ends rejects disconnected presentations") {
    EpgPresentation g = zoo_graph("ray");
    g.tails[0].attach.clear();
    CHECK_THROWS_AS(enumerate_ends(g), std::invalid_argument);
}

TEST_CASE("component_of: spec examples") {
    EpgPresentation ray = zoo_graph("ray");
    auto ends = enumerate_ends(ray);
    REQUIRE(ends.size() == 1);
    // X empty: whole graph
    CHECK(component_of(ray, Epvs::empty_like(ray), ends[0]) == Epvs::all_of(ray));
    // X = {Tail(0,3,0)}: copies >= 4
    Epvs x = Epvs::of_vertices(ray, {VertexId::Tail_(0, 3, 0)});
    Epvs c = component_of(ray, x, ends[0]);
    CHECK(c.strand(0, 0) == Upis::at_least(4));
    CHECK(!c.core_member(0));

    EpgPresentation fan = zoo_graph("fan");
    auto fends = enumerate_ends(fan);
    Epvs xf = Epvs::of_vertices(fan, {VertexId::Core_(0), VertexId::Tail_(0, 0, 0)});
    Epvs cf = component_of(fan, xf, fends[0]);
    CHECK(cf.strand(0, 0) == Upis::at_least(1));
}

TEST_CASE("component_of agrees with unfolding BFS for canonical cuts") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        auto ends = enumerate_ends(pres);
        for (const End& e : ends) {
            for (int64_t k : {3, 7}) {
                // cut: all cores plus copies < k of the end's tail
                Epvs x = Epvs::all_cores(pres);
                for (int32_t i = 0; i < pres.period_of(e.tail); ++i)
                    x.set_strand(e.tail, i, Upis::range(0, k));
                Epvs c = component_of(pres, x, e);
                CHECK(!c.is_finite());
                CHECK(!c.intersects(x));
                // the representative's tail lies inside
                VertexId deep = e.representative.deep_vertex(k + 2);
                CHECK(c.contains(deep));
            }
        }
    }
}

TEST_CASE("closure: spec examples") {
    EpgPresentation ladder = zoo_graph("ladder");
    Epvs bottom = Epvs::empty_like(ladder);
    bottom.set_strand(0, 0, Upis::all());
    auto cl = closure(ladder, bottom);
    CHECK(cl.size() == 1);

    EpgPresentation ray = zoo_graph("ray");
    Epvs fin = Epvs::of_vertices(ray, {VertexId::Tail_(0, 5, 0), VertexId::Core_(0)});
    CHECK(closure(ray, fin).empty());

    EpgPresentation two = zoo_graph("twostrand");
    Epvs strand0 = Epvs::empty_like(two);
    strand0.set_strand(0, 0, Upis::all());
    auto cl2 = closure(two, strand0);
    REQUIRE(cl2.size() == 1);
    CHECK(cl2[0].strands == std::vector<int32_t>{0});
}

TEST_CASE("closure properties: monotone, full set gives all ends") {
    std::mt19937 rng(808);
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        auto ends = enumerate_ends(pres);
        CHECK(closure(pres, Epvs::all_of(pres), ends).size() == ends.size());
        for (int trial = 0; trial < 8; ++trial) {
            Epvs a = testutil::random_epvs(pres, rng);
            Epvs b = a | testutil::random_epvs(pres, rng);
            auto ca = closure(pres, a, ends);
            auto cb = closure(pres, b, ends);
            std::set<int32_t> ids_b;
            for (const auto& e : cb) ids_b.insert(e.id);
            for (const auto& e : ca) CHECK(ids_b.count(e.id) == 1);
        }
    }
}

TEST_CASE("dominators: spec examples and the hub criterion") {
    CHECK(dominators(zoo_graph("ladder"), enumerate_ends(zoo_graph("ladder"))[0]).empty());
    auto fan_ends = enumerate_ends(zoo_graph("fan"));
    CHECK(dominators(zoo_graph("fan"), fan_ends[0]) == std::vector<int32_t>{0});
    auto hl = zoo_graph("hubbed_ladder");
    CHECK(dominators(hl, enumerate_ends(hl)[0]) == std::vector<int32_t>{0});
}

TEST_CASE("dominator oracle: hub-to-spine flow grows with depth") {
    // disjoint-path count between the hub and the end's deep residual must
    // grow without bound exactly for dominating hubs; direct edges suffice
    // as the witness family here
    EpgPresentation hl = zoo_graph("hubbed_ladder");
    auto ends = enumerate_ends(hl);
    REQUIRE(ends.size() == 1);
    for (int64_t n : {10, 20, 40}) {
        // count hub edges into the component beyond depth 2
        int64_t direct = 0;
        for (int64_t k = 2; k <= n; ++k)
            if (ends[0].component.contains(VertexId::Tail_(0, k, 0))) ++direct;
        CHECK(direct >= n - 2);
    }
}

TEST_CASE("closure_of_neighborhood equals domination by a member (Lemma 2.3 shape)") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        auto ends = enumerate_ends(pres);
        // every subset of cores (zoo core counts are tiny)
        int64_t n = pres.core_count;
        for (int64_t mask = 0; mask < (1 << n); ++mask) {
            Epvs w = Epvs::empty_like(pres);
            for (int64_t c = 0; c < n; ++c)
                if (mask & (1 << c)) w.set_core(static_cast<int32_t>(c), true);
            auto via_closure = closure_of_neighborhood(pres, w);
            std::set<int32_t> got;
            for (const auto& e : via_closure) got.insert(e.id);
            std::set<int32_t> want;
            for (const auto& e : ends)
                for (int32_t d : e.dominators)
                    if (w.core_member(d)) want.insert(e.id);
            CHECK(got == want);
        }
    }
}

TEST_CASE("ends live in strictly nested canonical components") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        for (const End& e : enumerate_ends(pres)) {
            Epvs prev = Epvs::all_of(pres);
            for (int64_t k : {2, 5, 9}) {
                Epvs x = Epvs::all_cores(pres);
                for (int32_t t = 0; t < pres.tail_count(); ++t)
                    for (int32_t i = 0; i < pres.period_of(t); ++i)
                        x.set_strand(t, i, Upis::range(0, k));
                Epvs c = component_of(pres, x, e);
                CHECK(c.subset_of(prev));
                CHECK(c != prev);
                prev = c;
            }
        }
    }
}
