#include <doctest.h>

#include "endscope/verify.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

// Fault injection: every checker must reject each mutation of a valid
// certificate with a concrete witness.

TEST_CASE("fault injection: td axioms") {
    EpgPresentation ladder = zoo_graph("ladder");
    TreeDecompositionPrefix good = build_tree_decomposition(ladder, 5);
    REQUIRE(check_td_axioms(ladder, good, 40).pass);

    int failures_detected = 0;
    auto expect_fail = [&](TreeDecompositionPrefix td) {
        Report rep = check_td_axioms(ladder, td, 40);
        CHECK(!rep.pass);
        CHECK(!rep.witnesses.empty());
        if (!rep.pass) ++failures_detected;
    };

    // (T1): delete a vertex from every part that holds it
    for (int64_t victim_copy : {1, 2, 3}) {
        TreeDecompositionPrefix bad = good;
        VertexId victim = VertexId::Tail_(0, victim_copy, 0);
        for (TdNode& node : bad.nodes) node.bag.erase(victim);
        expect_fail(bad);
    }
    // (T2): evict one endpoint from every bag housing a given rung edge
    for (int64_t copy : {1, 2, 3}) {
        TreeDecompositionPrefix bad = good;
        VertexId u = VertexId::Tail_(0, copy, 0), v = VertexId::Tail_(0, copy, 1);
        for (TdNode& node : bad.nodes)
            if (node.bag.contains(u) && node.bag.contains(v)) node.bag.erase(v);
        expect_fail(bad);
    }
    // (T3): claim a far-away vertex inside two distant bags
    for (int64_t far : {30, 31, 32}) {
        TreeDecompositionPrefix bad = good;
        VertexId ghost = VertexId::Tail_(0, far, 0);
        bad.nodes[1].bag.insert(ghost);
        bad.nodes.back().bag.insert(ghost);
        expect_fail(bad);
    }
    // infinite separator
    {
        TreeDecompositionPrefix bad = good;
        bad.nodes[1].separator.set_strand(0, 0, Upis::all());
        expect_fail(bad);
    }
    CHECK(failures_detected >= 10);
}

TEST_CASE("fault injection: upwards disjoint separators") {
    EpgPresentation ray = zoo_graph("ray");
    TreeDecompositionPrefix good = build_tree_decomposition(ray, 6);
    REQUIRE(check_upwards_disjoint(ray, good, 40).pass);

    int detected = 0;
    for (size_t child = 2; child < good.nodes.size() && detected < 10; ++child) {
        TreeDecompositionPrefix bad = good;
        // copy a vertex of an ancestor separator into a descendant separator
        const TdNode& anc = bad.nodes[1];
        auto wit = anc.separator.min_vertex();
        REQUIRE(wit.has_value());
        bad.nodes[child].separator.insert(*wit);
        Report rep = check_upwards_disjoint(ray, bad, 40);
        CHECK(!rep.pass);
        CHECK(!rep.witnesses.empty());
        if (!rep.pass) ++detected;
    }
    CHECK(detected >= 4);

    // single-edge tree passes vacuously
    TreeDecompositionPrefix tiny = build_tree_decomposition(zoo_graph("fan"), 2);
    CHECK(check_upwards_disjoint(zoo_graph("fan"), tiny, 40).pass);
}

TEST_CASE("fault injection: display table") {
    EpgPresentation dr = zoo_graph("double_ray");
    TreeDecompositionPrefix good = build_tree_decomposition(dr, 5);
    REQUIRE(check_display(dr, good).pass);

    int detected = 0;
    auto expect_fail = [&](TreeDecompositionPrefix td) {
        Report rep = check_display(dr, td);
        CHECK(!rep.pass);
        if (!rep.pass) ++detected;
    };
    {  // duplicated end entry
        TreeDecompositionPrefix bad = good;
        bad.display.push_back(bad.display[0]);
        expect_fail(bad);
    }
    {  // dropped end entry
        TreeDecompositionPrefix bad = good;
        bad.display.pop_back();
        expect_fail(bad);
    }
    {  // two ends claiming one chain
        TreeDecompositionPrefix bad = good;
        bad.display[1].node_chain = bad.display[0].node_chain;
        bad.display[1].end_id = good.display[1].end_id;
        expect_fail(bad);
    }
    {  // chain through the wrong branch
        TreeDecompositionPrefix bad = good;
        std::swap(bad.display[0].node_chain, bad.display[1].node_chain);
        expect_fail(bad);
    }
    {  // unknown end id
        TreeDecompositionPrefix bad = good;
        bad.display[0].end_id = 99;
        expect_fail(bad);
    }
    {  // chain that is not a rooted path
        TreeDecompositionPrefix bad = good;
        std::reverse(bad.display[0].node_chain.begin(), bad.display[0].node_chain.end());
        expect_fail(bad);
    }
    CHECK(detected == 6);

    // dominated-end mutations on the fan
    EpgPresentation fan = zoo_graph("fan");
    TreeDecompositionPrefix fgood = build_tree_decomposition(fan, 4);
    REQUIRE(check_display(fan, fgood).pass);
    {
        TreeDecompositionPrefix bad = fgood;
        bad.dominated.clear();  // missing dominated entry
        CHECK(!check_display(fan, bad).pass);
    }
    {
        TreeDecompositionPrefix bad = fgood;
        bad.dominated[0].node = 0;  // wrong stabilization node
        CHECK(!check_display(fan, bad).pass);
    }
    {
        TreeDecompositionPrefix bad = fgood;
        // a dominated end pretending to be displayed
        bad.display.push_back({bad.dominated[0].end_id, {1}});
        CHECK(!check_display(fan, bad).pass);
    }
}

TEST_CASE("nested chains: canonical chains verify, mutations fail") {
    EpgPresentation ray = zoo_graph("ray");
    auto ends = enumerate_ends(ray);
    REQUIRE(ends.size() == 1);

    std::vector<std::pair<Epvs, Epvs>> chain;
    for (int64_t k : {0, 3, 6}) {
        Epvs x = Epvs::empty_like(ray);
        if (k == 0)
            x.set_core(0, true);
        else
            x.insert(VertexId::Tail_(0, k, 0));
        Epvs c = Epvs::empty_like(ray);
        c.set_strand(0, 0, Upis::at_least(k + 1));
        if (k == 0) c.set_strand(0, 0, Upis::at_least(1) | Upis::singleton(0));
        chain.push_back({x, c});
    }
    Report rep = check_nested_chain(ray, chain);
    CAPTURE(rep.summary());
    CHECK(rep.pass);

    {  // overlapping cuts
        auto bad = chain;
        bad[1].first.insert(VertexId::Core_(0));
        CHECK(!check_nested_chain(ray, bad).pass);
    }
    {  // second component not nested
        auto bad = chain;
        std::swap(bad[1].second, bad[2].second);
        CHECK(!check_nested_chain(ray, bad).pass);
    }
    {  // component not closed (misses a neighbor outside the cut)
        auto bad = chain;
        bad[1].second.erase(VertexId::Tail_(0, 10, 0));
        CHECK(!check_nested_chain(ray, bad).pass);
    }
    // empty chain passes trivially
    CHECK(check_nested_chain(ray, {}).pass);

    // fan: a chain whose cuts omit the dominating hub gets flagged
    EpgPresentation fan = zoo_graph("fan");
    std::vector<std::pair<Epvs, Epvs>> fchain;
    for (int64_t k : {1, 4}) {
        Epvs x = Epvs::empty_like(fan);
        x.insert(VertexId::Tail_(0, k, 0));
        Epvs c = Epvs::empty_like(fan);
        c.set_strand(0, 0, Upis::at_least(k + 1));
        c.set_core(0, true);  // hub stays with the deep side
        // not closed: shallow spine vertices neighbor the hub
        fchain.push_back({x, c});
    }
    Report frep = check_nested_chain(fan, fchain);
    CHECK(!frep.pass);
}

TEST_CASE("fault injection: end-faithful checker") {
    EpgPresentation dr = zoo_graph("double_ray");
    SpanningTreePrefix good = build_spanning_tree(dr, 5, 40);
    REQUIRE(check_end_faithful(dr, good).pass);

    int detected = 0;
    auto expect_fail = [&](SpanningTreePrefix st) {
        Report rep = check_end_faithful(dr, st);
        CHECK(!rep.pass);
        if (!rep.pass) ++detected;
    };
    {  // drop a spanned vertex from the tree
        SpanningTreePrefix bad = good;
        bad.edges.erase(bad.edges.begin() + 3);
        expect_fail(bad);
    }
    {  // break an edge into a non-edge
        SpanningTreePrefix bad = good;
        bad.edges[2].second = VertexId::Tail_(1, 9, 0);
        expect_fail(bad);
    }
    {  // create a parent cycle
        SpanningTreePrefix bad = good;
        VertexId a = VertexId::Tail_(0, 4, 0);
        for (auto& [child, parent] : bad.edges)
            if (child == a) parent = VertexId::Tail_(0, 5, 0);
        expect_fail(bad);
    }
    {  // certificate diverges into the other branch
        SpanningTreePrefix bad = good;
        REQUIRE(bad.ray_certificates.size() == 2);
        std::swap(bad.ray_certificates[0].ray, bad.ray_certificates[1].ray);
        expect_fail(bad);
    }
    {  // certificate not rooted
        SpanningTreePrefix bad = good;
        bad.ray_certificates[0].ray.erase(bad.ray_certificates[0].ray.begin());
        expect_fail(bad);
    }
    {  // certificate for a missing end
        SpanningTreePrefix bad = good;
        bad.ray_certificates[0].end_id = 57;
        expect_fail(bad);
    }
    {  // duplicate attachment of one component
        SpanningTreePrefix bad = good;
        REQUIRE(!bad.attachment_edges.empty());
        bad.attachment_edges.push_back(bad.attachment_edges[0]);
        expect_fail(bad);
    }
    {  // certificate missing for one end
        SpanningTreePrefix bad = good;
        REQUIRE(bad.ray_certificates.size() == 2);
        bad.ray_certificates.pop_back();
        expect_fail(bad);
    }
    CHECK(detected >= 8);
}
