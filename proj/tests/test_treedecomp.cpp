#include <doctest.h>

#include <set>

#include "endscope/treedecomp.hpp"
#include "endscope/verify.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

TEST_CASE("treedecomp: ray prefix is a path displaying the single end") {
    EpgPresentation ray = zoo_graph("ray");
    TreeDecompositionPrefix td = build_tree_decomposition(ray, 8);
    // one component per layer: a path of nodes
    for (const TdNode& node : td.nodes) {
        if (node.id == 0) continue;
        CHECK(!node.family);
    }
    REQUIRE(td.display.size() == 1);
    CHECK(td.display[0].node_chain.size() >= 8);
    auto rep = check_td_axioms(ray, td, 40);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
    CHECK(check_upwards_disjoint(ray, td, 40).pass);
    CHECK(check_display(ray, td).pass);
}

TEST_CASE("treedecomp: fan prefix is rayless with the dominated end at a node") {
    EpgPresentation fan = zoo_graph("fan");
    TreeDecompositionPrefix td = build_tree_decomposition(fan, 6);
    CHECK(td.display.empty());
    REQUIRE(td.dominated.size() == 1);
    // stabilization at layer 1 means a single component node under the root
    CHECK(td.nodes.size() == 2);
    CHECK(check_td_axioms(fan, td, 40).pass);
    CHECK(check_display(fan, td).pass);
}

TEST_CASE("treedecomp: infstar prefix is rayless with family leaves") {
    EpgPresentation star = zoo_graph("infstar");
    TreeDecompositionPrefix td = build_tree_decomposition(star, 6);
    CHECK(td.display.empty());
    bool any_family = false;
    for (const TdNode& node : td.nodes) any_family |= node.family;
    CHECK(any_family);
    auto rep = check_td_axioms(star, td, 40);
    CAPTURE(rep.summary());
    CHECK(rep.pass);
    CHECK(check_upwards_disjoint(star, td, 40).pass);
    CHECK(check_display(star, td).pass);
}

TEST_CASE("treedecomp: double_ray has exactly two branches") {
    EpgPresentation dr = zoo_graph("double_ray");
    TreeDecompositionPrefix td = build_tree_decomposition(dr, 8);
    int branches = 0;
    for (const TdNode& node : td.nodes)
        if (node.parent == 0) ++branches;
    CHECK(branches == 2);
    CHECK(td.display.size() == 2);
    std::set<std::vector<int32_t>> chains;
    for (const auto& d : td.display) chains.insert(d.node_chain);
    CHECK(chains.size() == 2);
    CHECK(check_td_axioms(dr, td, 40).pass);
    CHECK(check_display(dr, td).pass);
}

TEST_CASE("treedecomp: all zoo graphs verify at depth 6") {
    for (const auto& pres : zoo_all()) {
        CAPTURE(pres.name);
        TreeDecompositionPrefix td = build_tree_decomposition(pres, 6);
        auto ax = check_td_axioms(pres, td, 40);
        CAPTURE(ax.summary());
        CHECK(ax.pass);
        auto ud = check_upwards_disjoint(pres, td, 40);
        CAPTURE(ud.summary());
        CHECK(ud.pass);
        auto disp = check_display(pres, td);
        CAPTURE(disp.summary());
        CHECK(disp.pass);
    }
}

TEST_CASE("treedecomp: separators equal component neighborhoods") {
    EpgPresentation ladder = zoo_graph("ladder");
    TreeDecompositionPrefix td = build_tree_decomposition(ladder, 5);
    for (const TdNode& node : td.nodes) {
        if (node.id == 0 || node.family) continue;
        CHECK(node.separator ==
              (neighbors(ladder, node.component.vertices) - node.component.vertices));
        CHECK(node.separator.is_finite());
    }
}

TEST_CASE("treedecomp: DOT output mentions every node") {
    EpgPresentation dr = zoo_graph("double_ray");
    TreeDecompositionPrefix td = build_tree_decomposition(dr, 4);
    std::string dot = emit_dot(dr, td);
    for (const TdNode& node : td.nodes)
        CHECK(dot.find("n" + std::to_string(node.id)) != std::string::npos);
}
