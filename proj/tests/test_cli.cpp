#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "endscope/cli.hpp"
#include "endscope/jsonio.hpp"
#include "endscope/spanning_tree.hpp"
#include "endscope/treedecomp.hpp"
#include "endscope/zoo.hpp"

using namespace endscope;

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"frobnicate"}).exit_code == 2);
    CHECK(run_cli({"ends"}).exit_code == 2);  // no graph given
    CHECK(run_cli({"ends", "--example", "nosuch"}).exit_code == 2);
    CHECK(run_cli({"verify", "--what", "td"}).exit_code == 2);  // missing --in
}

TEST_CASE("cli: zoo listing and emission") {
    CliResult res = run_cli({"zoo"});
    CHECK(res.exit_code == 0);
    for (const auto& name : zoo_names())
        CHECK(res.out.find(name) != std::string::npos);

    CliResult ray = run_cli({"zoo", "--emit", "ray"});
    CHECK(ray.exit_code == 0);
    CHECK(ray.out.find("graph ray") != std::string::npos);
    CHECK(ray.out.find("inter 0 0 0") != std::string::npos);
}

TEST_CASE("cli: info validates") {
    CliResult res = run_cli({"info", "--example", "ladder"});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("connected: yes") != std::string::npos);
}

TEST_CASE("cli: ends on the fan reports the dominated end") {
    CliResult res = run_cli({"ends", "--example", "fan", "--format", "json"});
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("schema") == 1);
    REQUIRE(j.at("ends").size() == 1);
    CHECK(j.at("ends")[0].at("topological") == false);
    CHECK(j.at("ends")[0].at("dominators")[0] == "c0");
}

TEST_CASE("cli: deterministic output across runs") {
    for (auto args : {std::vector<std::string>{"ends", "--example", "twostrand", "--format",
                                               "json"},
                      std::vector<std::string>{"treedecomp", "--example", "double_ray",
                                               "--depth", "5", "--format", "json"},
                      std::vector<std::string>{"zoo", "--check", "--seed", "7"}}) {
        CliResult a = run_cli(args);
        CliResult b = run_cli(args);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli: closure and envelope with set syntax") {
    CliResult res =
        run_cli({"closure", "--example", "ladder", "--set", "strand 0 0: all"});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("end 0") != std::string::npos);

    CliResult env = run_cli({"envelope", "--example", "infstar", "--set", "strand 0 0: all"});
    CHECK(env.exit_code == 0);
    CHECK(env.out.find("cores: 0") != std::string::npos);
    CHECK(env.out.find("closure unchanged: pass") != std::string::npos);
}

TEST_CASE("cli: starcomb certificate") {
    CliResult res = run_cli(
        {"starcomb", "--example", "infstar", "--set", "strand 0 0: all", "--format", "json"});
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j.at("kind") == "star");
    CHECK(j.at("center") == "c0");
    CHECK(j.at("first_n_paths").size() == 50);
}

TEST_CASE("cli: treedecomp dot output has two branches for double_ray") {
    CliResult res =
        run_cli({"treedecomp", "--example", "double_ray", "--depth", "6", "--format", "dot"});
    CHECK(res.exit_code == 0);
    // two edges leaving the root
    size_t count = 0, at = 0;
    while ((at = res.out.find("n0 -- ", at)) != std::string::npos) {
        ++count;
        ++at;
    }
    CHECK(count == 2);
}

TEST_CASE("cli: verify accepts builder output and rejects mutations") {
    EpgPresentation ray = zoo_graph("ray");
    TreeDecompositionPrefix td = build_tree_decomposition(ray, 6);
    {
        std::ofstream f("/tmp/endscope_td_good.json");
        f << td_to_json(ray, td).dump(2);
    }
    CliResult good = run_cli({"verify", "--what", "td", "--in", "/tmp/endscope_td_good.json"});
    CAPTURE(good.out);
    CAPTURE(good.err);
    CHECK(good.exit_code == 0);

    // break (T1) by deleting a vertex from all bags
    TreeDecompositionPrefix bad = td;
    for (TdNode& node : bad.nodes) node.bag.erase(VertexId::Tail_(0, 2, 0));
    {
        std::ofstream f("/tmp/endscope_td_bad.json");
        f << td_to_json(ray, bad).dump(2);
    }
    CliResult res = run_cli({"verify", "--what", "td", "--in", "/tmp/endscope_td_bad.json"});
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("witness") != std::string::npos);

    // spanning tree round trip through the file format
    SpanningTreePrefix st = build_spanning_tree(ray, 5, 40);
    {
        std::ofstream f("/tmp/endscope_st.json");
        f << st_to_json(ray, st).dump(2);
    }
    CliResult tree = run_cli({"verify", "--what", "tree", "--in", "/tmp/endscope_st.json"});
    CAPTURE(tree.out);
    CHECK(tree.exit_code == 0);

    CliResult disp = run_cli({"verify", "--what", "display", "--in",
                              "/tmp/endscope_td_good.json"});
    CHECK(disp.exit_code == 0);

    std::remove("/tmp/endscope_td_good.json");
    std::remove("/tmp/endscope_td_bad.json");
    std::remove("/tmp/endscope_st.json");
}

TEST_CASE("cli: parse errors in graph files exit 2") {
    {
        std::ofstream f("/tmp/endscope_bad_graph.txt");
        f << "graph g\ncore 1\nhub 0 0 0 0 0\n";
    }
    CliResult res = run_cli({"info", "--graph", "/tmp/endscope_bad_graph.txt"});
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("line 3") != std::string::npos);
    std::remove("/tmp/endscope_bad_graph.txt");
}

TEST_CASE("cli: presentation round trip through emit and parse") {
    for (const auto& name : zoo_names()) {
        CliResult emitted = run_cli({"zoo", "--emit", name});
        REQUIRE(emitted.exit_code == 0);
        std::string path = "/tmp/endscope_zoo_" + name + ".txt";
        {
            std::ofstream f(path);
            f << emitted.out;
        }
        CliResult info = run_cli({"info", "--graph", path});
        CHECK(info.exit_code == 0);
        std::remove(path.c_str());
    }
}
