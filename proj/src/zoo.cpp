#include "endscope/zoo.hpp"

#include <stdexcept>

namespace endscope {

namespace {

EpgPresentation make_ray() {
    EpgPresentation g;
    g.name = "ray";
    g.core_count = 1;
    TailSpec t;
    t.period = 1;
    t.inter = {{0, 0}};
    t.attach = {{0, 0}};
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_double_ray() {
    EpgPresentation g;
    g.name = "double_ray";
    g.core_count = 1;
    TailSpec t;
    t.period = 1;
    t.inter = {{0, 0}};
    t.attach = {{0, 0}};
    g.tails.push_back(t);
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_ladder() {
    EpgPresentation g;
    g.name = "ladder";
    g.core_count = 2;
    TailSpec t;
    t.period = 2;
    t.intra = {{0, 1}};               // rungs
    t.inter = {{0, 0}, {1, 1}};       // rails
    t.attach = {{0, 0}, {1, 1}};      // core c onto rail c
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_comb() {
    EpgPresentation g;
    g.name = "comb";
    g.core_count = 1;
    TailSpec t;
    t.period = 2;                     // strand 0: spine, strand 1: teeth
    t.intra = {{0, 1}};
    t.inter = {{0, 0}};
    t.attach = {{0, 0}};
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_fan() {
    EpgPresentation g;
    g.name = "fan";
    g.core_count = 1;
    TailSpec t;
    t.period = 1;                     // the spine
    t.inter = {{0, 0}};
    t.hubs = {{0, 0, 0, 1}};          // hub adjacent to every spine vertex
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_infstar() {
    EpgPresentation g;
    g.name = "infstar";
    g.core_count = 1;
    TailSpec t;
    t.period = 1;                     // isolated leaves
    t.hubs = {{0, 0, 0, 1}};
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_twostrand() {
    EpgPresentation g;
    g.name = "twostrand";
    g.core_count = 1;
    TailSpec t;
    t.period = 2;
    t.inter = {{0, 0}, {1, 1}};       // two independent chains
    t.attach = {{0, 0}, {0, 1}};
    g.tails.push_back(t);
    return g;
}

EpgPresentation make_hubbed_ladder() {
    EpgPresentation g = make_ladder();
    g.name = "hubbed_ladder";
    g.tails[0].hubs = {{0, 0, 1, 1}};  // core 0 onto rail 0 from copy 1 on
    return g;
}

}  // namespace

std::vector<std::string> zoo_names() {
    return {"ray",     "double_ray", "ladder",    "comb",
            "fan",     "infstar",    "twostrand", "hubbed_ladder"};
}

EpgPresentation zoo_graph(const std::string& name) {
    if (name == "ray") return make_ray();
    if (name == "double_ray") return make_double_ray();
    if (name == "ladder") return make_ladder();
    if (name == "comb") return make_comb();
    if (name == "fan") return make_fan();
    if (name == "infstar") return make_infstar();
    if (name == "twostrand") return make_twostrand();
    if (name == "hubbed_ladder") return make_hubbed_ladder();
    throw std::invalid_argument("unknown example graph: " + name);
}

std::vector<EpgPresentation> zoo_all() {
    std::vector<EpgPresentation> out;
    for (const auto& n : zoo_names()) out.push_back(zoo_graph(n));
    return out;
}

}  // namespace endscope
