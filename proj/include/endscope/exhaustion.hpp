#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/engine.hpp"
#include "endscope/epvs.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Layered exhaustion H_0 c H_1 c ... by connected subgraphs of finite
// adhesion, each layer grown by connected envelopes of the contact sets
// inside every component of the previous complement.
struct LayerComponent {
    GraphPart part;     // component of G - H_m (families grouped)
    Epvs boundary;      // W = N(C), finite (member 0 for families)
    Epvs contact;       // U_C = N(W) inside C (member 0 for families)
    Epvs envelope_set;  // U*_C; for families the union over all members
};

struct Exhaustion {
    std::vector<Epvs> layers;                             // H_0 .. H_n
    std::vector<std::vector<LayerComponent>> components;  // per layer m
    bool stabilized = false;   // some H_m equals V(G)
    int64_t stabilized_at = -1;

    const Epvs& layer(int64_t m) const {  // constant beyond stabilization
        if (m < static_cast<int64_t>(layers.size())) return layers[static_cast<size_t>(m)];
        return layers.back();
    }
};

Exhaustion build_exhaustion(const EpgPresentation& pres, int64_t n_max);

struct ExhaustionCheck {
    bool neighborhoods = true;  // (i)  N(H_m) inside H_{m+1}
    bool unique_component = true;  // (ii)
    bool connected_intersections = true;  // (iii)
    bool layers_connected = true;
    bool layers_finite_adhesion = true;
    struct LayerFlags {
        bool neighborhoods = true;
        bool unique_component = true;
        bool connected_intersections = true;
    };
    std::vector<LayerFlags> per_layer;
    std::string message;
    bool ok() const {
        return neighborhoods && unique_component && connected_intersections &&
               layers_connected && layers_finite_adhesion;
    }
};

ExhaustionCheck verify_exhaustion(const EpgPresentation& pres, const Exhaustion& exh,
                                  const std::vector<End>& ends);

}  // namespace endscope
