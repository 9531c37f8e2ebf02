#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endscope/engine.hpp"
#include "endscope/epvs.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

struct AdhesionReport {
    bool finite_adhesion = true;
    // a component of G-S with infinite neighborhood, when one exists
    std::optional<std::pair<Epvs, Epvs>> witness;  // (component, N(component))
    struct Line {
        std::string description;
        std::optional<int64_t> adhesion_size;  // nullopt: infinite
    };
    std::vector<Line> component_families;
};

// Exact component decomposition of G-S (pattern families included).
std::vector<GraphPart> components_of_complement(const EpgPresentation& pres, const Epvs& s);

// N(C) for a component or family member; always a subset of S.
Epvs adhesion_set(const EpgPresentation& pres, const Epvs& component);

AdhesionReport finite_adhesion(const EpgPresentation& pres, const Epvs& s);

// Independent postcondition checker for envelopes: (a) superset,
// (b) connected, (c) finite adhesion, (d) closure equality.
struct EnvelopeCheck {
    bool superset = false;
    bool connected = false;
    bool adhesion = false;
    bool closure_equal = false;
    std::string message;
    bool ok() const { return superset && connected && adhesion && closure_equal; }
};
EnvelopeCheck verify_envelope(const EpgPresentation& pres, const Epvs& u, const Epvs& u_star);

// Connected envelope of U: a verified superset with finite adhesion and
// the same closure. Throws when the postcondition checker rejects the
// construction.
Epvs envelope(const EpgPresentation& pres, const Epvs& u);

}  // namespace endscope
