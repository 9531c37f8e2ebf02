#pragma once

#include <cstdint>
#include <vector>

#include "endscope/engine.hpp"
#include "endscope/epvs.hpp"
#include "endscope/ids.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// One-way infinite path given by a finite prefix and a repeating tail
// segment shifted by `shift` copies per repetition.
struct PeriodicRay {
    std::vector<VertexId> prefix;
    std::vector<VertexId> segment;  // within one tail
    int64_t shift = 1;

    VertexId at(int64_t n) const;
    std::vector<VertexId> first_n(int64_t n) const;
    Epvs vertex_set(const EpgPresentation& pres) const;
    // First ray vertex with copy index >= depth (skipping the prefix).
    VertexId deep_vertex(int64_t depth) const;
};

// A direction of the graph: an infinite component of G minus its cores,
// carrying one end.
struct End {
    int32_t id = 0;
    int32_t tail = 0;
    std::vector<int32_t> strands;  // eventual strand support
    Epvs component;                // the direction's full vertex set
    PeriodicRay representative;
    std::vector<int32_t> dominators;  // core indices
    bool topological = true;
};

// All ends, sorted by (tail, least strand, least vertex). Requires a
// connected presentation.
std::vector<End> enumerate_ends(const EpgPresentation& pres);

// C(X, end): the unique component of G-X containing every ray tail of
// the end. X must be finite.
Epvs component_of(const EpgPresentation& pres, const Epvs& finite_x, const End& end);

// Ends in the closure of M: exactly those whose direction meets M
// infinitely.
std::vector<End> closure(const EpgPresentation& pres, const Epvs& m);
std::vector<End> closure(const EpgPresentation& pres, const Epvs& m,
                         const std::vector<End>& ends);

// Hub vertices dominating the end (spec of the End::dominators field).
std::vector<int32_t> dominators(const EpgPresentation& pres, const End& end);

// closure(N(W)) for finite W.
std::vector<End> closure_of_neighborhood(const EpgPresentation& pres, const Epvs& w);

// Validity checks used by tests and certificate checkers.
bool adjacent(const EpgPresentation& pres, const VertexId& u, const VertexId& v);
void require_valid_ray(const EpgPresentation& pres, const PeriodicRay& ray);

}  // namespace endscope
