#pragma once

#include <cstdint>
#include <vector>

#include "endscope/epvs.hpp"
#include "endscope/ids.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// One component of G - removed, or a periodic family of isomorphic
// finite components living in one tail.
struct GraphPart {
    Epvs vertices;  // union over all members for a family
    bool infinite = false;
    bool family = false;
    int32_t family_tail = -1;
    int64_t family_stride = 0;            // copy shift between consecutive members
    std::vector<VertexId> family_base;    // member 0, canonical vertex order

    // Materialize member m of a family (member 0 == family_base).
    std::vector<VertexId> family_member(int64_t m) const;
    // Family member containing v, or -1 when v is not in this family.
    int64_t member_index_of(const VertexId& v) const;
};

// Exact component decomposition of G - removed. Parts are pairwise
// disconnected and their union is V(G) - removed (asserted internally).
struct ComplementAnalysis {
    Epvs removed;
    std::vector<GraphPart> parts;  // ordered by least contained vertex

    // Index of the part containing v; -1 when v is removed or invalid.
    int32_t part_of(const VertexId& v) const;
};

ComplementAnalysis analyze_complement(const EpgPresentation& pres, const Epvs& removed);

// Connectivity of the full graph / of an induced subgraph G[a].
bool is_connected(const EpgPresentation& pres);
bool is_connected_induced(const EpgPresentation& pres, const Epvs& a);

}  // namespace endscope
