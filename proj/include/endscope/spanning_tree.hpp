#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/epvs.hpp"
#include "endscope/exhaustion.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Prefix of the end-faithful spanning tree: T_n spans H_n, materialized
// within a copy horizon. Each component's spanning subtree attaches to
// the previous layers by exactly one edge.
struct SpanningTreePrefix {
    VertexId root;
    int64_t depth = 0;    // exhaustion layers
    int64_t horizon = 0;  // copies materialized
    Epvs spans;           // H_depth
    // child -> parent for every spanned vertex within the horizon
    std::vector<std::pair<VertexId, VertexId>> edges;
    struct Attachment {
        int64_t layer = 0;
        VertexId inside;   // endpoint in C (cap H_{m+1})
        VertexId outside;  // endpoint in H_m
    };
    std::vector<Attachment> attachment_edges;
    struct RayCert {
        int32_t end_id = 0;
        std::vector<VertexId> ray;  // rooted path prefix
    };
    std::vector<RayCert> ray_certificates;

    std::unordered_map<VertexId, VertexId, VertexIdHash> parent_map() const;
};

SpanningTreePrefix build_spanning_tree(const EpgPresentation& pres, int64_t depth,
                                       int64_t horizon);

std::string emit_dot(const EpgPresentation& pres, const SpanningTreePrefix& st);

}  // namespace endscope
