#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/engine.hpp"
#include "endscope/epvs.hpp"
#include "endscope/exhaustion.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Node of the decomposition-tree prefix. Single components get one node;
// a family contributes one node group per parent, restricted to the
// member indices in member_filter (all members are leaves: each one is
// absorbed whole by the next layer).
struct TdNode {
    int32_t id = 0;
    int32_t parent = -1;  // -1 at the root
    int32_t layer = -1;   // component of G - H_layer; -1 at the root
    bool family = false;
    GraphPart component;   // empty at the root
    Upis member_filter;    // family only: member indices of this group
    Epvs bag;              // V_t; for families: member 0's bag shape
    Epvs separator;        // N(C); for families: of the least member
};

struct DisplayEntry {
    int32_t end_id = 0;
    std::vector<int32_t> node_chain;  // one node per layer, root excluded
};

struct DominatedEntry {
    int32_t end_id = 0;
    int32_t node = 0;  // where the end's edge orientation stabilizes
};

struct TreeDecompositionPrefix {
    int64_t depth = 0;  // layers 0..depth carry component nodes
    std::vector<TdNode> nodes;  // node 0 is the root
    std::vector<DisplayEntry> display;
    std::vector<DominatedEntry> dominated;
    Epvs coverage;  // union of all prefix bags = H_{depth+1}

    // Concrete node: a single component or one family member.
    struct Concrete {
        int32_t node = 0;
        int64_t member = -1;  // family member index, -1 for singles/root
    };
    // Materializes every concrete node whose vertices reach into the
    // given copy horizon.
    std::vector<Concrete> concrete_nodes(int64_t horizon) const;
    Epvs concrete_component(const EpgPresentation& pres, const Concrete& c) const;
    Epvs concrete_bag(const EpgPresentation& pres, const Concrete& c) const;
    Epvs concrete_separator(const EpgPresentation& pres, const Concrete& c) const;
};

TreeDecompositionPrefix build_tree_decomposition(const EpgPresentation& pres, int64_t depth);
TreeDecompositionPrefix build_tree_decomposition(const EpgPresentation& pres, int64_t depth,
                                                 const Exhaustion& exh,
                                                 const std::vector<End>& ends);

std::string emit_dot(const EpgPresentation& pres, const TreeDecompositionPrefix& td);

}  // namespace endscope
