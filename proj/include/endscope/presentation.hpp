#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "endscope/ids.hpp"
#include "endscope/upis.hpp"

namespace endscope {

// Hub rule (h,i,s,d): Core(h) -- Tail(t, s + m*d, i) for all m >= 0.
struct HubRule {
    int32_t core = 0;
    int32_t strand = 0;
    int64_t start = 0;
    int64_t stride = 1;

    bool operator==(const HubRule&) const = default;
};

// One periodic tail: a one-way infinite chain of copies of a strand block.
struct TailSpec {
    int64_t period = 1;
    std::vector<std::pair<int32_t, int32_t>> intra;   // (i,j): Tail(k,i)--Tail(k,j), all k
    std::vector<std::pair<int32_t, int32_t>> inter;   // (i,j): Tail(k,i)--Tail(k+1,j), all k
    std::vector<std::pair<int32_t, int32_t>> attach;  // (c,i): Core(c)--Tail(0,i)
    std::vector<HubRule> hubs;

    bool operator==(const TailSpec&) const = default;
};

// Finite description of an infinite graph: finite core, periodic tails,
// periodic hub rules. Immutable after construction by convention.
struct EpgPresentation {
    std::string name;
    int64_t core_count = 0;
    std::vector<std::pair<int32_t, int32_t>> core_edges;
    std::vector<TailSpec> tails;

    int32_t tail_count() const { return static_cast<int32_t>(tails.size()); }
    int64_t period_of(int32_t t) const { return tails[static_cast<size_t>(t)].period; }

    bool valid_vertex(const VertexId& v) const {
        if (v.is_core()) return v.core >= 0 && v.core < core_count;
        if (v.tail < 0 || v.tail >= tail_count()) return false;
        return v.copy >= 0 && v.strand >= 0 && v.strand < period_of(v.tail);
    }

    // Cores owning at least one hub rule; only these can have infinite degree.
    std::vector<int32_t> hub_cores() const;
    bool is_hub(int32_t core) const;

    bool operator==(const EpgPresentation&) const = default;
};

struct ValidationIssue {
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool structurally_valid = false;
    bool connected = false;

    bool ok() const { return structurally_valid && connected; }
};

// Structural checks (index ranges, duplicate edges, self-loops, strides)
// plus symbolic connectivity of the represented graph.
ValidationReport validate(const EpgPresentation& pres);

// Throws std::invalid_argument when the presentation is structurally broken.
void require_valid(const EpgPresentation& pres);

}  // namespace endscope
