#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "endscope/epvs.hpp"
#include "endscope/ids.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Finite induced subgraph on cores plus all tail copies k <= depth.
// Vertices with neighbors outside the unfolding are flagged boundary.
// Serves as the brute-force oracle substrate for the symbolic engine.
struct FiniteGraph {
    std::vector<VertexId> vertices;  // canonical order
    std::vector<std::vector<int32_t>> adj;
    std::vector<char> boundary;
    std::unordered_map<VertexId, int32_t, VertexIdHash> index;

    int32_t find(const VertexId& v) const {
        auto it = index.find(v);
        return it == index.end() ? -1 : it->second;
    }
    size_t size() const { return vertices.size(); }
    int64_t edge_count() const;
};

FiniteGraph unfold(const EpgPresentation& pres, int64_t depth);

// Connected components of the subgraph on vertices where keep(v) is true.
// Returns a component id per vertex (-1 for dropped vertices), ids assigned
// in order of least contained vertex.
std::vector<int32_t> finite_components(const FiniteGraph& g,
                                       const std::function<bool(int32_t)>& keep);

// BFS distances from a set of sources inside kept vertices (-1 unreachable).
std::vector<int64_t> finite_bfs(const FiniteGraph& g, const std::vector<int32_t>& sources,
                                const std::function<bool(int32_t)>& keep);

}  // namespace endscope
