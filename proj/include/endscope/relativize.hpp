#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "endscope/epvs.hpp"
#include "endscope/ids.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Presents the induced subgraph G[domain] as an eventually periodic
// presentation of its own, together with the vertex renaming in both
// directions. Head vertices of the domain become cores of the derived
// presentation; each parent tail contributes one derived tail whose
// strands enumerate the kept (offset, strand) slots of a re-periodized
// block.
class Relativization {
  public:
    EpgPresentation sub;
    Epvs domain;  // parent coordinates

    VertexId to_parent(const VertexId& v) const;
    std::optional<VertexId> to_sub(const VertexId& parent_vertex) const;

    Epvs pull_to_parent(const Epvs& sub_set) const;
    Epvs push_to_sub(const Epvs& parent_set) const;

    // construction internals, used by relativize()
    struct TailMap {
        int32_t parent_tail = 0;
        int64_t offset = 0;  // parent copy of block 0, slot offset 0
        int64_t q = 1;       // block width in parent copies
        std::vector<std::pair<int32_t, int32_t>> strand_to_slot;  // (offset r, parent strand i)
        std::vector<int32_t> slot_to_strand;                      // [r*p + i] -> strand or -1
    };
    std::vector<VertexId> core_parent;
    std::unordered_map<VertexId, int32_t, VertexIdHash> parent_core_index;
    std::vector<TailMap> tail_maps;

  private:
    const EpgPresentation* parent_ = nullptr;
    friend Relativization relativize(const EpgPresentation&, const Epvs&);
};

// domain must be nonempty.
Relativization relativize(const EpgPresentation& pres, const Epvs& domain);

}  // namespace endscope
