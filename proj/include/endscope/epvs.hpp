#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "endscope/ids.hpp"
#include "endscope/presentation.hpp"
#include "endscope/upis.hpp"

namespace endscope {

// Eventually periodic vertex set: a finite core subset plus one
// ultimately periodic index set per (tail, strand). The universal
// currency for infinite vertex sets (U, components, layers, parts).
class Epvs {
  public:
    Epvs() = default;

    static Epvs empty_like(const EpgPresentation& pres);
    static Epvs all_of(const EpgPresentation& pres);
    static Epvs of_vertices(const EpgPresentation& pres, const std::vector<VertexId>& vs);
    static Epvs all_cores(const EpgPresentation& pres);

    bool contains(const VertexId& v) const;
    void insert(const VertexId& v);
    void erase(const VertexId& v);

    bool core_member(int32_t c) const { return cores_[static_cast<size_t>(c)] != 0; }
    const Upis& strand(int32_t t, int32_t i) const {
        return strands_[static_cast<size_t>(t)][static_cast<size_t>(i)];
    }
    void set_strand(int32_t t, int32_t i, Upis u) {
        strands_[static_cast<size_t>(t)][static_cast<size_t>(i)] = std::move(u);
    }
    void set_core(int32_t c, bool in) { cores_[static_cast<size_t>(c)] = in ? 1 : 0; }

    int64_t core_count() const { return static_cast<int64_t>(cores_.size()); }
    int32_t tail_count() const { return static_cast<int32_t>(strands_.size()); }
    int64_t period_of(int32_t t) const {
        return static_cast<int64_t>(strands_[static_cast<size_t>(t)].size());
    }

    bool same_shape(const Epvs& o) const;

    Epvs unite(const Epvs& o) const;
    Epvs intersect(const Epvs& o) const;
    Epvs difference(const Epvs& o) const;
    Epvs complement() const;  // within V(G) of the shared shape

    friend Epvs operator|(const Epvs& a, const Epvs& b) { return a.unite(b); }
    friend Epvs operator&(const Epvs& a, const Epvs& b) { return a.intersect(b); }
    friend Epvs operator-(const Epvs& a, const Epvs& b) { return a.difference(b); }

    bool operator==(const Epvs& o) const {
        return cores_ == o.cores_ && strands_ == o.strands_;
    }
    bool operator!=(const Epvs& o) const { return !(*this == o); }

    bool is_empty() const;
    bool is_finite() const;
    std::optional<int64_t> size_if_finite() const;
    std::optional<VertexId> min_vertex() const;
    bool subset_of(const Epvs& o) const { return difference(o).is_empty(); }
    bool intersects(const Epvs& o) const { return !intersect(o).is_empty(); }
    bool infinitely_intersects(const Epvs& o) const { return !intersect(o).is_finite(); }

    // Members among cores and tail copies <= depth, in canonical order.
    std::vector<VertexId> members_up_to(int64_t depth) const;
    // All members when finite; throws otherwise.
    std::vector<VertexId> members_finite() const;

    // Largest explicit threshold over all strands (0 when purely periodic).
    int64_t max_threshold() const;
    // lcm of all strand pattern periods.
    int64_t period_lcm() const;

    std::string to_string() const;

  private:
    std::vector<char> cores_;
    std::vector<std::vector<Upis>> strands_;

    void check_shape(const Epvs& o) const;
};

// Exact neighbor set N(A) in G (not excluding A itself).
Epvs neighbors(const EpgPresentation& pres, const Epvs& a);
// Exact neighbor set of a single vertex.
Epvs neighbors(const EpgPresentation& pres, const VertexId& v);

}  // namespace endscope
