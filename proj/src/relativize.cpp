#include "endscope/relativize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace endscope {

VertexId Relativization::to_parent(const VertexId& v) const {
    if (v.is_core()) return core_parent[static_cast<size_t>(v.core)];
    const TailMap& tm = tail_maps[static_cast<size_t>(v.tail)];
    auto [r, i] = tm.strand_to_slot[static_cast<size_t>(v.strand)];
    return VertexId::Tail_(tm.parent_tail, tm.offset + v.copy * tm.q + r, i);
}

std::optional<VertexId> Relativization::to_sub(const VertexId& pv) const {
    auto it = parent_core_index.find(pv);
    if (it != parent_core_index.end()) return VertexId::Core_(it->second);
    if (!pv.is_tail()) return std::nullopt;
    for (int32_t t = 0; t < static_cast<int32_t>(tail_maps.size()); ++t) {
        const TailMap& tm = tail_maps[static_cast<size_t>(t)];
        if (tm.parent_tail != pv.tail || pv.copy < tm.offset) continue;
        int64_t rel = pv.copy - tm.offset;
        int64_t p = static_cast<int64_t>(tm.slot_to_strand.size()) / tm.q;
        int32_t slot = static_cast<int32_t>((rel % tm.q) * p + pv.strand);
        int32_t s = tm.slot_to_strand[static_cast<size_t>(slot)];
        if (s < 0) continue;
        return VertexId::Tail_(t, rel / tm.q, s);
    }
    return std::nullopt;
}

Epvs Relativization::pull_to_parent(const Epvs& sub_set) const {
    if (parent_ == nullptr) throw std::logic_error("relativization not initialized");
    Epvs out = Epvs::empty_like(*parent_);
    for (int32_t c = 0; c < sub.core_count; ++c)
        if (sub_set.core_member(c)) out.insert(core_parent[static_cast<size_t>(c)]);
    for (int32_t t = 0; t < static_cast<int32_t>(tail_maps.size()); ++t) {
        const TailMap& tm = tail_maps[static_cast<size_t>(t)];
        for (size_t s = 0; s < tm.strand_to_slot.size(); ++s) {
            const Upis& u = sub_set.strand(t, static_cast<int32_t>(s));
            if (u.empty()) continue;
            auto [r, i] = tm.strand_to_slot[s];
            out.set_strand(tm.parent_tail, i,
                           out.strand(tm.parent_tail, i) | u.affine_image(tm.offset + r, tm.q));
        }
    }
    return out;
}

Epvs Relativization::push_to_sub(const Epvs& parent_set) const {
    Epvs out = Epvs::empty_like(sub);
    for (size_t c = 0; c < core_parent.size(); ++c)
        if (parent_set.contains(core_parent[c])) out.set_core(static_cast<int32_t>(c), true);
    for (int32_t t = 0; t < static_cast<int32_t>(tail_maps.size()); ++t) {
        const TailMap& tm = tail_maps[static_cast<size_t>(t)];
        for (size_t s = 0; s < tm.strand_to_slot.size(); ++s) {
            auto [r, i] = tm.strand_to_slot[s];
            const Upis& w = parent_set.strand(tm.parent_tail, i);
            if (w.empty()) continue;
            out.set_strand(t, static_cast<int32_t>(s),
                           out.strand(t, static_cast<int32_t>(s)) |
                               w.affine_preimage(tm.offset + r, tm.q));
        }
    }
    return out;
}

Relativization relativize(const EpgPresentation& pres, const Epvs& domain) {
    if (domain.is_empty()) throw std::invalid_argument("relativize: empty domain");
    Relativization rel;
    rel.domain = domain;
    rel.parent_ = &pres;
    rel.sub.name = pres.name + "[sub]";

    // per-tail block geometry, matching the engine's zone computation
    struct Geo {
        int64_t q = 1;
        int64_t head = 1;
    };
    std::vector<Geo> geo(pres.tails.size());
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        Geo& g = geo[static_cast<size_t>(t)];
        for (int32_t i = 0; i < spec.period; ++i) {
            const Upis& s = domain.strand(t, i);
            g.q = lcm64(g.q, s.period());
            g.head = std::max(g.head, s.threshold());
        }
        for (const HubRule& r : spec.hubs) {
            if (!domain.core_member(r.core)) continue;
            g.q = lcm64(g.q, r.stride);
            g.head = std::max(g.head, r.start + 1);
        }
    }

    // derived cores: domain's head vertices in canonical order
    for (int32_t c = 0; c < pres.core_count; ++c)
        if (domain.core_member(c)) rel.core_parent.push_back(VertexId::Core_(c));
    for (int32_t t = 0; t < pres.tail_count(); ++t)
        for (int64_t k = 0; k < geo[static_cast<size_t>(t)].head; ++k)
            for (int32_t i = 0; i < pres.period_of(t); ++i) {
                VertexId v = VertexId::Tail_(t, k, i);
                if (domain.contains(v)) rel.core_parent.push_back(v);
            }
    rel.sub.core_count = static_cast<int64_t>(rel.core_parent.size());
    for (size_t x = 0; x < rel.core_parent.size(); ++x)
        rel.parent_core_index[rel.core_parent[x]] = static_cast<int32_t>(x);

    // head-internal edges become core edges
    std::set<std::pair<int32_t, int32_t>> core_edges;
    auto add_core_edge = [&rel, &core_edges](const VertexId& u, const VertexId& v) {
        auto iu = rel.parent_core_index.find(u), iv = rel.parent_core_index.find(v);
        if (iu == rel.parent_core_index.end() || iv == rel.parent_core_index.end()) return;
        auto key = std::minmax(iu->second, iv->second);
        core_edges.insert({key.first, key.second});
    };
    for (auto [u, v] : pres.core_edges) add_core_edge(VertexId::Core_(u), VertexId::Core_(v));
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        int64_t head = geo[static_cast<size_t>(t)].head;
        for (auto [c, i] : spec.attach)
            add_core_edge(VertexId::Core_(c), VertexId::Tail_(t, 0, i));
        for (int64_t k = 0; k < head; ++k) {
            for (auto [i, j] : spec.intra)
                add_core_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k, j));
            if (k + 1 < head)
                for (auto [i, j] : spec.inter)
                    add_core_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k + 1, j));
        }
        for (const HubRule& r : spec.hubs)
            for (int64_t k = r.start; k < head; k += r.stride)
                add_core_edge(VertexId::Core_(r.core), VertexId::Tail_(t, k, r.strand));
    }
    for (auto [u, v] : core_edges) rel.sub.core_edges.push_back({u, v});

    // derived tails: one per parent tail with kept zone slots
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        const Geo& g = geo[static_cast<size_t>(t)];
        int64_t p = spec.period;
        Relativization::TailMap tm;
        tm.parent_tail = t;
        tm.offset = g.head;
        tm.q = g.q;
        tm.slot_to_strand.assign(static_cast<size_t>(g.q * p), -1);
        for (int64_t r = 0; r < g.q; ++r)
            for (int32_t i = 0; i < p; ++i)
                if (domain.strand(t, i).contains(g.head + r)) {
                    tm.slot_to_strand[static_cast<size_t>(r * p + i)] =
                        static_cast<int32_t>(tm.strand_to_slot.size());
                    tm.strand_to_slot.push_back({static_cast<int32_t>(r), i});
                }
        if (tm.strand_to_slot.empty()) continue;

        TailSpec sub_spec;
        sub_spec.period = static_cast<int64_t>(tm.strand_to_slot.size());
        auto strand_at = [&tm, p](int64_t r, int32_t i) {
            return tm.slot_to_strand[static_cast<size_t>(r * p + i)];
        };
        std::set<std::pair<int32_t, int32_t>> intra_seen;
        auto add_intra = [&sub_spec, &intra_seen](int32_t a, int32_t b) {
            auto key = std::minmax(a, b);
            if (intra_seen.insert({key.first, key.second}).second)
                sub_spec.intra.push_back({a, b});
        };
        for (int64_t r = 0; r < g.q; ++r) {
            for (auto [i, j] : spec.intra) {
                int32_t a = strand_at(r, i), b = strand_at(r, j);
                if (a >= 0 && b >= 0) add_intra(a, b);
            }
            for (auto [i, j] : spec.inter) {
                int32_t a = strand_at(r, i);
                if (a < 0) continue;
                if (r + 1 < g.q) {
                    int32_t b = strand_at(r + 1, j);
                    if (b >= 0) add_intra(a, b);
                } else {
                    int32_t b = strand_at(0, j);
                    if (b >= 0) sub_spec.inter.push_back({a, b});
                }
            }
        }
        // head interface: parent inter edges from copy head-1 into block 0
        for (auto [i, j] : spec.inter) {
            auto it = rel.parent_core_index.find(VertexId::Tail_(t, g.head - 1, i));
            int32_t b = strand_at(0, j);
            if (it != rel.parent_core_index.end() && b >= 0)
                sub_spec.attach.push_back({it->second, b});
        }
        // hub rules survive block-uniformly (stride divides q, start below head)
        for (const HubRule& r : spec.hubs) {
            if (!domain.core_member(r.core)) continue;
            auto hub_it = rel.parent_core_index.find(VertexId::Core_(r.core));
            if (hub_it == rel.parent_core_index.end()) continue;
            for (int64_t rr = 0; rr < g.q; ++rr) {
                int64_t copy = g.head + rr;
                if (copy < r.start || (copy - r.start) % r.stride != 0) continue;
                int32_t s = strand_at(rr, r.strand);
                if (s < 0) continue;
                HubRule nr;
                nr.core = hub_it->second;
                nr.strand = s;
                nr.start = 0;
                nr.stride = 1;
                sub_spec.hubs.push_back(nr);
            }
        }
        rel.tail_maps.push_back(std::move(tm));
        rel.sub.tails.push_back(std::move(sub_spec));
    }
    return rel;
}

}  // namespace endscope
