#include "endscope/exhaustion.hpp"

#include <stdexcept>

#include "endscope/envelope.hpp"
#include "endscope/relativize.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

Exhaustion build_exhaustion(const EpgPresentation& pres, int64_t n_max) {
    require_valid(pres);
    if (n_max < 0) throw std::invalid_argument("build_exhaustion: n_max must be >= 0");
    if (!is_connected(pres))
        throw std::invalid_argument("build_exhaustion: presentation is not connected");

    Exhaustion exh;
    Epvs h0 = Epvs::empty_like(pres);
    h0.insert(*Epvs::all_of(pres).min_vertex());  // lowest core when cores exist
    exh.layers.push_back(h0);

    for (int64_t m = 0; m < n_max; ++m) {
        const Epvs& h = exh.layers.back();
        std::vector<GraphPart> parts = analyze_complement(pres, h).parts;
        if (parts.empty()) {
            exh.stabilized = true;
            exh.stabilized_at = m;
            exh.components.push_back({});
            break;
        }
        Epvs next = h;
        std::vector<LayerComponent> records;
        for (const GraphPart& part : parts) {
            LayerComponent rec;
            rec.part = part;
            if (part.family) {
                Epvs member = Epvs::of_vertices(pres, part.family_base);
                rec.boundary = adhesion_set(pres, member);
                rec.contact = neighbors(pres, rec.boundary) & member;
                rec.envelope_set = part.vertices;  // each finite member is absorbed whole
            } else if (part.vertices.is_finite()) {
                rec.boundary = adhesion_set(pres, part.vertices);
                rec.contact = neighbors(pres, rec.boundary) & part.vertices;
                rec.envelope_set = part.vertices;
            } else {
                rec.boundary = adhesion_set(pres, part.vertices);
                if (!rec.boundary.is_finite())
                    throw std::runtime_error(
                        "build_exhaustion: layer lost finite adhesion (internal error)");
                rec.contact = neighbors(pres, rec.boundary) & part.vertices;
                Relativization rel = relativize(pres, part.vertices);
                Epvs inner = envelope(rel.sub, rel.push_to_sub(rec.contact));
                rec.envelope_set = rel.pull_to_parent(inner);
            }
            next = next | rec.envelope_set;
            records.push_back(std::move(rec));
        }
        exh.components.push_back(std::move(records));
        exh.layers.push_back(next);
    }
    return exh;
}

ExhaustionCheck verify_exhaustion(const EpgPresentation& pres, const Exhaustion& exh,
                                  const std::vector<End>& ends) {
    ExhaustionCheck check;
    check.per_layer.resize(exh.layers.size());
    auto note = [&check](const std::string& msg) { check.message += msg + "; "; };

    for (size_t m = 0; m < exh.layers.size(); ++m) {
        const Epvs& h = exh.layers[m];
        // layers are connected induced subgraphs of finite adhesion
        if (!is_connected_induced(pres, h)) {
            check.layers_connected = false;
            note("H_" + std::to_string(m) + " not connected");
        }
        if (!finite_adhesion(pres, h).finite_adhesion) {
            check.layers_finite_adhesion = false;
            note("H_" + std::to_string(m) + " lost finite adhesion");
        }
        // (i) N(H_m) inside H_{m+1}
        if (m + 1 < exh.layers.size()) {
            if (!h.subset_of(exh.layers[m + 1]) ||
                !neighbors(pres, h).subset_of(exh.layers[m + 1])) {
                check.neighborhoods = false;
                check.per_layer[m].neighborhoods = false;
                note("N(H_" + std::to_string(m) + ") escapes H_" + std::to_string(m + 1));
            }
        }
        // (ii) unique component per topological end, none in closure(H_m)
        std::vector<GraphPart> parts = analyze_complement(pres, h).parts;
        for (const End& e : ends) {
            if (!e.topological) {
                // dominated ends cling to every layer whose predecessor
                // holds a dominator
                if (m > 0) {
                    bool dom_inside = false;
                    for (int32_t d : e.dominators)
                        if (exh.layers[m - 1].core_member(d)) dom_inside = true;
                    if (dom_inside && !h.infinitely_intersects(e.component)) {
                        check.unique_component = false;
                        check.per_layer[m].unique_component = false;
                        note("dominated end " + std::to_string(e.id) + " not in closure of H_" +
                             std::to_string(m));
                    }
                }
                continue;
            }
            if (h.infinitely_intersects(e.component)) {
                check.unique_component = false;
                check.per_layer[m].unique_component = false;
                note("topological end " + std::to_string(e.id) + " in closure of H_" +
                     std::to_string(m));
                continue;
            }
            // the ray tail identifies the component the end lives in
            int64_t deep = (h & e.component).max_threshold() + 2;
            if (auto mx = (h & e.component).strand(e.tail, e.representative.segment[0].strand)
                              .max_if_finite())
                deep = std::max(deep, *mx + 2);
            VertexId v = e.representative.deep_vertex(deep);
            int32_t home = -1;
            for (size_t p = 0; p < parts.size(); ++p)
                if (parts[p].vertices.contains(v)) home = static_cast<int32_t>(p);
            if (home < 0 || !parts[static_cast<size_t>(home)].vertices.infinitely_intersects(
                                e.component)) {
                check.unique_component = false;
                check.per_layer[m].unique_component = false;
                note("end " + std::to_string(e.id) + " has no home at layer " +
                     std::to_string(m));
            }
        }
    }

    // (iii) C intersect H_{m+1} is connected
    for (size_t m = 0; m + 1 < exh.layers.size() && m < exh.components.size(); ++m) {
        const Epvs& next = exh.layers[m + 1];
        for (const LayerComponent& rec : exh.components[m]) {
            if (rec.part.family) {
                Epvs member = Epvs::of_vertices(pres, rec.part.family_base);
                Epvs inter = member & next;
                if (!inter.is_empty() && !is_connected_induced(pres, inter)) {
                    check.connected_intersections = false;
                    check.per_layer[m].connected_intersections = false;
                    note("family member intersection disconnected at layer " + std::to_string(m));
                }
            } else {
                Epvs inter = rec.part.vertices & next;
                if (!inter.is_empty() && !is_connected_induced(pres, inter)) {
                    check.connected_intersections = false;
                    check.per_layer[m].connected_intersections = false;
                    note("component intersection disconnected at layer " + std::to_string(m));
                }
            }
        }
    }
    return check;
}

}  // namespace endscope
