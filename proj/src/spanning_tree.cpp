#include "endscope/spanning_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "endscope/envelope.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

std::unordered_map<VertexId, VertexId, VertexIdHash> SpanningTreePrefix::parent_map() const {
    std::unordered_map<VertexId, VertexId, VertexIdHash> out;
    for (const auto& [child, parent] : edges) out[child] = parent;
    return out;
}

namespace {

// Lexicographically least edge between the previous layers and the
// component's absorbed part; endpoints ordered (outside, inside).
std::pair<VertexId, VertexId> least_attachment_edge(const EpgPresentation& pres,
                                                    const Epvs& boundary, const Epvs& inside_set) {
    std::optional<std::pair<VertexId, VertexId>> best;  // (sorted pair)
    std::optional<std::pair<VertexId, VertexId>> best_oriented;
    for (const VertexId& w : boundary.members_finite()) {
        Epvs cand = neighbors(pres, w) & inside_set;
        auto u = cand.min_vertex();
        if (!u) continue;
        std::pair<VertexId, VertexId> key = w < *u ? std::make_pair(w, *u)
                                                   : std::make_pair(*u, w);
        if (!best || key < *best) {
            best = key;
            best_oriented = {w, *u};
        }
    }
    if (!best_oriented)
        throw std::runtime_error("spanning tree: no attachment edge found (internal error)");
    return *best_oriented;
}

// Certified lexicographic BFS parents inside an induced subgraph,
// exact for every vertex with copy <= horizon.
std::unordered_map<VertexId, VertexId, VertexIdHash> certified_bfs_parents(
    const EpgPresentation& pres, const Epvs& domain, const VertexId& root, int64_t horizon) {
    int64_t w1 = horizon + domain.max_threshold() + 2 * domain.period_lcm() + 8;
    FiniteGraph g1 = unfold(pres, w1);
    auto keep1 = [&g1, &domain](int32_t x) {
        return domain.contains(g1.vertices[static_cast<size_t>(x)]);
    };
    auto d1 = finite_bfs(g1, {g1.find(root)}, keep1);
    int64_t max_d = 0;
    for (size_t x = 0; x < g1.size(); ++x) {
        const VertexId& v = g1.vertices[x];
        if (!domain.contains(v) || (v.is_tail() && v.copy > horizon)) continue;
        if (d1[x] < 0)
            throw std::runtime_error("spanning tree: component not connected at horizon " +
                                     v.to_string());
        max_d = std::max(max_d, d1[x]);
    }
    // any shortest path to a horizon vertex stays within copies
    // <= horizon + its length, so this window is exact
    int64_t w2 = horizon + max_d + 2;
    FiniteGraph g = w2 <= w1 ? std::move(g1) : unfold(pres, w2);
    auto keep = [&g, &domain](int32_t x) {
        return domain.contains(g.vertices[static_cast<size_t>(x)]);
    };
    auto dist = finite_bfs(g, {g.find(root)}, keep);

    std::unordered_map<VertexId, VertexId, VertexIdHash> parents;
    for (size_t x = 0; x < g.size(); ++x) {
        const VertexId& v = g.vertices[x];
        if (!domain.contains(v) || dist[x] <= 0) continue;
        if (v.is_tail() && v.copy > horizon) continue;
        int32_t bestw = -1;
        for (int32_t w : g.adj[x]) {
            if (!keep(w) || dist[static_cast<size_t>(w)] != dist[x] - 1) continue;
            if (bestw < 0 ||
                g.vertices[static_cast<size_t>(w)] < g.vertices[static_cast<size_t>(bestw)])
                bestw = w;
        }
        if (bestw < 0)
            throw std::runtime_error("spanning tree: missing BFS parent (internal error)");
        parents[v] = g.vertices[static_cast<size_t>(bestw)];
    }
    return parents;
}

}  // namespace

SpanningTreePrefix build_spanning_tree(const EpgPresentation& pres, int64_t depth,
                                       int64_t horizon) {
    if (depth < 1) throw std::invalid_argument("build_spanning_tree: depth must be >= 1");
    Exhaustion exh = build_exhaustion(pres, depth);
    const Epvs& spans = exh.layers.back();
    int64_t required = spans.max_threshold() + 2 * spans.period_lcm() + 4 * depth + 8;
    if (horizon < required)
        throw std::invalid_argument("build_spanning_tree: horizon too small, need >= " +
                                    std::to_string(required));

    SpanningTreePrefix st;
    st.depth = static_cast<int64_t>(exh.layers.size()) - 1;
    st.horizon = horizon;
    st.spans = spans;
    st.root = *exh.layers[0].min_vertex();

    std::map<VertexId, VertexId> parent;  // canonical order for output
    struct HomeInfo {
        Epvs component;
        VertexId inside;
    };
    std::vector<std::vector<HomeInfo>> homes(exh.components.size());

    for (size_t m = 0; m < exh.components.size(); ++m) {
        for (const LayerComponent& rec : exh.components[m]) {
            if (!rec.part.family) {
                auto [outside, inside] =
                    least_attachment_edge(pres, rec.boundary, rec.envelope_set);
                parent[inside] = outside;
                st.attachment_edges.push_back({static_cast<int64_t>(m), inside, outside});
                auto sub = certified_bfs_parents(pres, rec.envelope_set, inside, horizon);
                for (auto& [child, par] : sub) parent[child] = par;
                homes[m].push_back({rec.part.vertices, inside});
            } else {
                for (int64_t k = 0;; ++k) {
                    auto member_vs = rec.part.family_member(k);
                    bool within = true;
                    for (const VertexId& v : member_vs)
                        if (v.copy > horizon) within = false;
                    if (!within) break;
                    Epvs member = Epvs::of_vertices(pres, member_vs);
                    Epvs bnd = adhesion_set(pres, member);
                    auto [outside, inside] = least_attachment_edge(pres, bnd, member);
                    parent[inside] = outside;
                    st.attachment_edges.push_back({static_cast<int64_t>(m), inside, outside});
                    auto sub = certified_bfs_parents(pres, member, inside, horizon);
                    for (auto& [child, par] : sub) parent[child] = par;
                }
            }
        }
    }

    for (auto& [child, par] : parent) st.edges.push_back({child, par});

    // ray certificates: tree path from the root to the deepest layer's
    // attachment point of the end's home component
    auto ends = enumerate_ends(pres);
    for (const End& e : ends) {
        if (!e.topological) continue;
        int32_t last_layer = static_cast<int32_t>(exh.components.size()) - 1;
        if (last_layer < 0) continue;
        // home at the last layer
        Epvs meet = exh.layers[static_cast<size_t>(last_layer)] & e.component;
        int64_t deep = meet.max_threshold() + 2;
        for (int32_t i = 0; i < pres.period_of(e.tail); ++i)
            if (auto mx = meet.strand(e.tail, i).max_if_finite()) deep = std::max(deep, *mx + 2);
        VertexId v = e.representative.deep_vertex(deep);
        const HomeInfo* home = nullptr;
        for (const HomeInfo& h : homes[static_cast<size_t>(last_layer)])
            if (h.component.contains(v)) home = &h;
        if (home == nullptr)
            throw std::runtime_error("spanning tree: end without a home component");
        std::vector<VertexId> ray{home->inside};
        VertexId cur = home->inside;
        int64_t fuel = 100000;
        while (cur != st.root && fuel-- > 0) {
            auto it = parent.find(cur);
            if (it == parent.end())
                throw std::runtime_error("spanning tree: broken certificate path");
            cur = it->second;
            ray.push_back(cur);
        }
        if (cur != st.root) throw std::runtime_error("spanning tree: certificate path diverged");
        std::reverse(ray.begin(), ray.end());
        st.ray_certificates.push_back({e.id, std::move(ray)});
    }
    return st;
}

std::string emit_dot(const EpgPresentation& pres, const SpanningTreePrefix& st) {
    (void)pres;
    std::ostringstream out;
    out << "graph spanningtree {\n  node [shape=point];\n";
    out << "  \"" << st.root.to_string() << "\" [shape=circle, label=root];\n";
    for (const auto& [child, parent] : st.edges)
        out << "  \"" << parent.to_string() << "\" -- \"" << child.to_string() << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace endscope
