#include "endscope/unfold.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace endscope {

int64_t FiniteGraph::edge_count() const {
    int64_t deg = 0;
    for (const auto& a : adj) deg += static_cast<int64_t>(a.size());
    return deg / 2;
}

FiniteGraph unfold(const EpgPresentation& pres, int64_t depth) {
    if (depth < 0) throw std::invalid_argument("unfold: depth must be >= 0");
    FiniteGraph g;
    for (int32_t c = 0; c < pres.core_count; ++c) g.vertices.push_back(VertexId::Core_(c));
    for (int32_t t = 0; t < pres.tail_count(); ++t)
        for (int64_t k = 0; k <= depth; ++k)
            for (int32_t i = 0; i < pres.period_of(t); ++i)
                g.vertices.push_back(VertexId::Tail_(t, k, i));
    for (size_t x = 0; x < g.vertices.size(); ++x)
        g.index[g.vertices[x]] = static_cast<int32_t>(x);
    g.adj.resize(g.vertices.size());
    g.boundary.assign(g.vertices.size(), 0);

    auto add_edge = [&g](const VertexId& u, const VertexId& v) {
        int32_t a = g.find(u), b = g.find(v);
        g.adj[static_cast<size_t>(a)].push_back(b);
        g.adj[static_cast<size_t>(b)].push_back(a);
    };

    for (auto [u, v] : pres.core_edges) add_edge(VertexId::Core_(u), VertexId::Core_(v));
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        for (auto [c, i] : spec.attach) add_edge(VertexId::Core_(c), VertexId::Tail_(t, 0, i));
        for (int64_t k = 0; k <= depth; ++k)
            for (auto [i, j] : spec.intra)
                add_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k, j));
        for (int64_t k = 0; k + 1 <= depth; ++k)
            for (auto [i, j] : spec.inter)
                add_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k + 1, j));
        for (const HubRule& r : spec.hubs)
            for (int64_t k = r.start; k <= depth; k += r.stride)
                add_edge(VertexId::Core_(r.core), VertexId::Tail_(t, k, r.strand));

        // boundary flags: has a neighbor beyond the unfolding depth
        if (!spec.inter.empty())
            for (auto [i, j] : spec.inter) {
                (void)j;
                int32_t x = g.find(VertexId::Tail_(t, depth, i));
                if (x >= 0) g.boundary[static_cast<size_t>(x)] = 1;
            }
        for (const HubRule& r : spec.hubs) {
            // hubs always have rule targets beyond any finite depth
            int32_t h = g.find(VertexId::Core_(r.core));
            if (h >= 0) g.boundary[static_cast<size_t>(h)] = 1;
        }
    }
    return g;
}

std::vector<int32_t> finite_components(const FiniteGraph& g,
                                       const std::function<bool(int32_t)>& keep) {
    std::vector<int32_t> comp(g.size(), -1);
    int32_t next = 0;
    for (size_t s = 0; s < g.size(); ++s) {
        if (comp[s] != -1 || !keep(static_cast<int32_t>(s))) continue;
        std::deque<int32_t> q{static_cast<int32_t>(s)};
        comp[s] = next;
        while (!q.empty()) {
            int32_t v = q.front();
            q.pop_front();
            for (int32_t w : g.adj[static_cast<size_t>(v)]) {
                if (comp[static_cast<size_t>(w)] != -1 || !keep(w)) continue;
                comp[static_cast<size_t>(w)] = next;
                q.push_back(w);
            }
        }
        ++next;
    }
    return comp;
}

std::vector<int64_t> finite_bfs(const FiniteGraph& g, const std::vector<int32_t>& sources,
                                const std::function<bool(int32_t)>& keep) {
    std::vector<int64_t> dist(g.size(), -1);
    std::deque<int32_t> q;
    for (int32_t s : sources) {
        if (s < 0 || !keep(s)) continue;
        if (dist[static_cast<size_t>(s)] == 0) continue;
        dist[static_cast<size_t>(s)] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        int32_t v = q.front();
        q.pop_front();
        for (int32_t w : g.adj[static_cast<size_t>(v)]) {
            if (!keep(w) || dist[static_cast<size_t>(w)] != -1) continue;
            dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
            q.push_back(w);
        }
    }
    return dist;
}

}  // namespace endscope
