#include "endscope/ends.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "endscope/unfold.hpp"

namespace endscope {

VertexId PeriodicRay::at(int64_t n) const {
    int64_t np = static_cast<int64_t>(prefix.size());
    if (n < np) return prefix[static_cast<size_t>(n)];
    int64_t m = n - np;
    int64_t reps = m / static_cast<int64_t>(segment.size());
    const VertexId& base = segment[static_cast<size_t>(m % static_cast<int64_t>(segment.size()))];
    return VertexId::Tail_(base.tail, base.copy + reps * shift, base.strand);
}

std::vector<VertexId> PeriodicRay::first_n(int64_t n) const {
    std::vector<VertexId> out;
    out.reserve(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

Epvs PeriodicRay::vertex_set(const EpgPresentation& pres) const {
    Epvs out = Epvs::of_vertices(pres, prefix);
    for (const VertexId& v : segment)
        out.set_strand(v.tail, v.strand,
                       out.strand(v.tail, v.strand) | Upis::arithmetic(v.copy, shift));
    return out;
}

VertexId PeriodicRay::deep_vertex(int64_t depth) const {
    VertexId v = segment[0];
    while (v.copy < depth) v.copy += shift;
    return v;
}

bool adjacent(const EpgPresentation& pres, const VertexId& u, const VertexId& v) {
    return neighbors(pres, u).contains(v);
}

void require_valid_ray(const EpgPresentation& pres, const PeriodicRay& ray) {
    if (ray.segment.empty() || ray.shift < 1)
        throw std::runtime_error("invalid ray: empty segment or nonpositive shift");
    int64_t span = 0;
    for (const VertexId& v : ray.segment) {
        if (!pres.valid_vertex(v) || !v.is_tail())
            throw std::runtime_error("invalid ray: bad segment vertex");
        span = std::max(span, v.copy);
    }
    // enough vertices that any possible collision between shifted segment
    // copies (window width / shift repetitions) would surface
    int64_t need = static_cast<int64_t>(ray.prefix.size()) +
                   static_cast<int64_t>(ray.segment.size()) * (span / ray.shift + 3);
    auto verts = ray.first_n(need);
    std::set<VertexId> seen;
    for (size_t i = 0; i < verts.size(); ++i) {
        if (!seen.insert(verts[i]).second)
            throw std::runtime_error("invalid ray: repeated vertex " + verts[i].to_string());
        if (i > 0 && !adjacent(pres, verts[i - 1], verts[i]))
            throw std::runtime_error("invalid ray: non-adjacent step " +
                                     verts[i - 1].to_string() + " -- " + verts[i].to_string());
    }
}

namespace {

// ------------------------------------------------------------------
// Canonical ray construction inside one infinite direction component.
//
// Product graph on (strand, copy residue mod delta) restricted to the
// component's eventual pattern; a simple cycle with positive total copy
// shift lifts to a one-way infinite simple path inside the component.
// ------------------------------------------------------------------

struct ProductNode {
    int32_t strand;
    int64_t residue;
    bool operator<(const ProductNode& o) const {
        return strand != o.strand ? strand < o.strand : residue < o.residue;
    }
    bool operator==(const ProductNode& o) const {
        return strand == o.strand && residue == o.residue;
    }
};

struct CycleSearch {
    const EpgPresentation& pres;
    int32_t tail;
    const Epvs& comp;
    int64_t delta;
    int64_t base;  // all residues taken relative to this copy level

    bool member(int32_t strand, int64_t residue) const {
        return comp.strand(tail, strand).contains(base + ((residue % delta) + delta) % delta);
    }

    // neighbors of (strand, residue) with the copy shift of the step
    std::vector<std::pair<ProductNode, int64_t>> steps(const ProductNode& n) const {
        std::vector<std::pair<ProductNode, int64_t>> out;
        const TailSpec& spec = pres.tails[static_cast<size_t>(tail)];
        auto push = [&out, this](int32_t s, int64_t r, int64_t shift) {
            int64_t rr = ((r % delta) + delta) % delta;
            if (member(s, rr)) out.push_back({{s, rr}, shift});
        };
        for (auto [i, j] : spec.intra) {
            if (i == n.strand) push(j, n.residue, 0);
            if (j == n.strand) push(i, n.residue, 0);
        }
        for (auto [i, j] : spec.inter) {
            if (i == n.strand) push(j, n.residue + 1, +1);
            if (j == n.strand) push(i, n.residue - 1, -1);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    // DFS for a simple product cycle with positive total shift,
    // lexicographically least by construction order.
    bool dfs(const ProductNode& start, ProductNode cur, int64_t shift,
             std::vector<ProductNode>& path, std::vector<int64_t>& shifts,
             std::set<ProductNode>& on_path, int64_t fuel) const {
        if (fuel <= 0) return false;
        for (auto& [next, ds] : steps(cur)) {
            if (next == start) {
                if (shift + ds > 0) {
                    shifts.push_back(ds);
                    return true;
                }
                continue;
            }
            if (on_path.count(next)) continue;
            on_path.insert(next);
            path.push_back(next);
            shifts.push_back(ds);
            if (dfs(start, next, shift + ds, path, shifts, on_path, fuel - 1)) return true;
            on_path.erase(next);
            path.pop_back();
            shifts.pop_back();
        }
        return false;
    }
};

PeriodicRay build_ray(const EpgPresentation& pres, int32_t tail, const Epvs& comp) {
    int64_t delta = 1, base = 0;
    for (int32_t i = 0; i < pres.period_of(tail); ++i) {
        const Upis& u = comp.strand(tail, i);
        delta = lcm64(delta, u.period());
        base = std::max(base, u.threshold());
    }
    CycleSearch cs{pres, tail, comp, delta, base};

    std::vector<ProductNode> starts;
    for (int32_t i = 0; i < pres.period_of(tail); ++i)
        for (int64_t r = 0; r < delta; ++r)
            if (cs.member(i, r)) starts.push_back({i, r});
    std::sort(starts.begin(), starts.end());

    std::vector<ProductNode> cycle;
    std::vector<int64_t> shifts;
    for (const ProductNode& s : starts) {
        std::vector<ProductNode> path{s};
        std::vector<int64_t> sh;
        std::set<ProductNode> on_path{s};
        if (cs.dfs(s, s, 0, path, sh, on_path, 4 * delta * pres.period_of(tail) + 64)) {
            cycle = path;
            shifts = sh;
            break;
        }
    }
    if (cycle.empty())
        throw std::runtime_error("ray construction: no forward cycle found (internal error)");

    int64_t total = 0;
    for (int64_t s : shifts) total += s;

    // lift: choose a start copy deep enough that every cycle vertex stays
    // in the purely periodic region
    int64_t dip = 0, acc = 0;
    for (int64_t s : shifts) {
        acc += s;
        dip = std::min(dip, acc);
    }
    int64_t c0 = base + cycle[0].residue;
    while (c0 + dip < base) c0 += delta;
    std::vector<VertexId> segment;
    acc = 0;
    segment.push_back(VertexId::Tail_(tail, c0, cycle[0].strand));
    for (size_t i = 1; i < cycle.size(); ++i) {
        acc += shifts[i - 1];
        segment.push_back(VertexId::Tail_(tail, c0 + acc, cycle[i].strand));
    }

    PeriodicRay ray;
    ray.segment = std::move(segment);
    ray.shift = total;
    return ray;
}

// Lexicographic BFS path between two vertices inside an Epvs, searched on
// a sufficiently deep unfolding. Returns vertices from `from` to `to`.
std::vector<VertexId> path_within(const EpgPresentation& pres, const Epvs& comp,
                                  const VertexId& from, const VertexId& to) {
    int64_t depth = 4;
    for (const VertexId* v : {&from, &to})
        if (v->is_tail()) depth = std::max(depth, v->copy);
    depth += comp.max_threshold() + 2 * comp.period_lcm() + 4;
    for (int rounds = 0; rounds < 8; ++rounds, depth *= 2) {
        FiniteGraph g = unfold(pres, depth);
        auto keep = [&g, &comp](int32_t x) {
            return comp.contains(g.vertices[static_cast<size_t>(x)]);
        };
        int32_t s = g.find(from), e = g.find(to);
        if (s < 0 || e < 0) continue;
        auto dist = finite_bfs(g, {s}, keep);
        if (dist[static_cast<size_t>(e)] < 0) continue;
        // walk back choosing the least predecessor
        std::vector<VertexId> rev{to};
        int32_t cur = e;
        while (cur != s) {
            int32_t best = -1;
            for (int32_t w : g.adj[static_cast<size_t>(cur)]) {
                if (!keep(w) || dist[static_cast<size_t>(w)] !=
                                    dist[static_cast<size_t>(cur)] - 1)
                    continue;
                if (best < 0 ||
                    g.vertices[static_cast<size_t>(w)] < g.vertices[static_cast<size_t>(best)])
                    best = w;
            }
            cur = best;
            rev.push_back(g.vertices[static_cast<size_t>(cur)]);
        }
        std::reverse(rev.begin(), rev.end());
        return rev;
    }
    throw std::runtime_error("path_within: endpoints not connected (internal error)");
}

}  // namespace

std::vector<End> enumerate_ends(const EpgPresentation& pres) {
    require_valid(pres);
    if (!is_connected(pres))
        throw std::invalid_argument("enumerate_ends: presentation is not connected");

    ComplementAnalysis strips = analyze_complement(pres, Epvs::all_cores(pres));
    std::vector<End> ends;
    for (const GraphPart& part : strips.parts) {
        if (!part.infinite) continue;
        End e;
        e.component = part.vertices;
        int32_t tail = -1;
        for (int32_t t = 0; t < pres.tail_count() && tail < 0; ++t)
            for (int32_t i = 0; i < pres.period_of(t); ++i)
                if (!part.vertices.strand(t, i).empty()) {
                    tail = t;
                    break;
                }
        e.tail = tail;
        for (int32_t i = 0; i < pres.period_of(tail); ++i)
            if (!part.vertices.strand(tail, i).is_finite()) e.strands.push_back(i);

        PeriodicRay ray = build_ray(pres, tail, part.vertices);
        // root the ray at the component's least vertex
        VertexId root = *part.vertices.min_vertex();
        if (root != ray.segment[0]) {
            auto pref = path_within(pres, part.vertices, root, ray.segment[0]);
            // trim at the first vertex already on the periodic lift
            Epvs lift = Epvs::empty_like(pres);
            for (const VertexId& v : ray.segment)
                lift.set_strand(v.tail, v.strand,
                                lift.strand(v.tail, v.strand) | Upis::arithmetic(v.copy, ray.shift));
            std::vector<VertexId> prefix;
            for (const VertexId& v : pref) {
                if (lift.contains(v)) break;
                prefix.push_back(v);
            }
            // rotate/shift the segment so it starts at the first lift vertex
            VertexId hit = pref[prefix.size()];
            int64_t rot = -1, lifts = 0;
            for (size_t j = 0; j < ray.segment.size(); ++j) {
                const VertexId& b = ray.segment[j];
                if (b.strand == hit.strand && (hit.copy - b.copy) % ray.shift == 0 &&
                    hit.copy >= b.copy) {
                    rot = static_cast<int64_t>(j);
                    lifts = (hit.copy - b.copy) / ray.shift;
                    break;
                }
            }
            if (rot < 0)
                throw std::runtime_error("ray rooting failed (internal error)");
            std::vector<VertexId> seg;
            int64_t n = static_cast<int64_t>(ray.segment.size());
            for (int64_t j = 0; j < n; ++j) {
                const VertexId& b = ray.segment[static_cast<size_t>((rot + j) % n)];
                int64_t wrap = (rot + j) >= n ? 1 : 0;
                seg.push_back(
                    VertexId::Tail_(b.tail, b.copy + (lifts + wrap) * ray.shift, b.strand));
            }
            ray.segment = std::move(seg);
            ray.prefix = std::move(prefix);
        }
        require_valid_ray(pres, ray);
        e.representative = ray;
        e.dominators = dominators(pres, e);
        e.topological = e.dominators.empty();
        ends.push_back(std::move(e));
    }

    std::sort(ends.begin(), ends.end(), [](const End& a, const End& b) {
        if (a.tail != b.tail) return a.tail < b.tail;
        int32_t sa = a.strands.empty() ? 0 : a.strands.front();
        int32_t sb = b.strands.empty() ? 0 : b.strands.front();
        if (sa != sb) return sa < sb;
        return *a.component.min_vertex() < *b.component.min_vertex();
    });
    for (size_t i = 0; i < ends.size(); ++i) ends[i].id = static_cast<int32_t>(i);
    return ends;
}

Epvs component_of(const EpgPresentation& pres, const Epvs& finite_x, const End& end) {
    if (!finite_x.is_finite())
        throw std::invalid_argument("component_of: X must be finite");
    ComplementAnalysis an = analyze_complement(pres, finite_x);
    int64_t deep = 1;
    for (int32_t t = 0; t < pres.tail_count(); ++t)
        for (int32_t i = 0; i < pres.period_of(t); ++i)
            if (auto m = finite_x.strand(t, i).max_if_finite()) deep = std::max(deep, *m + 1);
    VertexId v = end.representative.deep_vertex(deep);
    int32_t part = an.part_of(v);
    if (part < 0 || !an.parts[static_cast<size_t>(part)].infinite)
        throw std::runtime_error("component_of: end vertex not in an infinite part");
    return an.parts[static_cast<size_t>(part)].vertices;
}

std::vector<End> closure(const EpgPresentation&, const Epvs& m, const std::vector<End>& ends) {
    std::vector<End> out;
    for (const End& e : ends)
        if (m.infinitely_intersects(e.component)) out.push_back(e);
    return out;
}

std::vector<End> closure(const EpgPresentation& pres, const Epvs& m) {
    return closure(pres, m, enumerate_ends(pres));
}

std::vector<int32_t> dominators(const EpgPresentation& pres, const End& end) {
    std::set<int32_t> doms;
    const TailSpec& spec = pres.tails[static_cast<size_t>(end.tail)];
    for (const HubRule& r : spec.hubs) {
        Upis targets = Upis::arithmetic(r.start, r.stride);
        if (end.component.strand(end.tail, r.strand).infinitely_intersects(targets))
            doms.insert(r.core);
    }
    return std::vector<int32_t>(doms.begin(), doms.end());
}

std::vector<End> closure_of_neighborhood(const EpgPresentation& pres, const Epvs& w) {
    if (!w.is_finite())
        throw std::invalid_argument("closure_of_neighborhood: W must be finite");
    return closure(pres, neighbors(pres, w));
}

}  // namespace endscope
