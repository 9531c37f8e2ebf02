#include "endscope/envelope.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "endscope/ends.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

std::vector<GraphPart> components_of_complement(const EpgPresentation& pres, const Epvs& s) {
    return analyze_complement(pres, s).parts;
}

Epvs adhesion_set(const EpgPresentation& pres, const Epvs& component) {
    return neighbors(pres, component) - component;
}

AdhesionReport finite_adhesion(const EpgPresentation& pres, const Epvs& s) {
    AdhesionReport rep;
    for (const GraphPart& part : analyze_complement(pres, s).parts) {
        AdhesionReport::Line line;
        if (part.family) {
            Epvs member = Epvs::of_vertices(pres, part.family_base);
            Epvs n = adhesion_set(pres, member);
            line.adhesion_size = n.size_if_finite();
            line.description = "family(stride " + std::to_string(part.family_stride) + ")";
        } else {
            Epvs n = adhesion_set(pres, part.vertices);
            line.adhesion_size = n.size_if_finite();
            line.description = part.infinite ? "infinite component" : "finite component";
            if (!line.adhesion_size) {
                rep.finite_adhesion = false;
                if (!rep.witness) rep.witness = {part.vertices, n};
            }
        }
        rep.component_families.push_back(std::move(line));
    }
    return rep;
}

// ---------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------

namespace {

// Boundary-aware connectivity probe on an unfolding: every member of the
// set with copy <= window/4 must reach the least member inside the
// window-restricted induced subgraph.
bool connected_on_unfolding(const EpgPresentation& pres, const Epvs& set, int64_t window) {
    FiniteGraph g = unfold(pres, window);
    auto keep = [&g, &set](int32_t x) { return set.contains(g.vertices[static_cast<size_t>(x)]); };
    auto least = set.min_vertex();
    if (!least) return true;
    int32_t s = g.find(*least);
    if (s < 0) return true;  // root beyond the window; nothing to say
    auto dist = finite_bfs(g, {s}, keep);
    for (size_t x = 0; x < g.size(); ++x) {
        const VertexId& v = g.vertices[x];
        if (!set.contains(v)) continue;
        if (v.is_tail() && v.copy > window / 4) continue;
        if (dist[x] < 0) return false;
    }
    return true;
}

}  // namespace

EnvelopeCheck verify_envelope(const EpgPresentation& pres, const Epvs& u, const Epvs& u_star) {
    EnvelopeCheck check;
    check.superset = u.subset_of(u_star);
    if (!check.superset) check.message += "U not contained in U*; ";

    int64_t window = std::max<int64_t>(40, 4 * (u_star.max_threshold() + u_star.period_lcm()) + 16);
    check.connected = !u_star.is_empty() && is_connected_induced(pres, u_star) &&
                      connected_on_unfolding(pres, u_star, window);
    if (!check.connected) check.message += "U* not connected; ";

    AdhesionReport rep = finite_adhesion(pres, u_star);
    check.adhesion = rep.finite_adhesion;
    if (!check.adhesion) check.message += "U* has a component with infinite adhesion; ";

    auto ends = enumerate_ends(pres);
    std::set<int32_t> cu, cs;
    for (const End& e : closure(pres, u, ends)) cu.insert(e.id);
    for (const End& e : closure(pres, u_star, ends)) cs.insert(e.id);
    check.closure_equal = cu == cs;
    if (!check.closure_equal) check.message += "closure changed; ";
    return check;
}

// ---------------------------------------------------------------------
// envelope construction
//
// Offending components (infinite adhesion) are repaired by absorbing
// whole directions that meet the offending boundary infinitely, plus
// hubs inside the offender with infinite local degree. Both kinds of
// addition preserve the closure; there are finitely many of either, so
// the loop terminates. A final phase restores connectivity with whole
// directions, hubs, and shortest connecting paths, none of which can
// reintroduce infinite adhesion.
// ---------------------------------------------------------------------

namespace {

std::vector<VertexId> connecting_path(const EpgPresentation& pres, const Epvs& from_part,
                                      const Epvs& other_parts) {
    VertexId start = *from_part.min_vertex();
    int64_t depth = (start.is_tail() ? start.copy : 0) + other_parts.max_threshold() +
                    2 * other_parts.period_lcm() + 16;
    for (int rounds = 0; rounds < 8; ++rounds, depth *= 2) {
        FiniteGraph g = unfold(pres, depth);
        int32_t s = g.find(start);
        if (s < 0) continue;
        auto dist = finite_bfs(g, {s}, [](int32_t) { return true; });
        int32_t best = -1;
        for (size_t x = 0; x < g.size(); ++x) {
            if (dist[x] < 0 || !other_parts.contains(g.vertices[x])) continue;
            if (best < 0 || dist[x] < dist[static_cast<size_t>(best)] ||
                (dist[x] == dist[static_cast<size_t>(best)] &&
                 g.vertices[x] < g.vertices[static_cast<size_t>(best)]))
                best = static_cast<int32_t>(x);
        }
        if (best < 0) continue;
        std::vector<VertexId> rev{g.vertices[static_cast<size_t>(best)]};
        int32_t cur = best;
        while (cur != s) {
            int32_t nxt = -1;
            for (int32_t w : g.adj[static_cast<size_t>(cur)]) {
                if (dist[static_cast<size_t>(w)] != dist[static_cast<size_t>(cur)] - 1) continue;
                if (nxt < 0 ||
                    g.vertices[static_cast<size_t>(w)] < g.vertices[static_cast<size_t>(nxt)])
                    nxt = w;
            }
            cur = nxt;
            rev.push_back(g.vertices[static_cast<size_t>(cur)]);
        }
        return rev;
    }
    throw std::runtime_error("envelope: connecting path not found (internal error)");
}

}  // namespace

Epvs envelope(const EpgPresentation& pres, const Epvs& u) {
    require_valid(pres);
    if (u.is_empty()) throw std::invalid_argument("envelope: U must be nonempty");
    if (!is_connected(pres))
        throw std::invalid_argument("envelope: presentation is not connected");

    std::vector<GraphPart> directions;
    for (const GraphPart& part : analyze_complement(pres, Epvs::all_cores(pres)).parts)
        if (part.infinite) directions.push_back(part);

    Epvs u_star = u;
    int64_t bound = static_cast<int64_t>(directions.size()) + pres.core_count + 2;

    // adhesion phase
    for (int64_t round = 0;; ++round) {
        if (round > bound)
            throw std::runtime_error("envelope: adhesion loop exceeded its bound");
        std::vector<GraphPart> parts = analyze_complement(pres, u_star).parts;
        Epvs adds = Epvs::empty_like(pres);
        bool offended = false;
        for (const GraphPart& part : parts) {
            if (part.family) continue;  // finite members never offend
            Epvs boundary = adhesion_set(pres, part.vertices);
            if (boundary.is_finite()) continue;
            offended = true;
            for (const GraphPart& dir : directions)
                if (boundary.infinitely_intersects(dir.vertices))
                    adds = adds | dir.vertices;
            for (int32_t h : pres.hub_cores()) {
                if (!part.vertices.core_member(h)) continue;
                Epvs nh = neighbors(pres, VertexId::Core_(h));
                if (!(nh & boundary).is_finite() || !(nh & part.vertices).is_finite())
                    adds.insert(VertexId::Core_(h));
            }
        }
        if (!offended) break;
        if ((adds - u_star).is_empty())
            throw std::runtime_error("envelope: adhesion offense with no repair (internal error)");
        u_star = u_star | adds;
    }

    // connectivity phase
    for (int64_t round = 0;; ++round) {
        if (round > bound + 1000)
            throw std::runtime_error("envelope: connectivity loop exceeded its bound");
        std::vector<GraphPart> parts = analyze_complement(pres, u_star.complement()).parts;
        if (parts.size() <= 1) break;

        bool merged = false;
        for (const GraphPart& dir : directions) {
            if (dir.vertices.subset_of(u_star)) continue;
            if (u_star.infinitely_intersects(dir.vertices)) {
                u_star = u_star | dir.vertices;
                merged = true;
            }
        }
        for (int32_t h : pres.hub_cores()) {
            if (u_star.core_member(h)) continue;
            if (!(neighbors(pres, VertexId::Core_(h)) & u_star).is_finite()) {
                u_star.insert(VertexId::Core_(h));
                merged = true;
            }
        }
        if (merged) continue;

        for (const GraphPart& part : parts)
            if (part.family)
                throw std::runtime_error(
                    "envelope: infinitely many pieces left unconnected (internal error)");
        // finitely many pieces: attach the first to the nearest other piece
        Epvs rest = u_star - parts[0].vertices;
        auto path = connecting_path(pres, parts[0].vertices, rest);
        for (const VertexId& v : path) u_star.insert(v);
    }

    EnvelopeCheck check = verify_envelope(pres, u, u_star);
    if (!check.ok())
        throw std::runtime_error("envelope: postcondition verification failed: " + check.message);
    return u_star;
}

}  // namespace endscope
