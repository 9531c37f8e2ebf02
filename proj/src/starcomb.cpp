#include "endscope/starcomb.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "endscope/engine.hpp"
#include "endscope/relativize.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

std::vector<VertexId> PathFamily::member(int64_t m) const {
    std::vector<VertexId> out;
    out.reserve(base.size());
    for (const VertexId& v : base) {
        if (v.is_core())
            out.push_back(v);
        else
            out.push_back(VertexId::Tail_(v.tail, v.copy + m * stride, v.strand));
    }
    return out;
}

// ---------------------------------------------------------------------
// check
// ---------------------------------------------------------------------

CheckResult check_certificate(const EpgPresentation& pres, const Certificate& cert, int64_t n,
                              const Epvs& u) {
    auto fail = [](std::string msg) { return CheckResult{false, std::move(msg)}; };
    if (cert.paths.empty()) return fail("certificate has no path families");
    if (cert.attachment.is_finite()) return fail("attachment set is finite");
    if (!cert.attachment.subset_of(u)) return fail("attachment not inside the host set");

    Epvs spine_set = Epvs::empty_like(pres);
    if (cert.kind == Certificate::Kind::Comb) {
        try {
            require_valid_ray(pres, cert.spine);
        } catch (const std::exception& e) {
            return fail(std::string("bad spine: ") + e.what());
        }
        spine_set = cert.spine.vertex_set(pres);
    }

    // first n paths: round-robin over families by member index
    std::vector<std::vector<VertexId>> materialized;
    int64_t per = (n + static_cast<int64_t>(cert.paths.size()) - 1) /
                  static_cast<int64_t>(cert.paths.size());
    for (int64_t m = 0; m < per && static_cast<int64_t>(materialized.size()) < n; ++m)
        for (const PathFamily& fam : cert.paths) {
            if (static_cast<int64_t>(materialized.size()) >= n) break;
            materialized.push_back(fam.member(m));
        }

    std::set<VertexId> used;
    for (const auto& path : materialized) {
        if (path.empty()) return fail("empty path");
        for (size_t i = 0; i < path.size(); ++i) {
            if (!pres.valid_vertex(path[i])) return fail("invalid path vertex");
            if (i > 0 && !adjacent(pres, path[i - 1], path[i]))
                return fail("non-adjacent path step " + path[i - 1].to_string() + " -- " +
                            path[i].to_string());
        }
        const VertexId& tip = path.back();
        if (!cert.attachment.contains(tip))
            return fail("path endpoint " + tip.to_string() + " outside the attachment set");
        if (!u.contains(tip)) return fail("path endpoint outside the host set");
        if (cert.kind == Certificate::Kind::Star) {
            if (!adjacent(pres, cert.center, path.front()))
                return fail("path start not adjacent to the center");
            for (const VertexId& v : path)
                if (v == cert.center) return fail("center appears inside a path");
        } else {
            if (!spine_set.contains(path.front()))
                return fail("path start " + path.front().to_string() + " not on the spine");
            for (size_t i = 1; i < path.size(); ++i)
                if (spine_set.contains(path[i]))
                    return fail("path returns to the spine at " + path[i].to_string());
        }
        for (const VertexId& v : path) {
            bool first_on_spine =
                cert.kind == Certificate::Kind::Comb && v == path.front();
            if (!used.insert(v).second && !first_on_spine)
                return fail("paths overlap at " + v.to_string());
        }
    }
    return {};
}

// ---------------------------------------------------------------------
// construction helpers
// ---------------------------------------------------------------------

namespace {

// Direct-edge path families from the infinite tail part of a leaf set.
std::pair<std::vector<PathFamily>, Epvs> direct_edge_families(const EpgPresentation& pres,
                                                              const Epvs& leaves) {
    std::vector<PathFamily> fams;
    Epvs covered = Epvs::empty_like(pres);
    for (int32_t t = 0; t < pres.tail_count(); ++t)
        for (int32_t i = 0; i < pres.period_of(t); ++i) {
            const Upis& s = leaves.strand(t, i);
            if (s.is_finite()) continue;
            const auto& pat = s.pattern_bits();
            for (int64_t x = 0; x < s.period(); ++x) {
                if (!pat[static_cast<size_t>(x)]) continue;
                PathFamily f;
                f.base = {VertexId::Tail_(t, s.threshold() + x, i)};
                f.stride = s.period();
                fams.push_back(f);
                covered.set_strand(
                    t, i, covered.strand(t, i) | Upis::arithmetic(s.threshold() + x, s.period()));
            }
        }
    return {std::move(fams), std::move(covered)};
}

// Lexicographic BFS path from `from` to the nearest vertex of `targets`,
// all inside `domain`, searched on an unfolding of adaptive depth.
std::vector<VertexId> path_to_set(const EpgPresentation& pres, const Epvs& domain,
                                  const VertexId& from, const Epvs& targets) {
    int64_t depth = from.is_tail() ? from.copy : 0;
    depth += domain.max_threshold() + 2 * domain.period_lcm() + 8;
    for (int rounds = 0; rounds < 8; ++rounds, depth *= 2) {
        FiniteGraph g = unfold(pres, depth);
        auto keep = [&g, &domain](int32_t x) {
            return domain.contains(g.vertices[static_cast<size_t>(x)]);
        };
        int32_t s = g.find(from);
        if (s < 0) continue;
        auto dist = finite_bfs(g, {s}, keep);
        int32_t best = -1;
        for (size_t x = 0; x < g.size(); ++x) {
            if (dist[x] < 0 || !targets.contains(g.vertices[x])) continue;
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
                if (!keep(w) || dist[static_cast<size_t>(w)] != dist[static_cast<size_t>(cur)] - 1)
                    continue;
                if (nxt < 0 ||
                    g.vertices[static_cast<size_t>(w)] < g.vertices[static_cast<size_t>(nxt)])
                    nxt = w;
            }
            cur = nxt;
            rev.push_back(g.vertices[static_cast<size_t>(cur)]);
        }
        std::reverse(rev.begin(), rev.end());
        return rev;
    }
    throw std::runtime_error("path_to_set: no path found (internal error)");
}

int64_t copy_span(const std::vector<VertexId>& path) {
    int64_t lo = INT64_MAX, hi = 0;
    for (const VertexId& v : path)
        if (v.is_tail()) {
            lo = std::min(lo, v.copy);
            hi = std::max(hi, v.copy);
        }
    return lo == INT64_MAX ? 0 : hi - lo;
}

Certificate comb_in_direction(const EpgPresentation& pres, const Epvs& u, const End& end) {
    Epvs uc = u & end.component;
    // teeth are chosen on one strand with an infinite pattern
    int32_t strand = -1;
    for (int32_t i = 0; i < pres.period_of(end.tail); ++i)
        if (!uc.strand(end.tail, i).is_finite()) {
            strand = i;
            break;
        }
    if (strand < 0) throw std::logic_error("comb_in_direction: no infinite strand");
    const Upis& us = uc.strand(end.tail, strand);

    const PeriodicRay& spine = end.representative;
    Epvs spine_set = spine.vertex_set(pres);
    int64_t spine_top = 0;
    for (const VertexId& v : spine.prefix)
        if (v.is_tail()) spine_top = std::max(spine_top, v.copy);
    for (const VertexId& v : spine.segment) spine_top = std::max(spine_top, v.copy);

    // first tooth: deep enough that everything around it is purely periodic
    int64_t depth0 = std::max({us.threshold(), end.component.max_threshold(), spine_top}) +
                     2 * end.component.period_lcm() + 2;
    int64_t c0 = -1;
    for (int64_t k = depth0;; ++k)
        if (us.contains(k)) {
            c0 = k;
            break;
        }
    VertexId tooth = VertexId::Tail_(end.tail, c0, strand);

    // path from the tooth to the spine inside the direction, then reversed
    std::vector<VertexId> path = path_to_set(pres, end.component, tooth, spine_set);
    std::reverse(path.begin(), path.end());  // spine hit first, tooth last
    // trim so only the first vertex lies on the spine
    while (path.size() > 1 && spine_set.contains(path[1])) path.erase(path.begin());

    int64_t stride = lcm64(lcm64(spine.shift, us.period()), end.component.period_lcm());
    while (stride <= 2 * copy_span(path) + 2) stride += stride;

    Certificate cert;
    cert.kind = Certificate::Kind::Comb;
    cert.spine = spine;
    PathFamily fam;
    fam.base = path;
    fam.stride = stride;
    cert.paths = {fam};
    cert.attachment = Epvs::empty_like(pres);
    cert.attachment.set_strand(end.tail, strand, Upis::arithmetic(c0, stride));
    return cert;
}

// Star through infinitely many finite strip pieces hanging off a hub.
std::optional<Certificate> star_through_pieces(const EpgPresentation& pres, const Epvs& u,
                                               const std::vector<GraphPart>& strip_parts) {
    for (int32_t h : pres.hub_cores()) {
        for (const GraphPart& part : strip_parts) {
            if (!part.family) continue;
            int32_t t = part.family_tail;
            const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
            for (const HubRule& rule : spec.hubs) {
                if (rule.core != h) continue;
                Upis rule_targets = Upis::arithmetic(rule.start, rule.stride);
                for (const VertexId& target_base : part.family_base) {
                    if (target_base.strand != rule.strand) continue;
                    Upis m_target =
                        rule_targets.affine_preimage(target_base.copy, part.family_stride);
                    for (const VertexId& u_base : part.family_base) {
                        Upis m_u = u.strand(t, u_base.strand)
                                       .affine_preimage(u_base.copy, part.family_stride);
                        Upis m = m_target & m_u;
                        if (m.is_finite()) continue;
                        // purely periodic selection of members
                        int64_t m0 = -1;
                        for (int64_t k = m.threshold();; ++k)
                            if (m.contains(k)) {
                                m0 = k;
                                break;
                            }
                        int64_t mstep = m.period();
                        // path inside member m0 from the hub target to the U vertex
                        auto member = part.family_member(m0);
                        Epvs member_set = Epvs::of_vertices(pres, member);
                        VertexId from = VertexId::Tail_(
                            t, target_base.copy + m0 * part.family_stride, target_base.strand);
                        VertexId to = VertexId::Tail_(
                            t, u_base.copy + m0 * part.family_stride, u_base.strand);
                        std::vector<VertexId> path =
                            path_to_set(pres, member_set, from, Epvs::of_vertices(pres, {to}));
                        Certificate cert;
                        cert.kind = Certificate::Kind::Star;
                        cert.center = VertexId::Core_(h);
                        PathFamily fam;
                        fam.base = path;
                        fam.stride = part.family_stride * mstep;
                        cert.paths = {fam};
                        cert.attachment = Epvs::empty_like(pres);
                        cert.attachment.set_strand(
                            t, to.strand, Upis::arithmetic(to.copy, fam.stride));
                        return cert;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------
// star_or_comb
// ---------------------------------------------------------------------

Certificate star_or_comb(const EpgPresentation& pres, const Epvs& u) {
    require_valid(pres);
    if (u.is_finite())
        throw std::invalid_argument("star_or_comb: the query set must be infinite");
    if (!is_connected(pres))
        throw std::invalid_argument("star_or_comb: presentation is not connected");

    // 1) a hub adjacent to infinitely many U vertices: direct star
    for (int32_t h : pres.hub_cores()) {
        Epvs leaves = neighbors(pres, VertexId::Core_(h)) & u;
        if (leaves.is_finite()) continue;
        Certificate cert;
        cert.kind = Certificate::Kind::Star;
        cert.center = VertexId::Core_(h);
        auto [fams, covered] = direct_edge_families(pres, leaves);
        cert.paths = std::move(fams);
        cert.attachment = covered;
        return cert;
    }

    // 2) a direction meeting U infinitely: comb
    auto ends = enumerate_ends(pres);
    for (const End& e : ends)
        if (u.infinitely_intersects(e.component)) return comb_in_direction(pres, u, e);

    // 3) a hub attached to infinitely many U-carrying finite pieces
    ComplementAnalysis strips = analyze_complement(pres, Epvs::all_cores(pres));
    if (auto cert = star_through_pieces(pres, u, strips.parts)) return *cert;

    throw std::logic_error("star_or_comb: dichotomy exhausted (internal error)");
}

// ---------------------------------------------------------------------
// external_star_or_comb
// ---------------------------------------------------------------------

namespace {

// Appends one edge into the attachment host to every family member;
// the extension vertex is the least host-neighbor of the member tip,
// which shifts periodically for deep tips.
void extend_families_into(const EpgPresentation& pres, const Epvs& host,
                          std::vector<PathFamily>& fams, Epvs& attachment) {
    attachment = Epvs::empty_like(pres);
    for (PathFamily& fam : fams) {
        // re-base deep enough that the least host-neighbor shifts periodically
        int64_t lift = 0;
        int64_t threshold = host.max_threshold() + 2 * host.period_lcm() + 4;
        const VertexId& tip0 = fam.base.back();
        if (tip0.is_tail())
            while (tip0.copy + lift * fam.stride < threshold) ++lift;
        if (lift > 0) fam.base = fam.member(lift);

        const VertexId& tip = fam.base.back();
        Epvs nbrs = neighbors(pres, tip) & host;
        auto a0 = nbrs.min_vertex();
        if (!a0)
            throw std::runtime_error("external certificate: tip has no host neighbor");
        // confirm the choice shifts with the family
        VertexId tip1 = fam.member(1).back();
        Epvs nbrs1 = neighbors(pres, tip1) & host;
        VertexId want = *a0;
        if (want.is_tail()) want.copy += fam.stride;
        if (!nbrs1.contains(want) || *nbrs1.min_vertex() != want)
            throw std::runtime_error("external certificate: attachment not periodic");
        fam.base.push_back(*a0);
        if (a0->is_tail())
            attachment.set_strand(a0->tail, a0->strand,
                                  attachment.strand(a0->tail, a0->strand) |
                                      Upis::arithmetic(a0->copy, fam.stride));
        else
            attachment.insert(*a0);
    }
}

}  // namespace

Certificate external_star_or_comb(const EpgPresentation& pres, const Epvs& w, const Epvs& c) {
    require_valid(pres);
    Epvs a = neighbors(pres, c) - c;
    if (a.is_finite())
        throw std::invalid_argument("external_star_or_comb: N(C) is finite, nothing to attach");
    if (!a.subset_of(w) || c.intersects(w))
        throw std::invalid_argument("external_star_or_comb: C is not a component of G-W");

    // (i) hub inside C adjacent to infinitely many boundary vertices
    for (int32_t h : pres.hub_cores()) {
        if (!c.core_member(h)) continue;
        Epvs leaves = neighbors(pres, VertexId::Core_(h)) & a;
        if (leaves.is_finite()) continue;
        Certificate cert;
        cert.kind = Certificate::Kind::Star;
        cert.center = VertexId::Core_(h);
        auto [fams, covered] = direct_edge_families(pres, leaves);
        cert.paths = std::move(fams);
        cert.attachment = covered;
        return cert;
    }

    // (ii) run the dichotomy inside C on the contact vertices
    Epvs u0 = neighbors(pres, a) & c;
    Relativization rel = relativize(pres, c);
    Certificate inner = star_or_comb(rel.sub, rel.push_to_sub(u0));

    Certificate cert;
    cert.kind = inner.kind;
    if (inner.kind == Certificate::Kind::Star) {
        cert.center = rel.to_parent(inner.center);
    } else {
        PeriodicRay spine;
        for (const VertexId& v : inner.spine.prefix) spine.prefix.push_back(rel.to_parent(v));
        for (const VertexId& v : inner.spine.segment) spine.segment.push_back(rel.to_parent(v));
        int32_t sub_tail = inner.spine.segment.front().tail;
        spine.shift = inner.spine.shift * rel.tail_maps[static_cast<size_t>(sub_tail)].q;
        cert.spine = spine;
    }
    for (const PathFamily& f : inner.paths) {
        PathFamily pf;
        for (const VertexId& v : f.base) pf.base.push_back(rel.to_parent(v));
        // family shifts live in one derived tail; scale to parent copies
        int32_t sub_tail = -1;
        for (const VertexId& v : f.base)
            if (v.is_tail()) sub_tail = v.tail;
        if (sub_tail < 0)
            throw std::runtime_error("external certificate: core-only family (internal error)");
        pf.stride = f.stride * rel.tail_maps[static_cast<size_t>(sub_tail)].q;
        cert.paths.push_back(std::move(pf));
    }
    extend_families_into(pres, a, cert.paths, cert.attachment);
    return cert;
}

// ---------------------------------------------------------------------
// cofinal trees
// ---------------------------------------------------------------------

namespace {

struct SpanningStructure {
    VertexId root;
    std::unordered_map<VertexId, VertexId, VertexIdHash> explicit_parent;
    int64_t explicit_depth = 0;
    std::vector<std::vector<std::vector<TreePresentation::Rule>>> rules;
    std::vector<int64_t> rule_period;
};

// Canonical rooted spanning structure of a connected G: BFS parents with
// lexicographic tie-breaking, frozen into per-(strand, copy-residue)
// rules once the pattern repeats.
SpanningStructure build_spanning_structure(const EpgPresentation& pres) {
    using Rule = TreePresentation::Rule;
    int64_t base_q = 1;
    for (const auto& spec : pres.tails)
        for (const HubRule& r : spec.hubs) base_q = lcm64(base_q, r.stride);

    int64_t depth = 8 * base_q + 32;
    for (int rounds = 0; rounds < 6; ++rounds, depth *= 2) {
        FiniteGraph g = unfold(pres, depth);
        Epvs everything = Epvs::all_of(pres);
        VertexId root = *everything.min_vertex();
        auto keep = [](int32_t) { return true; };
        auto dist = finite_bfs(g, {g.find(root)}, keep);
        std::vector<int32_t> parent(g.size(), -1);
        for (size_t x = 0; x < g.size(); ++x) {
            if (dist[x] <= 0) continue;
            int32_t best = -1;
            for (int32_t w : g.adj[x]) {
                if (dist[static_cast<size_t>(w)] != dist[x] - 1) continue;
                if (best < 0 ||
                    g.vertices[static_cast<size_t>(w)] < g.vertices[static_cast<size_t>(best)])
                    best = w;
            }
            parent[x] = best;
        }

        // try to freeze rules with period M per tail, checking two windows
        SpanningStructure out;
        out.root = root;
        bool ok = true;
        out.rules.resize(pres.tails.size());
        out.rule_period.assign(pres.tails.size(), base_q);
        int64_t probe_lo = depth / 2;
        for (int32_t t = 0; t < pres.tail_count() && ok; ++t) {
            int64_t p = pres.period_of(t);
            int64_t M = base_q;
            auto rule_of = [&](int64_t k, int32_t i) -> std::optional<Rule> {
                int32_t x = g.find(VertexId::Tail_(t, k, i));
                if (x < 0 || parent[static_cast<size_t>(x)] < 0) return std::nullopt;
                const VertexId& pv = g.vertices[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                Rule r;
                if (pv.is_core()) {
                    r.kind = Rule::Kind::Core;
                    r.target = pv.core;
                } else if (pv.copy == k - 1) {
                    r.kind = Rule::Kind::InterPrev;
                    r.target = pv.strand;
                } else if (pv.copy == k) {
                    r.kind = Rule::Kind::Intra;
                    r.target = pv.strand;
                } else if (pv.copy == k + 1) {
                    r.kind = Rule::Kind::InterNext;
                    r.target = pv.strand;
                } else {
                    return std::nullopt;
                }
                return r;
            };
            out.rules[static_cast<size_t>(t)].assign(
                static_cast<size_t>(p), std::vector<Rule>(static_cast<size_t>(M)));
            for (int32_t i = 0; i < p && ok; ++i)
                for (int64_t r = 0; r < M && ok; ++r) {
                    auto r1 = rule_of(probe_lo + r, i);
                    auto r2 = rule_of(probe_lo + r + M, i);
                    auto r3 = rule_of(probe_lo + r + 2 * M, i);
                    if (!r1 || !r2 || !r3 || r1->kind != r2->kind || r1->target != r2->target ||
                        r1->kind != r3->kind || r1->target != r3->target) {
                        ok = false;
                        break;
                    }
                    int64_t residue = (probe_lo + r) % M;
                    out.rules[static_cast<size_t>(t)][static_cast<size_t>(i)]
                             [static_cast<size_t>(residue)] = *r1;
                }
            out.rule_period[static_cast<size_t>(t)] = M;
        }
        if (!ok) continue;

        out.explicit_depth = probe_lo;
        for (size_t x = 0; x < g.size(); ++x) {
            const VertexId& v = g.vertices[x];
            if (v.is_tail() && v.copy >= probe_lo) continue;
            if (parent[x] < 0) continue;
            out.explicit_parent[v] = g.vertices[static_cast<size_t>(parent[x])];
        }

        // certification: from every deep residue slot, rule chains must
        // make progress toward the explicit region
        bool certified = true;
        for (int32_t t = 0; t < pres.tail_count() && certified; ++t) {
            int64_t M = out.rule_period[static_cast<size_t>(t)];
            for (int32_t i = 0; i < pres.period_of(t) && certified; ++i)
                for (int64_t r = 0; r < M && certified; ++r) {
                    VertexId v = VertexId::Tail_(t, probe_lo + M + r, i);
                    int64_t fuel = 4 * M * pres.period_of(t) + 16;
                    while (v.is_tail() && v.copy >= probe_lo && fuel-- > 0) {
                        const Rule& rule =
                            out.rules[static_cast<size_t>(t)][static_cast<size_t>(v.strand)]
                                     [static_cast<size_t>(v.copy % M)];
                        if (rule.kind == Rule::Kind::Core) {
                            v = VertexId::Core_(rule.target);
                        } else if (rule.kind == Rule::Kind::InterPrev) {
                            v = VertexId::Tail_(t, v.copy - 1, rule.target);
                        } else if (rule.kind == Rule::Kind::Intra) {
                            v = VertexId::Tail_(t, v.copy, rule.target);
                        } else if (rule.kind == Rule::Kind::InterNext) {
                            v = VertexId::Tail_(t, v.copy + 1, rule.target);
                        } else {
                            certified = false;
                            break;
                        }
                    }
                    if (fuel <= 0) certified = false;
                }
        }
        if (certified) return out;
    }
    throw std::runtime_error("spanning structure did not stabilize (internal error)");
}

}  // namespace

std::optional<VertexId> TreePresentation::parent_of(const VertexId& v) const {
    if (v == root) return std::nullopt;
    if (v.is_core() || v.copy < explicit_depth) {
        auto it = explicit_parent.find(v);
        if (it == explicit_parent.end()) return std::nullopt;
        return it->second;
    }
    const Rule& rule = rules[static_cast<size_t>(v.tail)][static_cast<size_t>(v.strand)]
                            [static_cast<size_t>(v.copy % rule_period[static_cast<size_t>(v.tail)])];
    switch (rule.kind) {
        case Rule::Kind::Core:
            return VertexId::Core_(rule.target);
        case Rule::Kind::InterPrev:
            return VertexId::Tail_(v.tail, v.copy - 1, rule.target);
        case Rule::Kind::Intra:
            return VertexId::Tail_(v.tail, v.copy, rule.target);
        case Rule::Kind::InterNext:
            return VertexId::Tail_(v.tail, v.copy + 1, rule.target);
        case Rule::Kind::None:
            return std::nullopt;
    }
    return std::nullopt;
}

TreePresentation cofinal_tree(const EpgPresentation& pres, const Epvs& u) {
    require_valid(pres);
    if (u.is_empty()) throw std::invalid_argument("cofinal_tree: U must be nonempty");
    if (!is_connected(pres))
        throw std::invalid_argument("cofinal_tree: presentation is not connected");

    SpanningStructure span = build_spanning_structure(pres);
    TreePresentation tree;
    tree.root = span.root;
    tree.explicit_parent = std::move(span.explicit_parent);
    tree.explicit_depth = span.explicit_depth;
    tree.rules = std::move(span.rules);
    tree.rule_period = std::move(span.rule_period);

    // ancestor closure of U under the parent map
    Epvs kept = u;
    kept.insert(tree.root);
    for (int guard = 0;; ++guard) {
        if (guard > 10000)
            throw std::runtime_error("cofinal_tree: ancestor closure diverged (internal error)");
        Epvs next = kept;
        // explicit region: direct parent lookups
        for (const auto& [v, p] : tree.explicit_parent)
            if (kept.contains(v)) next.insert(p);
        // periodic region: apply rules per residue class
        for (int32_t t = 0; t < pres.tail_count(); ++t) {
            int64_t M = tree.rule_period[static_cast<size_t>(t)];
            for (int32_t i = 0; i < pres.period_of(t); ++i) {
                Upis deep = kept.strand(t, i) & Upis::at_least(tree.explicit_depth);
                if (deep.empty()) continue;
                for (int64_t r = 0; r < M; ++r) {
                    Upis slot = deep & Upis::arithmetic(r, M);
                    if (slot.empty()) continue;
                    const auto& rule = tree.rules[static_cast<size_t>(t)][static_cast<size_t>(i)]
                                                 [static_cast<size_t>(r % M)];
                    switch (rule.kind) {
                        case TreePresentation::Rule::Kind::Core:
                            next.set_core(rule.target, true);
                            break;
                        case TreePresentation::Rule::Kind::InterPrev:
                            next.set_strand(t, rule.target,
                                            next.strand(t, rule.target) | slot.shift_down(1));
                            break;
                        case TreePresentation::Rule::Kind::Intra:
                            next.set_strand(t, rule.target, next.strand(t, rule.target) | slot);
                            break;
                        case TreePresentation::Rule::Kind::InterNext:
                            next.set_strand(t, rule.target,
                                            next.strand(t, rule.target) | slot.shift_up(1));
                            break;
                        case TreePresentation::Rule::Kind::None:
                            throw std::runtime_error("cofinal_tree: missing parent rule");
                    }
                }
            }
        }
        if (next == kept) break;
        kept = next;
    }
    tree.vertices = kept;
    return tree;
}

}  // namespace endscope
