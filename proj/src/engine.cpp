#include "endscope/engine.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace endscope {

namespace {

struct DisjointSet {
    std::vector<int32_t> parent;
    explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int32_t find(int32_t x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    bool unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);  // least index stays representative
        parent[static_cast<size_t>(b)] = a;
        return true;
    }
};

// ---------------------------------------------------------------------
// Per-tail periodic zone
//
// Copies [0, head_copies) of a tail belong to the finite head; beyond
// that the removal pattern, hub-edge pattern and tile structure repeat
// with a block of q copies, so blocks are literally identical.
// ---------------------------------------------------------------------

struct TailZone {
    int64_t q = 1;
    int64_t head_copies = 1;
    std::vector<char> kept;  // kept[r*p + i]
    std::vector<std::array<int32_t, 4>> in_block;    // (r,i)-(r2,j), r2 <= r+1 < q
    std::vector<std::pair<int32_t, int32_t>> cross;  // (q-1,i)-(0,j) of next block
    std::vector<std::array<int32_t, 3>> hub_links;   // (r,i) adjacent to core h
};

struct ClassTag {
    bool rooted = false;
    int32_t root = -1;
    int64_t float_id = -1;
};

struct FloatInfo {
    int64_t birth_block = 0;
    std::vector<std::pair<int64_t, int32_t>> trail;  // (copy, strand)
    bool dead = false;
    int64_t death_block = -1;  // -2: merged/absorbed, not a component by itself
};

struct TailRun {
    std::vector<std::pair<int32_t, int32_t>> merges;

    std::unordered_map<int32_t, std::vector<std::pair<int64_t, int32_t>>> root_explicit;
    std::unordered_map<int32_t, std::vector<std::pair<int64_t, int32_t>>> root_delta;
    int64_t delta_start_copy = 0;
    int64_t root_stride = 0;  // copies
    std::vector<FloatInfo> singles;
    std::vector<std::pair<FloatInfo, int64_t>> families;  // seed + stride (copies)
    struct Immortal {
        std::vector<std::pair<int64_t, int32_t>> explicit_trail;
        std::vector<std::pair<int64_t, int32_t>> delta;
        int64_t delta_start_copy = 0;
        int64_t stride = 0;
    };
    std::vector<Immortal> immortals;
};

constexpr int64_t kBlockCap = 500000;

// Frontier automaton over one tail's periodic zone. The frontier state
// (alive positions, their component grouping, root/float tags) evolves by
// a fixed map, so it is eventually periodic; on the first state repeat
// everything beyond is a verbatim shifted replay. Emission windows are
// placed deep enough that every pre-cycle transient has died out:
// at most P floats are ever concurrently alive, so any mortal component
// lives fewer than (P+1) cycle periods.
TailRun run_tail_automaton(const EpgPresentation& pres, int32_t tail, const TailZone& zone,
                           const std::function<int32_t(const VertexId&)>& root_of,
                           bool accumulate) {
    TailRun out;
    const int64_t p = pres.period_of(tail);
    const int64_t q = zone.q;
    const int64_t P = p * q;

    auto pos_of = [p](int64_t r, int32_t i) { return static_cast<int32_t>(r * p + i); };
    auto copy_of = [&zone, p](int64_t block, int32_t pos) {
        return zone.head_copies + block * zone.q + pos / p;
    };
    auto strand_of = [p](int32_t pos) { return static_cast<int32_t>(pos % p); };

    std::vector<int32_t> frontier(static_cast<size_t>(P), -1);
    std::vector<ClassTag> tags;

    std::vector<int32_t> head_iface(static_cast<size_t>(p), -1);
    for (int32_t i = 0; i < p; ++i)
        head_iface[static_cast<size_t>(i)] = root_of(VertexId::Tail_(tail, zone.head_copies - 1, i));

    std::unordered_map<int64_t, FloatInfo> floats;
    int64_t next_float = 0;

    struct StateInfo {
        int64_t block;
        std::vector<int64_t> float_order;  // persistent ids by canonical slot
    };
    std::map<std::vector<int64_t>, StateInfo> seen_states;
    bool have_cycle = false;
    int64_t cycle_len = 0;        // blocks per state period
    int64_t safe_offset = -1;     // first block of the emission windows
    int64_t immortal_len = 0;     // blocks per immortal-chain period
    int64_t emission_end = -1;

    std::vector<std::pair<int32_t, std::pair<int64_t, int32_t>>> root_hits;
    std::set<std::pair<int32_t, int32_t>> merge_set;
    auto request_merge = [&merge_set](int32_t a, int32_t b) {
        if (a != b) merge_set.insert({std::min(a, b), std::max(a, b)});
    };

    for (int64_t block = 0;; ++block) {
        if (block > kBlockCap)
            throw std::runtime_error("engine: block cap exceeded (internal error)");

        // local connectivity within this block
        DisjointSet local(static_cast<size_t>(std::max<int64_t>(P, 1)));
        for (const auto& e : zone.in_block) {
            int32_t a = pos_of(e[0], e[1]), b = pos_of(e[2], e[3]);
            if (zone.kept[static_cast<size_t>(a)] && zone.kept[static_cast<size_t>(b)])
                local.unite(a, b);
        }

        // link tokens: [0,P) local class reps, [P,P+C) previous classes, then roots
        int32_t C = static_cast<int32_t>(tags.size());
        std::map<int32_t, int32_t> root_token;
        int32_t ntokens = static_cast<int32_t>(P) + C;
        auto token_for_root = [&root_token, &ntokens](int32_t r) {
            auto it = root_token.find(r);
            if (it != root_token.end()) return it->second;
            root_token[r] = ntokens;
            return ntokens++;
        };
        std::vector<std::pair<int32_t, int32_t>> links;
        for (const auto& h : zone.hub_links) {
            int32_t a = pos_of(h[0], h[1]);
            if (!zone.kept[static_cast<size_t>(a)]) continue;
            int32_t r = root_of(VertexId::Core_(h[2]));
            if (r < 0) continue;
            links.push_back({local.find(a), token_for_root(r)});
        }
        for (auto [i, j] : zone.cross) {
            int32_t b = pos_of(0, j);
            if (!zone.kept[static_cast<size_t>(b)]) continue;
            if (block == 0) {
                int32_t r = head_iface[static_cast<size_t>(i)];
                if (r >= 0) links.push_back({local.find(b), token_for_root(r)});
            } else {
                int32_t a = pos_of(q - 1, i);
                if (frontier[static_cast<size_t>(a)] >= 0)
                    links.push_back({local.find(b),
                                     static_cast<int32_t>(P) + frontier[static_cast<size_t>(a)]});
            }
        }
        for (int32_t c = 0; c < C; ++c)
            if (tags[static_cast<size_t>(c)].rooted)
                links.push_back({static_cast<int32_t>(P) + c,
                                 token_for_root(tags[static_cast<size_t>(c)].root)});

        DisjointSet link(static_cast<size_t>(std::max(ntokens, 1)));
        for (auto [a, b] : links) link.unite(a, b);

        struct Group {
            std::vector<int32_t> positions;
            std::set<int32_t> roots;
            std::vector<int64_t> prev_floats;
        };
        std::map<int32_t, Group> groups;  // keyed by least local class id in group
        for (int32_t x = 0; x < P; ++x) {
            if (!zone.kept[static_cast<size_t>(x)]) continue;
            groups[link.find(local.find(x))].positions.push_back(x);
        }
        for (const auto& [r, tok] : root_token) {
            auto it = groups.find(link.find(tok));
            if (it != groups.end()) it->second.roots.insert(r);
        }
        std::vector<char> prev_linked(static_cast<size_t>(std::max(C, 1)), 0);
        for (int32_t c = 0; c < C; ++c) {
            auto it = groups.find(link.find(static_cast<int32_t>(P) + c));
            if (it == groups.end()) continue;
            prev_linked[static_cast<size_t>(c)] = 1;
            const ClassTag& tg = tags[static_cast<size_t>(c)];
            if (tg.rooted)
                it->second.roots.insert(tg.root);
            else
                it->second.prev_floats.push_back(tg.float_id);
        }

        for (auto& [rep, g] : groups) {
            (void)rep;
            if (g.roots.size() >= 2)
                for (int32_t r : g.roots) request_merge(*g.roots.begin(), r);
        }

        // deaths: previous floats not linked into this block
        for (int32_t c = 0; c < C; ++c) {
            if (prev_linked[static_cast<size_t>(c)]) continue;
            const ClassTag& tg = tags[static_cast<size_t>(c)];
            if (tg.rooted) continue;
            FloatInfo& fi = floats.at(tg.float_id);
            fi.dead = true;
            fi.death_block = block;
        }

        std::vector<int32_t> new_frontier(static_cast<size_t>(P), -1);
        std::vector<ClassTag> new_tags;
        for (auto& [rep, g] : groups) {
            (void)rep;
            if (g.positions.empty()) continue;
            ClassTag tg;
            if (!g.roots.empty()) {
                tg.rooted = true;
                tg.root = *g.roots.begin();
                for (int64_t f : g.prev_floats) {
                    FloatInfo& fi = floats.at(f);
                    if (accumulate)
                        for (auto& cs : fi.trail) root_hits.push_back({tg.root, cs});
                    fi.dead = true;
                    fi.death_block = -2;
                }
            } else if (!g.prev_floats.empty()) {
                int64_t keep = *std::min_element(g.prev_floats.begin(), g.prev_floats.end());
                tg.float_id = keep;
                FloatInfo& fk = floats.at(keep);
                for (int64_t f : g.prev_floats) {
                    if (f == keep) continue;
                    FloatInfo& fi = floats.at(f);
                    fk.trail.insert(fk.trail.end(), fi.trail.begin(), fi.trail.end());
                    fk.birth_block = std::min(fk.birth_block, fi.birth_block);
                    floats.erase(f);
                }
            } else {
                tg.float_id = next_float++;
                floats[tg.float_id] = FloatInfo{block, {}, false, -1};
            }
            int32_t cid = static_cast<int32_t>(new_tags.size());
            for (int32_t x : g.positions) {
                new_frontier[static_cast<size_t>(x)] = cid;
                std::pair<int64_t, int32_t> cs{copy_of(block, x), strand_of(x)};
                if (tg.rooted) {
                    if (accumulate) root_hits.push_back({tg.root, cs});
                } else {
                    floats.at(tg.float_id).trail.push_back(cs);
                }
            }
            new_tags.push_back(tg);
        }
        frontier = std::move(new_frontier);
        tags = std::move(new_tags);

        if (!have_cycle) {
            std::vector<int64_t> state;
            std::map<int64_t, int64_t> float_rename;
            std::vector<int64_t> float_order;
            for (int32_t x = 0; x < P; ++x) {
                int32_t c = frontier[static_cast<size_t>(x)];
                if (c < 0) {
                    state.push_back(-1);
                    state.push_back(-1);
                    continue;
                }
                const ClassTag& tg = tags[static_cast<size_t>(c)];
                state.push_back(c);
                if (tg.rooted) {
                    state.push_back(1000000 + tg.root);
                } else {
                    auto [it, fresh] = float_rename.insert(
                        {tg.float_id, static_cast<int64_t>(float_rename.size())});
                    if (fresh) float_order.push_back(tg.float_id);
                    state.push_back(it->second);
                }
            }
            auto [it, inserted] = seen_states.insert({state, StateInfo{block, float_order}});
            if (!inserted) {
                const StateInfo& first = it->second;
                have_cycle = true;
                cycle_len = block - first.block;
                // slot permutation between the two occurrences; immortal
                // chains rotate through its cycles, so their vertex sets
                // repeat with period lcm(cycle lengths) * cycle_len.
                std::map<int64_t, int32_t> slot_at_b0;
                for (size_t j = 0; j < first.float_order.size(); ++j)
                    slot_at_b0[first.float_order[j]] = static_cast<int32_t>(j);
                size_t F = float_order.size();
                std::vector<int32_t> pi(F, -1);
                for (size_t j = 0; j < F; ++j) {
                    auto it2 = slot_at_b0.find(float_order[j]);
                    if (it2 != slot_at_b0.end()) pi[j] = it2->second;
                }
                int64_t L = 1;
                std::vector<char> visited(F, 0);
                for (size_t j = 0; j < F; ++j) {
                    if (visited[j] || pi[j] < 0) continue;
                    int64_t len = 0;
                    int32_t x = static_cast<int32_t>(j);
                    bool closed = false;
                    while (x >= 0 && !visited[static_cast<size_t>(x)]) {
                        visited[static_cast<size_t>(x)] = 1;
                        x = pi[static_cast<size_t>(x)];
                        ++len;
                        if (x == static_cast<int32_t>(j)) {
                            closed = true;
                            break;
                        }
                    }
                    if (closed) L = lcm64(L, len);
                }
                immortal_len = L * cycle_len;
                safe_offset = block + (P + 1) * cycle_len;
                emission_end = safe_offset + immortal_len;
            }
        }

        if (have_cycle && block >= emission_end) break;
    }

    const int64_t safe_copy = zone.head_copies + safe_offset * q;
    const int64_t family_stride = cycle_len * q;
    const int64_t immortal_stride = immortal_len * q;
    out.delta_start_copy = safe_copy;
    out.root_stride = family_stride;
    out.merges.assign(merge_set.begin(), merge_set.end());
    if (!accumulate) return out;

    for (auto& [root, cs] : root_hits) {
        if (cs.first < safe_copy)
            out.root_explicit[root].push_back(cs);
        else if (cs.first < safe_copy + family_stride)
            out.root_delta[root].push_back(cs);
    }

    for (auto& [fid, fi] : floats) {
        (void)fid;
        if (fi.death_block == -2) continue;
        if (fi.dead) {
            if (fi.death_block < safe_offset)
                out.singles.push_back(fi);
            else if (fi.death_block < safe_offset + cycle_len)
                out.families.push_back({fi, family_stride});
            // later deaths are shifted members of a seeded family
        } else if (emission_end - fi.birth_block > (P + 1) * cycle_len) {
            TailRun::Immortal im;
            im.delta_start_copy = safe_copy;
            im.stride = immortal_stride;
            for (auto& cs : fi.trail) {
                if (cs.first < safe_copy)
                    im.explicit_trail.push_back(cs);
                else if (cs.first < safe_copy + immortal_stride)
                    im.delta.push_back(cs);
            }
            out.immortals.push_back(std::move(im));
        }
        // young mortals alive at the horizon are covered by family members
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------
// GraphPart / ComplementAnalysis
// ---------------------------------------------------------------------

std::vector<VertexId> GraphPart::family_member(int64_t m) const {
    std::vector<VertexId> out;
    out.reserve(family_base.size());
    for (const auto& v : family_base)
        out.push_back(VertexId::Tail_(v.tail, v.copy + m * family_stride, v.strand));
    return out;
}

int64_t GraphPart::member_index_of(const VertexId& v) const {
    if (!family || !v.is_tail() || v.tail != family_tail) return -1;
    for (const auto& b : family_base) {
        if (b.strand != v.strand) continue;
        int64_t d = v.copy - b.copy;
        if (d >= 0 && d % family_stride == 0) {
            int64_t m = d / family_stride;
            // confirm: the member's base vertex pattern really contains v
            if (vertices.contains(v)) return m;
        }
    }
    return -1;
}

int32_t ComplementAnalysis::part_of(const VertexId& v) const {
    for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i].vertices.contains(v)) return static_cast<int32_t>(i);
    return -1;
}

// ---------------------------------------------------------------------
// analyze_complement
// ---------------------------------------------------------------------

ComplementAnalysis analyze_complement(const EpgPresentation& pres, const Epvs& removed) {
    ComplementAnalysis res;
    res.removed = removed;

    std::vector<TailZone> zones(pres.tails.size());
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        TailZone& z = zones[static_cast<size_t>(t)];
        int64_t q = 1, head = 1;
        for (int32_t i = 0; i < spec.period; ++i) {
            const Upis& s = removed.strand(t, i);
            q = lcm64(q, s.period());
            head = std::max(head, s.threshold());
        }
        for (const HubRule& r : spec.hubs) {
            if (removed.core_member(r.core)) continue;
            q = lcm64(q, r.stride);
            head = std::max(head, r.start + 1);
        }
        z.q = q;
        z.head_copies = head;
        z.kept.assign(static_cast<size_t>(q * spec.period), 0);
        for (int64_t r = 0; r < q; ++r)
            for (int32_t i = 0; i < spec.period; ++i)
                z.kept[static_cast<size_t>(r * spec.period + i)] =
                    removed.strand(t, i).contains(head + r) ? 0 : 1;
        for (int64_t r = 0; r < q; ++r) {
            for (auto [i, j] : spec.intra)
                z.in_block.push_back({static_cast<int32_t>(r), i, static_cast<int32_t>(r), j});
            if (r + 1 < q)
                for (auto [i, j] : spec.inter)
                    z.in_block.push_back(
                        {static_cast<int32_t>(r), i, static_cast<int32_t>(r + 1), j});
        }
        for (auto [i, j] : spec.inter) z.cross.push_back({i, j});
        for (const HubRule& r : spec.hubs) {
            if (removed.core_member(r.core)) continue;
            for (int64_t rr = 0; rr < q; ++rr) {
                int64_t copy = head + rr;
                if (copy >= r.start && (copy - r.start) % r.stride == 0)
                    z.hub_links.push_back({static_cast<int32_t>(rr), r.strand, r.core});
            }
        }
    }

    // head graph: surviving cores plus tail copies below each head horizon
    std::vector<VertexId> head_vertices;
    for (int32_t c = 0; c < pres.core_count; ++c)
        if (!removed.core_member(c)) head_vertices.push_back(VertexId::Core_(c));
    for (int32_t t = 0; t < pres.tail_count(); ++t)
        for (int64_t k = 0; k < zones[static_cast<size_t>(t)].head_copies; ++k)
            for (int32_t i = 0; i < pres.period_of(t); ++i) {
                VertexId v = VertexId::Tail_(t, k, i);
                if (!removed.contains(v)) head_vertices.push_back(v);
            }
    std::unordered_map<VertexId, int32_t, VertexIdHash> head_index;
    for (size_t x = 0; x < head_vertices.size(); ++x)
        head_index[head_vertices[x]] = static_cast<int32_t>(x);

    DisjointSet head_uf(head_vertices.size());
    auto head_edge = [&head_index, &head_uf](const VertexId& u, const VertexId& v) {
        auto iu = head_index.find(u), iv = head_index.find(v);
        if (iu == head_index.end() || iv == head_index.end()) return;
        head_uf.unite(iu->second, iv->second);
    };
    for (auto [u, v] : pres.core_edges) head_edge(VertexId::Core_(u), VertexId::Core_(v));
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        const TailZone& z = zones[static_cast<size_t>(t)];
        for (auto [c, i] : spec.attach) head_edge(VertexId::Core_(c), VertexId::Tail_(t, 0, i));
        for (int64_t k = 0; k < z.head_copies; ++k) {
            for (auto [i, j] : spec.intra)
                head_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k, j));
            if (k + 1 < z.head_copies)
                for (auto [i, j] : spec.inter)
                    head_edge(VertexId::Tail_(t, k, i), VertexId::Tail_(t, k + 1, j));
        }
        for (const HubRule& r : spec.hubs)
            for (int64_t k = r.start; k < z.head_copies; k += r.stride)
                head_edge(VertexId::Core_(r.core), VertexId::Tail_(t, k, r.strand));
    }

    auto root_of = [&head_index, &head_uf](const VertexId& v) -> int32_t {
        auto it = head_index.find(v);
        if (it == head_index.end()) return -1;
        return head_uf.find(it->second);
    };

    for (int iter = 0;; ++iter) {
        if (iter > static_cast<int>(head_vertices.size()) + 4)
            throw std::runtime_error("engine: merge loop failed to stabilize (internal error)");
        bool changed = false;
        for (int32_t t = 0; t < pres.tail_count(); ++t) {
            TailRun run =
                run_tail_automaton(pres, t, zones[static_cast<size_t>(t)], root_of, false);
            for (auto [a, b] : run.merges)
                if (head_uf.unite(a, b)) changed = true;
        }
        if (!changed) break;
    }

    std::unordered_map<int32_t, Epvs> root_sets;
    std::vector<GraphPart> zone_parts;
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        TailRun run = run_tail_automaton(pres, t, zones[static_cast<size_t>(t)], root_of, true);
        for (auto [a, b] : run.merges)
            if (head_uf.find(a) != head_uf.find(b))
                throw std::runtime_error("engine: merge after fixpoint (internal error)");
        const int64_t p = pres.period_of(t);
        auto add_trail = [&pres, t, p](Epvs& e,
                                       const std::vector<std::pair<int64_t, int32_t>>& trail) {
            (void)pres;
            std::vector<std::vector<int64_t>> per(static_cast<size_t>(p));
            for (auto [copy, strand] : trail) per[static_cast<size_t>(strand)].push_back(copy);
            for (int32_t i = 0; i < p; ++i)
                if (!per[static_cast<size_t>(i)].empty())
                    e.set_strand(
                        t, i, e.strand(t, i) | Upis::from_elements(per[static_cast<size_t>(i)]));
        };
        auto add_periodic = [t](Epvs& e, const std::vector<std::pair<int64_t, int32_t>>& delta,
                                int64_t stride) {
            for (auto [copy, strand] : delta)
                e.set_strand(t, strand, e.strand(t, strand) | Upis::arithmetic(copy, stride));
        };

        for (auto& [root, trail] : run.root_explicit) {
            auto [it, fresh] = root_sets.try_emplace(root, Epvs::empty_like(pres));
            (void)fresh;
            add_trail(it->second, trail);
        }
        for (auto& [root, delta] : run.root_delta) {
            auto [it, fresh] = root_sets.try_emplace(root, Epvs::empty_like(pres));
            (void)fresh;
            add_periodic(it->second, delta, run.root_stride);
        }
        for (const FloatInfo& fi : run.singles) {
            GraphPart part;
            part.vertices = Epvs::empty_like(pres);
            add_trail(part.vertices, fi.trail);
            zone_parts.push_back(std::move(part));
        }
        for (const auto& [fi, stride] : run.families) {
            GraphPart part;
            part.vertices = Epvs::empty_like(pres);
            add_periodic(part.vertices, fi.trail, stride);
            part.family = true;
            part.family_tail = t;
            part.family_stride = stride;
            for (auto [copy, strand] : fi.trail)
                part.family_base.push_back(VertexId::Tail_(t, copy, strand));
            std::sort(part.family_base.begin(), part.family_base.end());
            zone_parts.push_back(std::move(part));
        }
        for (const auto& im : run.immortals) {
            GraphPart part;
            part.vertices = Epvs::empty_like(pres);
            add_trail(part.vertices, im.explicit_trail);
            add_periodic(part.vertices, im.delta, im.stride);
            part.infinite = true;
            zone_parts.push_back(std::move(part));
        }
    }

    std::map<int32_t, Epvs> by_root;
    for (size_t x = 0; x < head_vertices.size(); ++x) {
        int32_t r = head_uf.find(static_cast<int32_t>(x));
        auto [it, fresh] = by_root.try_emplace(r, Epvs::empty_like(pres));
        (void)fresh;
        it->second.insert(head_vertices[x]);
    }
    for (auto& [root, zs] : root_sets) {
        auto it = by_root.find(head_uf.find(root));
        if (it == by_root.end())
            throw std::runtime_error("engine: zone vertices on unknown root (internal error)");
        it->second = it->second | zs;
    }
    for (auto& [root, verts] : by_root) {
        (void)root;
        GraphPart part;
        part.vertices = verts;
        part.infinite = !verts.is_finite();
        res.parts.push_back(std::move(part));
    }
    for (auto& part : zone_parts) res.parts.push_back(std::move(part));

    std::sort(res.parts.begin(), res.parts.end(), [](const GraphPart& a, const GraphPart& b) {
        auto ma = a.vertices.min_vertex(), mb = b.vertices.min_vertex();
        if (!ma || !mb) return static_cast<bool>(mb);
        return *ma < *mb;
    });

    // exactness: parts partition V(G) - removed
    Epvs all = Epvs::empty_like(pres);
    for (const auto& part : res.parts) {
        if (part.vertices.intersects(all))
            throw std::runtime_error("engine: overlapping parts (internal error)");
        all = all | part.vertices;
    }
    if (all != removed.complement())
        throw std::runtime_error("engine: parts do not cover complement (internal error)");

    return res;
}

bool is_connected(const EpgPresentation& pres) {
    ComplementAnalysis an = analyze_complement(pres, Epvs::empty_like(pres));
    return an.parts.size() <= 1;
}

bool is_connected_induced(const EpgPresentation& pres, const Epvs& a) {
    ComplementAnalysis an = analyze_complement(pres, a.complement());
    return an.parts.size() == 1;
}

}  // namespace endscope
