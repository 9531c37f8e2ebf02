#include "endscope/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "endscope/engine.hpp"
#include "endscope/envelope.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

std::string Report::summary() const {
    if (pass) return "pass";
    std::ostringstream out;
    out << "fail (" << witnesses.size() << " witness" << (witnesses.size() == 1 ? "" : "es")
        << ")";
    for (size_t i = 0; i < witnesses.size() && i < 4; ++i) out << "; " << witnesses[i];
    return out.str();
}

// ---------------------------------------------------------------------
// tree-decomposition axioms
// ---------------------------------------------------------------------

Report check_td_axioms(const EpgPresentation& pres, const TreeDecompositionPrefix& td,
                       int64_t horizon) {
    Report rep;
    FiniteGraph g = unfold(pres, horizon);
    auto concrete = td.concrete_nodes(horizon);

    // materialized bags as vertex-index sets
    std::vector<std::set<int32_t>> bags(concrete.size());
    std::vector<Epvs> bag_sets;
    bag_sets.reserve(concrete.size());
    for (size_t i = 0; i < concrete.size(); ++i) {
        Epvs bag = td.concrete_bag(pres, concrete[i]);
        for (size_t x = 0; x < g.size(); ++x)
            if (bag.contains(g.vertices[x])) bags[i].insert(static_cast<int32_t>(x));
        bag_sets.push_back(std::move(bag));
    }

    // (T1): every covered vertex of the unfolding lies in some bag
    for (size_t x = 0; x < g.size(); ++x) {
        const VertexId& v = g.vertices[x];
        if (!td.coverage.contains(v)) continue;
        bool found = false;
        for (const auto& bag : bags)
            if (bag.count(static_cast<int32_t>(x))) {
                found = true;
                break;
            }
        if (!found) rep.fail("(T1) vertex " + v.to_string() + " in no part");
    }

    // (T2): every covered edge lies inside some bag
    for (size_t x = 0; x < g.size(); ++x) {
        if (!td.coverage.contains(g.vertices[x])) continue;
        for (int32_t y : g.adj[x]) {
            if (static_cast<int32_t>(x) > y) continue;
            if (!td.coverage.contains(g.vertices[static_cast<size_t>(y)])) continue;
            bool found = false;
            for (const auto& bag : bags)
                if (bag.count(static_cast<int32_t>(x)) && bag.count(y)) {
                    found = true;
                    break;
                }
            if (!found)
                rep.fail("(T2) edge " + g.vertices[x].to_string() + " -- " +
                         g.vertices[static_cast<size_t>(y)].to_string() + " in no part");
        }
    }

    // (T3): interpolation along tree paths, on materialized bags
    // parent of a concrete node: singles/root -> node parent's concrete;
    // family members -> their group's parent (a single or the root)
    auto concrete_parent = [&](size_t i) -> int32_t {
        int32_t parent_node = td.nodes[static_cast<size_t>(concrete[i].node)].parent;
        if (parent_node < 0) return -1;
        for (size_t j = 0; j < concrete.size(); ++j)
            if (concrete[j].node == parent_node && concrete[j].member < 0)
                return static_cast<int32_t>(j);
        return -1;
    };
    std::vector<int32_t> parent_of(concrete.size());
    std::vector<int32_t> depth_of(concrete.size(), 0);
    for (size_t i = 0; i < concrete.size(); ++i) parent_of[i] = concrete_parent(i);
    for (size_t i = 0; i < concrete.size(); ++i) {
        int32_t cur = static_cast<int32_t>(i);
        while (parent_of[static_cast<size_t>(cur)] >= 0) {
            ++depth_of[i];
            cur = parent_of[static_cast<size_t>(cur)];
        }
    }
    auto path_between = [&](int32_t a, int32_t b) {
        std::vector<int32_t> path_a{a}, path_b{b};
        int32_t x = a, y = b;
        while (depth_of[static_cast<size_t>(x)] > depth_of[static_cast<size_t>(y)]) {
            x = parent_of[static_cast<size_t>(x)];
            path_a.push_back(x);
        }
        while (depth_of[static_cast<size_t>(y)] > depth_of[static_cast<size_t>(x)]) {
            y = parent_of[static_cast<size_t>(y)];
            path_b.push_back(y);
        }
        while (x != y) {
            x = parent_of[static_cast<size_t>(x)];
            y = parent_of[static_cast<size_t>(y)];
            path_a.push_back(x);
            path_b.push_back(y);
        }
        path_a.insert(path_a.end(), path_b.rbegin(), path_b.rend());
        path_a.erase(std::unique(path_a.begin(), path_a.end()), path_a.end());
        return path_a;
    };
    for (size_t a = 0; a < concrete.size(); ++a)
        for (size_t c = a + 1; c < concrete.size(); ++c) {
            std::vector<int32_t> common;
            std::set_intersection(bags[a].begin(), bags[a].end(), bags[c].begin(),
                                  bags[c].end(), std::back_inserter(common));
            if (common.empty()) continue;
            for (int32_t b : path_between(static_cast<int32_t>(a), static_cast<int32_t>(c))) {
                if (b == static_cast<int32_t>(a) || b == static_cast<int32_t>(c)) continue;
                for (int32_t v : common)
                    if (!bags[static_cast<size_t>(b)].count(v))
                        rep.fail("(T3) vertex " + g.vertices[static_cast<size_t>(v)].to_string() +
                                 " missing on the path between nodes " +
                                 std::to_string(concrete[a].node) + " and " +
                                 std::to_string(concrete[c].node));
            }
        }

    // finite separators and connected parts
    for (size_t i = 0; i < concrete.size(); ++i) {
        Epvs sep = td.concrete_separator(pres, concrete[i]);
        if (!sep.is_finite())
            rep.fail("separator of node " + std::to_string(concrete[i].node) + " infinite");
        if (!bag_sets[i].is_empty() && !is_connected_induced(pres, bag_sets[i]))
            rep.fail("part of node " + std::to_string(concrete[i].node) + " not connected");
    }
    return rep;
}

Report check_upwards_disjoint(const EpgPresentation& pres, const TreeDecompositionPrefix& td,
                              int64_t horizon) {
    Report rep;
    auto concrete = td.concrete_nodes(horizon);
    // separators indexed by node group; family member separators computed
    // on demand; ancestors of any concrete node are single nodes
    for (const auto& c : concrete) {
        if (c.node == 0) continue;
        Epvs sep = td.concrete_separator(pres, c);
        int32_t anc = td.nodes[static_cast<size_t>(c.node)].parent;
        while (anc > 0) {
            const TdNode& anode = td.nodes[static_cast<size_t>(anc)];
            if (sep.intersects(anode.separator)) {
                auto wit = (sep & anode.separator).min_vertex();
                rep.fail("separators of node " + std::to_string(c.node) + " and ancestor " +
                         std::to_string(anc) + " share " + wit->to_string());
            }
            anc = anode.parent;
        }
    }
    return rep;
}

Report check_display(const EpgPresentation& pres, const TreeDecompositionPrefix& td) {
    Report rep;
    auto ends = enumerate_ends(pres);
    std::map<int32_t, const End*> by_id;
    for (const End& e : ends) by_id[e.id] = &e;

    std::set<int32_t> seen;
    std::set<std::vector<int32_t>> chains;
    for (const DisplayEntry& entry : td.display) {
        auto it = by_id.find(entry.end_id);
        if (it == by_id.end()) {
            rep.fail("display entry names unknown end " + std::to_string(entry.end_id));
            continue;
        }
        const End& e = *it->second;
        if (!e.topological) {
            rep.fail("display entry " + std::to_string(entry.end_id) + " is a dominated end");
            continue;
        }
        if (!seen.insert(entry.end_id).second) {
            rep.fail("end " + std::to_string(entry.end_id) + " displayed twice");
            continue;
        }
        if (!chains.insert(entry.node_chain).second)
            rep.fail("two ends share the T-ray of end " + std::to_string(entry.end_id));

        // chain structure: descending components under parent links,
        // each containing the end
        int32_t expected_parent = 0;
        const Epvs* prev = nullptr;
        for (int32_t nid : entry.node_chain) {
            if (nid <= 0 || nid >= static_cast<int32_t>(td.nodes.size())) {
                rep.fail("display chain of end " + std::to_string(entry.end_id) +
                         " leaves the prefix");
                break;
            }
            const TdNode& node = td.nodes[static_cast<size_t>(nid)];
            if (node.family) {
                rep.fail("display chain of end " + std::to_string(entry.end_id) +
                         " passes a family leaf");
                break;
            }
            if (node.parent != expected_parent) {
                rep.fail("display chain of end " + std::to_string(entry.end_id) +
                         " is not a rooted path at node " + std::to_string(nid));
                break;
            }
            if (prev && !node.component.vertices.subset_of(*prev)) {
                rep.fail("display chain of end " + std::to_string(entry.end_id) +
                         " not nested at node " + std::to_string(nid));
                break;
            }
            if (!node.component.vertices.infinitely_intersects(e.component)) {
                rep.fail("end " + std::to_string(entry.end_id) + " does not live in node " +
                         std::to_string(nid));
                break;
            }
            prev = &node.component.vertices;
            expected_parent = nid;
        }
    }
    for (const End& e : ends)
        if (e.topological && !seen.count(e.id))
            rep.fail("topological end " + std::to_string(e.id) + " not displayed");

    // dominated ends: orientation stabilizes at a node of the prefix
    std::map<int32_t, int32_t> dom_claim;
    for (const DominatedEntry& d : td.dominated) dom_claim[d.end_id] = d.node;
    for (const End& e : ends) {
        if (e.topological) continue;
        // independent walk: descend while a child's component holds the end
        int32_t at = 0;
        for (;;) {
            int32_t next = -1;
            int32_t holders = 0;
            for (const TdNode& node : td.nodes) {
                if (node.parent != at || node.family) continue;
                if (node.component.vertices.infinitely_intersects(e.component)) {
                    ++holders;
                    next = node.id;
                }
            }
            if (holders > 1) {
                rep.fail("dominated end " + std::to_string(e.id) +
                         " lives in two children of node " + std::to_string(at));
                break;
            }
            if (holders == 0) break;
            at = next;
        }
        auto it = dom_claim.find(e.id);
        if (it == dom_claim.end())
            rep.fail("dominated end " + std::to_string(e.id) + " missing from the table");
        else if (it->second != at)
            rep.fail("dominated end " + std::to_string(e.id) + " stabilizes at node " +
                     std::to_string(at) + ", table says " + std::to_string(it->second));
    }
    return rep;
}

Report check_nested_chain(const EpgPresentation& pres,
                          const std::vector<std::pair<Epvs, Epvs>>& chain) {
    Report rep;
    for (size_t m = 0; m < chain.size(); ++m) {
        const auto& [x, c] = chain[m];
        if (!x.is_finite()) rep.fail("X_" + std::to_string(m) + " is infinite");
        for (size_t j = m + 1; j < chain.size(); ++j)
            if (x.intersects(chain[j].first))
                rep.fail("X_" + std::to_string(m) + " meets X_" + std::to_string(j));
        if (c.is_empty()) {
            rep.fail("C_" + std::to_string(m) + " is empty");
            continue;
        }
        // a component of G-X: connected, and closed (neighbors inside X)
        if (c.intersects(x)) rep.fail("C_" + std::to_string(m) + " meets its own cut");
        if (!is_connected_induced(pres, c))
            rep.fail("C_" + std::to_string(m) + " is not connected");
        if (!(neighbors(pres, c) - c).subset_of(x))
            rep.fail("C_" + std::to_string(m) + " is not closed in G-X_" + std::to_string(m));
        if (m + 1 < chain.size()) {
            if (!chain[m + 1].second.subset_of(c))
                rep.fail("C_" + std::to_string(m + 1) + " not inside C_" + std::to_string(m));
            if (!chain[m + 1].first.subset_of(c))
                rep.fail("X_" + std::to_string(m + 1) + " not inside C_" + std::to_string(m));
        }
    }
    if (chain.empty() || !rep.pass) return rep;

    // one undominated end lives in the whole chain
    auto ends = enumerate_ends(pres);
    std::vector<const End*> living;
    for (const End& e : ends) {
        bool inside = true;
        for (const auto& [x, c] : chain) {
            int64_t deep = std::max(x.max_threshold(), c.max_threshold()) + 2;
            VertexId v = e.representative.deep_vertex(deep);
            if (!c.contains(v)) inside = false;
        }
        if (inside) living.push_back(&e);
    }
    if (living.size() != 1) {
        rep.fail("expected exactly one end living in the chain, found " +
                 std::to_string(living.size()));
        return rep;
    }
    if (!living[0]->topological)
        rep.fail("the end living in the chain is dominated by core " +
                 std::to_string(living[0]->dominators.front()));
    return rep;
}

// ---------------------------------------------------------------------
// end-faithful spanning tree
// ---------------------------------------------------------------------

Report check_end_faithful(const EpgPresentation& pres, const SpanningTreePrefix& st) {
    Report rep;
    auto parents = st.parent_map();

    // tree shape: every spanned horizon vertex reaches the root
    FiniteGraph g = unfold(pres, st.horizon);
    std::set<VertexId> in_tree{st.root};
    for (const auto& [child, parent] : st.edges) {
        in_tree.insert(child);
        if (!adjacent(pres, child, parent)) {
            rep.fail("tree edge " + child.to_string() + " -- " + parent.to_string() +
                     " is not a graph edge");
            return rep;
        }
    }
    for (const VertexId& v : g.vertices) {
        if (!st.spans.contains(v)) continue;
        if (!in_tree.count(v)) {
            rep.fail("spanned vertex " + v.to_string() + " missing from the tree");
            continue;
        }
        VertexId cur = v;
        int64_t fuel = static_cast<int64_t>(st.edges.size()) + 2;
        while (cur != st.root && fuel-- > 0) {
            auto it = parents.find(cur);
            if (it == parents.end()) {
                rep.fail("vertex " + cur.to_string() + " has no tree parent");
                break;
            }
            cur = it->second;
        }
        if (fuel <= 0) rep.fail("parent chain from " + v.to_string() + " cycles");
    }
    if (!rep.pass) return rep;

    // attachment edges: one per component record
    std::set<VertexId> attach_insides;
    for (const auto& att : st.attachment_edges) {
        if (!adjacent(pres, att.inside, att.outside))
            rep.fail("attachment " + att.inside.to_string() + " -- " + att.outside.to_string() +
                     " is not an edge");
        if (!attach_insides.insert(att.inside).second)
            rep.fail("component attached twice at " + att.inside.to_string());
    }

    auto ends = enumerate_ends(pres);
    std::map<int32_t, const End*> by_id;
    for (const End& e : ends) by_id[e.id] = &e;

    // candidate deep rays: maximal root paths to leaves near the tree's
    // actual reach (layer growth may be much slower than the horizon)
    int64_t reach = 0;
    for (const auto& [child, parent] : st.edges) {
        if (child.is_tail()) reach = std::max(reach, child.copy);
        if (parent.is_tail()) reach = std::max(reach, parent.copy);
    }
    int64_t deep_bar = std::max<int64_t>(3, reach / 2);
    std::set<VertexId> has_child;
    for (const auto& [child, parent] : st.edges) has_child.insert(parent);
    std::vector<std::vector<VertexId>> deep_paths;
    for (const auto& [child, parent] : st.edges) {
        (void)parent;
        if (has_child.count(child)) continue;  // not a leaf
        if (!child.is_tail() || child.copy < deep_bar) continue;
        std::vector<VertexId> path{child};
        VertexId cur = child;
        while (cur != st.root) {
            cur = parents.at(cur);
            path.push_back(cur);
        }
        std::reverse(path.begin(), path.end());
        deep_paths.push_back(std::move(path));
    }

    // equivalence of a deep path with an end: its tip stays in C(X_k, end)
    // for every canonical cut depth k
    std::map<std::pair<int64_t, int32_t>, Epvs> cut_components;
    for (int64_t k = 1; k <= 12; ++k) {
        Epvs x = Epvs::all_cores(pres);
        for (int32_t t = 0; t < pres.tail_count(); ++t)
            for (int32_t i = 0; i < pres.period_of(t); ++i)
                x.set_strand(t, i, Upis::range(0, k));
        for (const End& e : ends)
            if (e.topological) cut_components[{k, e.id}] = component_of(pres, x, e);
    }
    // separation tests deeper than the prefix reach pass vacuously; at
    // least one cut must apply for a claim to count
    auto equivalent = [&](const std::vector<VertexId>& path, const End& e) {
        const VertexId& tip = path.back();
        bool tested = false;
        for (int64_t k = 1; k <= 12; ++k) {
            if (tip.copy <= k + 1) break;  // deeper cuts swallow the prefix
            tested = true;
            if (!cut_components.at({k, e.id}).contains(tip)) return false;
        }
        return tested;
    };

    std::map<int32_t, const SpanningTreePrefix::RayCert*> certs;
    for (const auto& cert : st.ray_certificates) certs[cert.end_id] = &cert;

    for (const End& e : ends) {
        if (!e.topological) continue;
        // existence and uniqueness among deep tree rays; paths that only
        // diverge near the frontier are one potential ray (a stalling
        // hook cannot be told from the trunk at prefix scale)
        int64_t early_bar = reach - std::max<int64_t>(4, reach / 3);
        std::vector<const std::vector<VertexId>*> matches;
        for (const auto& path : deep_paths)
            if (equivalent(path, e)) matches.push_back(&path);
        if (matches.empty()) {
            rep.fail("no rooted tree ray belongs to end " + std::to_string(e.id));
            continue;
        }
        bool split_early = false;
        for (size_t a = 0; a < matches.size(); ++a)
            for (size_t b = a + 1; b < matches.size(); ++b) {
                const auto &pa = *matches[a], &pb = *matches[b];
                size_t j = 0;
                while (j < pa.size() && j < pb.size() && pa[j] == pb[j]) ++j;
                int64_t div_copy = j == 0 ? -1 : (pa[j - 1].is_tail() ? pa[j - 1].copy : -1);
                if (div_copy < early_bar) split_early = true;
            }
        if (split_early) {
            rep.fail("end " + std::to_string(e.id) + " has " +
                     std::to_string(matches.size()) + " separated rooted tree rays");
            continue;
        }
        const std::vector<VertexId>* match = matches[0];
        for (const auto* p : matches)
            if (p->size() > match->size()) match = p;
        // the certificate must be a rooted prefix of that ray
        auto it = certs.find(e.id);
        if (it == certs.end()) {
            rep.fail("no ray certificate for end " + std::to_string(e.id));
            continue;
        }
        const auto& ray = it->second->ray;
        if (ray.empty() || ray.front() != st.root) {
            rep.fail("certificate for end " + std::to_string(e.id) + " is not rooted");
            continue;
        }
        bool prefix_ok = false;
        for (const auto* p : matches) {
            bool ok = ray.size() <= p->size();
            for (size_t i = 0; ok && i < ray.size(); ++i)
                if (ray[i] != (*p)[i]) ok = false;
            prefix_ok = prefix_ok || ok;
        }
        (void)match;
        if (!prefix_ok)
            rep.fail("certificate for end " + std::to_string(e.id) +
                     " diverges from its tree ray");
    }
    for (const auto& cert : st.ray_certificates)
        if (!by_id.count(cert.end_id) || !by_id[cert.end_id]->topological)
            rep.fail("certificate names a non-topological end " + std::to_string(cert.end_id));
    return rep;
}

}  // namespace endscope
