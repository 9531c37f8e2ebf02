#include "endscope/treedecomp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "endscope/envelope.hpp"

namespace endscope {

namespace {

Epvs member_epvs(const EpgPresentation& pres, const GraphPart& part, int64_t m) {
    return Epvs::of_vertices(pres, part.family_member(m));
}

}  // namespace

TreeDecompositionPrefix build_tree_decomposition(const EpgPresentation& pres, int64_t depth) {
    if (depth < 1) throw std::invalid_argument("build_tree_decomposition: depth must be >= 1");
    Exhaustion exh = build_exhaustion(pres, depth + 1);
    return build_tree_decomposition(pres, depth, exh, enumerate_ends(pres));
}

TreeDecompositionPrefix build_tree_decomposition(const EpgPresentation& pres, int64_t depth,
                                                 const Exhaustion& exh,
                                                 const std::vector<End>& ends) {
    if (depth < 1) throw std::invalid_argument("build_tree_decomposition: depth must be >= 1");
    if (static_cast<int64_t>(exh.layers.size()) < depth + 2 && !exh.stabilized)
        throw std::invalid_argument("build_tree_decomposition: exhaustion too shallow");

    TreeDecompositionPrefix td;
    td.depth = depth;

    TdNode root;
    root.id = 0;
    root.parent = -1;
    root.layer = -1;
    root.bag = exh.layers[0];
    root.separator = Epvs::empty_like(pres);
    root.component = GraphPart{};
    root.component.vertices = Epvs::empty_like(pres);
    td.nodes.push_back(root);
    td.coverage = exh.layers[0];

    // per layer: ids of single-component nodes, for parent resolution
    std::vector<std::vector<int32_t>> singles_at_layer;

    int64_t max_layer = std::min<int64_t>(depth, static_cast<int64_t>(exh.components.size()) - 1);
    for (int64_t m = 0; m <= max_layer; ++m) {
        const Epvs& next_layer = exh.layer(m + 1);
        std::vector<int32_t> singles_here;
        for (const LayerComponent& rec : exh.components[static_cast<size_t>(m)]) {
            // resolve the parent node: the single component of the previous
            // layer containing this component (the root for m == 0)
            auto parent_of_epvs = [&](const Epvs& vertices) -> int32_t {
                if (m == 0) return 0;
                for (int32_t pid : singles_at_layer[static_cast<size_t>(m - 1)]) {
                    const TdNode& pn = td.nodes[static_cast<size_t>(pid)];
                    if (vertices.subset_of(pn.component.vertices)) return pid;
                }
                throw std::runtime_error("tree decomposition: component without parent");
            };

            if (!rec.part.family) {
                TdNode node;
                node.id = static_cast<int32_t>(td.nodes.size());
                node.layer = static_cast<int32_t>(m);
                node.component = rec.part;
                node.separator = rec.boundary;
                node.bag = rec.boundary | (rec.part.vertices & next_layer);
                node.parent = parent_of_epvs(rec.part.vertices);
                td.coverage = td.coverage | node.bag;
                singles_here.push_back(node.id);
                td.nodes.push_back(std::move(node));
            } else {
                // split the family by the parent of its members
                Upis remaining = Upis::all();
                std::vector<std::pair<int32_t, Upis>> groups;
                if (m == 0) {
                    groups.push_back({0, remaining});
                    remaining = Upis::none();
                } else {
                    for (int32_t pid : singles_at_layer[static_cast<size_t>(m - 1)]) {
                        const TdNode& pn = td.nodes[static_cast<size_t>(pid)];
                        Upis inside = Upis::all();
                        for (const VertexId& b : rec.part.family_base)
                            inside = inside &
                                     pn.component.vertices.strand(rec.part.family_tail, b.strand)
                                         .affine_preimage(b.copy, rec.part.family_stride);
                        if (inside.empty()) continue;
                        groups.push_back({pid, inside});
                        remaining = remaining - inside;
                    }
                    if (!remaining.empty())
                        throw std::runtime_error(
                            "tree decomposition: family members without parent");
                }
                for (auto& [pid, filter] : groups) {
                    TdNode node;
                    node.id = static_cast<int32_t>(td.nodes.size());
                    node.layer = static_cast<int32_t>(m);
                    node.family = true;
                    node.component = rec.part;
                    node.member_filter = filter;
                    int64_t least = *filter.min();
                    Epvs member = member_epvs(pres, rec.part, least);
                    node.separator = adhesion_set(pres, member);
                    node.bag = node.separator | (member & next_layer);
                    node.parent = pid;
                    td.nodes.push_back(std::move(node));
                }
            }
        }
        singles_at_layer.push_back(std::move(singles_here));
    }

    // family nodes: every member bag is N(member) | member
    for (const TdNode& node : td.nodes)
        if (node.family)
            td.coverage = td.coverage | node.component.vertices |
                          (neighbors(pres, node.component.vertices) - node.component.vertices);

    // display table: one chain per topological end
    for (const End& e : ends) {
        if (!e.topological) continue;
        DisplayEntry entry;
        entry.end_id = e.id;
        for (int64_t m = 0; m <= max_layer; ++m) {
            // home component: contains a deep vertex of the representative
            const Epvs& h = exh.layers[static_cast<size_t>(m)];
            Epvs meet = h & e.component;
            int64_t deep = meet.max_threshold() + 2;
            for (int32_t i = 0; i < pres.period_of(e.tail); ++i)
                if (auto mx = meet.strand(e.tail, i).max_if_finite())
                    deep = std::max(deep, *mx + 2);
            VertexId v = e.representative.deep_vertex(deep);
            int32_t home = -1;
            for (int32_t pid : singles_at_layer[static_cast<size_t>(m)])
                if (td.nodes[static_cast<size_t>(pid)].component.vertices.contains(v)) home = pid;
            if (home < 0)
                throw std::runtime_error("tree decomposition: topological end lost its chain");
            entry.node_chain.push_back(home);
        }
        td.display.push_back(std::move(entry));
    }

    // dominated ends: orientation walk stabilizes at a node
    for (const End& e : ends) {
        if (e.topological) continue;
        int32_t at = 0;
        for (int64_t m = 0; m <= max_layer; ++m) {
            int32_t next = -1;
            for (int32_t pid : singles_at_layer[static_cast<size_t>(m)]) {
                const TdNode& node = td.nodes[static_cast<size_t>(pid)];
                if (node.parent != at) continue;
                if (node.component.vertices.infinitely_intersects(e.component)) {
                    next = pid;
                    break;
                }
            }
            if (next < 0) break;
            at = next;
        }
        td.dominated.push_back({e.id, at});
    }

    return td;
}

// ---------------------------------------------------------------------
// concrete materialization
// ---------------------------------------------------------------------

std::vector<TreeDecompositionPrefix::Concrete> TreeDecompositionPrefix::concrete_nodes(
    int64_t horizon) const {
    std::vector<Concrete> out;
    for (const TdNode& node : nodes) {
        if (!node.family) {
            out.push_back({node.id, -1});
            continue;
        }
        for (int64_t m = 0;; ++m) {
            auto idx = node.member_filter.nth(m);
            if (!idx) break;
            bool inside = false;
            for (const VertexId& b : node.component.family_base)
                if (b.copy + *idx * node.component.family_stride <= horizon) inside = true;
            if (!inside) break;
            out.push_back({node.id, *idx});
        }
    }
    return out;
}

Epvs TreeDecompositionPrefix::concrete_component(const EpgPresentation& pres,
                                                 const Concrete& c) const {
    const TdNode& node = nodes[static_cast<size_t>(c.node)];
    if (c.member < 0) return node.component.vertices;
    return member_epvs(pres, node.component, c.member);
}

Epvs TreeDecompositionPrefix::concrete_separator(const EpgPresentation& pres,
                                                 const Concrete& c) const {
    const TdNode& node = nodes[static_cast<size_t>(c.node)];
    if (c.member < 0) return node.separator;
    Epvs member = member_epvs(pres, node.component, c.member);
    return adhesion_set(pres, member);
}

Epvs TreeDecompositionPrefix::concrete_bag(const EpgPresentation& pres, const Concrete& c) const {
    const TdNode& node = nodes[static_cast<size_t>(c.node)];
    if (c.member < 0) return node.bag;
    // family members are absorbed whole: bag = N(member) | member
    Epvs member = member_epvs(pres, node.component, c.member);
    return adhesion_set(pres, member) | member;
}

std::string emit_dot(const EpgPresentation& pres, const TreeDecompositionPrefix& td) {
    (void)pres;
    std::ostringstream out;
    out << "graph decomposition {\n";
    out << "  node [shape=box];\n";
    for (const TdNode& node : td.nodes) {
        std::string label;
        if (node.id == 0) {
            label = "root";
        } else if (node.family) {
            label = "layer " + std::to_string(node.layer) + " family";
        } else {
            label = "layer " + std::to_string(node.layer);
        }
        auto size = node.bag.size_if_finite();
        label += "\\nbag " + (size ? std::to_string(*size) : std::string("inf"));
        out << "  n" << node.id << " [label=\"" << label << "\"";
        if (node.family) out << ", peripheries=2";
        out << "];\n";
    }
    for (const TdNode& node : td.nodes)
        if (node.parent >= 0) out << "  n" << node.parent << " -- n" << node.id << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace endscope
