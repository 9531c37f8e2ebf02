#include "endscope/jsonio.hpp"

#include <sstream>
#include <stdexcept>

#include "endscope/textio.hpp"

namespace endscope {

namespace {

Json vertex_list(const std::vector<VertexId>& vs) {
    Json arr = Json::array();
    for (const VertexId& v : vs) arr.push_back(v.to_string());
    return arr;
}

std::vector<VertexId> vertices_from(const Json& arr) {
    std::vector<VertexId> out;
    for (const auto& s : arr) out.push_back(parse_vertex(s.get<std::string>()));
    return out;
}

Json ray_to_json(const PeriodicRay& ray) {
    return Json{{"prefix", vertex_list(ray.prefix)},
                {"segment", vertex_list(ray.segment)},
                {"shift", ray.shift}};
}

}  // namespace

std::string emit_index_set(const Upis& u) {
    if (u.empty()) return "none";
    std::string atoms;
    auto add = [&atoms](const std::string& a) { atoms += (atoms.empty() ? "" : ",") + a; };
    for (int64_t k : u.elements_below(u.threshold())) add(std::to_string(k));
    const auto& pat = u.pattern_bits();
    for (int64_t x = 0; x < u.period(); ++x)
        if (pat[static_cast<size_t>(x)]) {
            if (u.period() == 1)
                add(">=" + std::to_string(u.threshold()));
            else
                add(std::to_string(u.threshold() + x) + "+" + std::to_string(u.period()) + "k");
        }
    return atoms;
}

Upis parse_index_set(const std::string& text) {
    Upis u = Upis::none();
    std::string atom;
    std::istringstream in(text);
    while (std::getline(in, atom, ',')) {
        size_t a = atom.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        size_t b = atom.find_last_not_of(" \t");
        atom = atom.substr(a, b - a + 1);
        if (atom == "none") continue;
        if (atom == "all") {
            u = Upis::all();
        } else if (atom.rfind(">=", 0) == 0) {
            u = u | Upis::at_least(std::stoll(atom.substr(2)));
        } else if (auto plus = atom.find('+'); plus != std::string::npos && atom.back() == 'k') {
            u = u | Upis::arithmetic(std::stoll(atom.substr(0, plus)),
                                     std::stoll(atom.substr(plus + 1, atom.size() - plus - 2)));
        } else {
            u = u | Upis::singleton(std::stoll(atom));
        }
    }
    return u;
}

Json ends_to_json(const EpgPresentation& pres, const std::vector<End>& ends) {
    (void)pres;
    Json out{{"schema", 1}, {"graph", pres.name}};
    Json list = Json::array();
    for (const End& e : ends) {
        Json doms = Json::array();
        for (int32_t d : e.dominators) doms.push_back("c" + std::to_string(d));
        list.push_back(Json{{"id", e.id},
                            {"tail", e.tail},
                            {"strands", e.strands},
                            {"dominators", doms},
                            {"topological", e.topological},
                            {"representative", ray_to_json(e.representative)}});
    }
    out["ends"] = list;
    return out;
}

Json certificate_to_json(const EpgPresentation& pres, const Certificate& cert, int64_t n_paths) {
    Json out{{"schema", 1}, {"graph", pres.name}};
    out["kind"] = cert.kind == Certificate::Kind::Star ? "star" : "comb";
    if (cert.kind == Certificate::Kind::Star)
        out["center"] = cert.center.to_string();
    else
        out["spine"] = ray_to_json(cert.spine);
    out["attachment"] = emit_vertex_set(cert.attachment);
    Json paths = Json::array();
    int64_t per = (n_paths + static_cast<int64_t>(cert.paths.size()) - 1) /
                  std::max<int64_t>(1, static_cast<int64_t>(cert.paths.size()));
    for (int64_t m = 0; m < per && static_cast<int64_t>(paths.size()) < n_paths; ++m)
        for (const PathFamily& fam : cert.paths) {
            if (static_cast<int64_t>(paths.size()) >= n_paths) break;
            paths.push_back(vertex_list(fam.member(m)));
        }
    out["first_n_paths"] = paths;
    return out;
}

Json envelope_to_json(const EpgPresentation& pres, const Epvs& u, const Epvs& u_star) {
    EnvelopeCheck check = verify_envelope(pres, u, u_star);
    return Json{{"schema", 1},
                {"graph", pres.name},
                {"input", emit_vertex_set(u)},
                {"envelope", emit_vertex_set(u_star)},
                {"verified",
                 Json{{"superset", check.superset},
                      {"connected", check.connected},
                      {"finite_adhesion", check.adhesion},
                      {"closure_equal", check.closure_equal}}}};
}

Json exhaustion_to_json(const EpgPresentation& pres, const Exhaustion& exh) {
    auto ends = enumerate_ends(pres);
    ExhaustionCheck check = verify_exhaustion(pres, exh, ends);
    Json layers = Json::array();
    for (size_t m = 0; m < exh.layers.size(); ++m) {
        const Epvs& h = exh.layers[m];
        auto size = h.size_if_finite();
        const auto& flags = check.per_layer[m];
        layers.push_back(Json{{"layer", m},
                              {"size_class", size ? Json(*size) : Json("infinite")},
                              {"set", emit_vertex_set(h)},
                              {"neighborhoods", flags.neighborhoods},
                              {"unique_component", flags.unique_component},
                              {"connected_intersections", flags.connected_intersections}});
    }
    return Json{{"schema", 1},
                {"graph", pres.name},
                {"stabilized", exh.stabilized},
                {"layers", layers},
                {"pass", check.ok()}};
}

// ---------------------------------------------------------------------
// tree decomposition
// ---------------------------------------------------------------------

namespace {

Json part_to_json(const GraphPart& part) {
    Json j{{"vertices", emit_vertex_set(part.vertices)},
           {"infinite", part.infinite},
           {"family", part.family}};
    if (part.family) {
        j["family_tail"] = part.family_tail;
        j["family_stride"] = part.family_stride;
        j["family_base"] = vertex_list(part.family_base);
    }
    return j;
}

GraphPart part_from_json(const EpgPresentation& pres, const Json& j) {
    GraphPart part;
    part.vertices = parse_vertex_set(pres, j.at("vertices").get<std::string>());
    part.infinite = j.at("infinite").get<bool>();
    part.family = j.at("family").get<bool>();
    if (part.family) {
        part.family_tail = j.at("family_tail").get<int32_t>();
        part.family_stride = j.at("family_stride").get<int64_t>();
        part.family_base = vertices_from(j.at("family_base"));
    }
    return part;
}

}  // namespace

Json td_to_json(const EpgPresentation& pres, const TreeDecompositionPrefix& td) {
    Json nodes = Json::array();
    for (const TdNode& node : td.nodes) {
        Json j{{"id", node.id},
               {"parent", node.parent},
               {"layer", node.layer},
               {"family", node.family},
               {"bag", emit_vertex_set(node.bag)},
               {"separator", emit_vertex_set(node.separator)},
               {"component", part_to_json(node.component)}};
        if (node.family) j["member_filter"] = emit_index_set(node.member_filter);
        nodes.push_back(std::move(j));
    }
    Json display = Json::array();
    for (const DisplayEntry& d : td.display)
        display.push_back(Json{{"end", d.end_id}, {"chain", d.node_chain}});
    Json dominated = Json::array();
    for (const DominatedEntry& d : td.dominated)
        dominated.push_back(Json{{"end", d.end_id}, {"node", d.node}});
    return Json{{"schema", 1},         {"presentation", emit_presentation(pres)},
                {"depth", td.depth},   {"nodes", nodes},
                {"display", display},  {"dominated", dominated},
                {"coverage", emit_vertex_set(td.coverage)}};
}

TreeDecompositionPrefix td_from_json(const Json& j, EpgPresentation& pres_out) {
    if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unknown schema version");
    pres_out = parse_presentation(j.at("presentation").get<std::string>());
    TreeDecompositionPrefix td;
    td.depth = j.at("depth").get<int64_t>();
    for (const auto& nj : j.at("nodes")) {
        TdNode node;
        node.id = nj.at("id").get<int32_t>();
        node.parent = nj.at("parent").get<int32_t>();
        node.layer = nj.at("layer").get<int32_t>();
        node.family = nj.at("family").get<bool>();
        node.bag = parse_vertex_set(pres_out, nj.at("bag").get<std::string>());
        node.separator = parse_vertex_set(pres_out, nj.at("separator").get<std::string>());
        node.component = part_from_json(pres_out, nj.at("component"));
        if (node.family)
            node.member_filter = parse_index_set(nj.at("member_filter").get<std::string>());
        td.nodes.push_back(std::move(node));
    }
    for (const auto& dj : j.at("display")) {
        DisplayEntry d;
        d.end_id = dj.at("end").get<int32_t>();
        d.node_chain = dj.at("chain").get<std::vector<int32_t>>();
        td.display.push_back(std::move(d));
    }
    for (const auto& dj : j.at("dominated"))
        td.dominated.push_back({dj.at("end").get<int32_t>(), dj.at("node").get<int32_t>()});
    td.coverage = parse_vertex_set(pres_out, j.at("coverage").get<std::string>());
    return td;
}

// ---------------------------------------------------------------------
// spanning tree
// ---------------------------------------------------------------------

Json st_to_json(const EpgPresentation& pres, const SpanningTreePrefix& st) {
    Json edges = Json::array();
    for (const auto& [child, parent] : st.edges)
        edges.push_back(Json::array({child.to_string(), parent.to_string()}));
    Json atts = Json::array();
    for (const auto& a : st.attachment_edges)
        atts.push_back(Json{{"layer", a.layer},
                            {"inside", a.inside.to_string()},
                            {"outside", a.outside.to_string()}});
    Json certs = Json::array();
    for (const auto& c : st.ray_certificates)
        certs.push_back(Json{{"end", c.end_id}, {"ray", vertex_list(c.ray)}});
    return Json{{"schema", 1},
                {"presentation", emit_presentation(pres)},
                {"root", st.root.to_string()},
                {"depth", st.depth},
                {"horizon", st.horizon},
                {"spans", emit_vertex_set(st.spans)},
                {"edges", edges},
                {"attachments", atts},
                {"certificates", certs}};
}

SpanningTreePrefix st_from_json(const Json& j, EpgPresentation& pres_out) {
    if (j.at("schema").get<int>() != 1) throw std::invalid_argument("unknown schema version");
    pres_out = parse_presentation(j.at("presentation").get<std::string>());
    SpanningTreePrefix st;
    st.root = parse_vertex(j.at("root").get<std::string>());
    st.depth = j.at("depth").get<int64_t>();
    st.horizon = j.at("horizon").get<int64_t>();
    st.spans = parse_vertex_set(pres_out, j.at("spans").get<std::string>());
    for (const auto& ej : j.at("edges"))
        st.edges.push_back({parse_vertex(ej.at(0).get<std::string>()),
                            parse_vertex(ej.at(1).get<std::string>())});
    for (const auto& aj : j.at("attachments"))
        st.attachment_edges.push_back({aj.at("layer").get<int64_t>(),
                                       parse_vertex(aj.at("inside").get<std::string>()),
                                       parse_vertex(aj.at("outside").get<std::string>())});
    for (const auto& cj : j.at("certificates"))
        st.ray_certificates.push_back(
            {cj.at("end").get<int32_t>(), vertices_from(cj.at("ray"))});
    return st;
}

// ---------------------------------------------------------------------
// unfoldings
// ---------------------------------------------------------------------

std::string unfold_to_dot(const EpgPresentation& pres, const FiniteGraph& g) {
    (void)pres;
    std::ostringstream out;
    out << "graph unfolding {\n  node [shape=circle];\n";
    for (size_t x = 0; x < g.size(); ++x) {
        out << "  \"" << g.vertices[x].to_string() << "\"";
        if (g.boundary[x]) out << " [style=dashed]";
        out << ";\n";
    }
    for (size_t x = 0; x < g.size(); ++x)
        for (int32_t y : g.adj[x])
            if (static_cast<int32_t>(x) < y)
                out << "  \"" << g.vertices[x].to_string() << "\" -- \""
                    << g.vertices[static_cast<size_t>(y)].to_string() << "\";\n";
    out << "}\n";
    return out.str();
}

Json unfold_to_json(const EpgPresentation& pres, const FiniteGraph& g) {
    Json verts = Json::array();
    for (size_t x = 0; x < g.size(); ++x)
        verts.push_back(Json{{"id", g.vertices[x].to_string()},
                             {"boundary", static_cast<bool>(g.boundary[x])}});
    Json edges = Json::array();
    for (size_t x = 0; x < g.size(); ++x)
        for (int32_t y : g.adj[x])
            if (static_cast<int32_t>(x) < y)
                edges.push_back(Json::array(
                    {g.vertices[x].to_string(),
                     g.vertices[static_cast<size_t>(y)].to_string()}));
    return Json{{"schema", 1}, {"graph", pres.name}, {"vertices", verts}, {"edges", edges}};
}

}  // namespace endscope
