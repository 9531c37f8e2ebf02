#include "endscope/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "endscope/jsonio.hpp"
#include "endscope/textio.hpp"
#include "endscope/unfold.hpp"
#include "endscope/verify.hpp"
#include "endscope/zoo.hpp"

namespace endscope {

namespace {

struct Options {
    std::string example;
    std::string graph_file;
    std::string format = "text";
    std::string set_spec;
    std::string what;
    std::string in_file;
    std::string emit_name;
    bool check = false;
    int64_t depth = -1;
    int64_t horizon = -1;
    int64_t layers = -1;
    uint64_t seed = 1;
};

int64_t env_default(int64_t fallback) {
    const char* s = std::getenv("ENDSCOPE_DEPTH_DEFAULT");
    if (s == nullptr) return fallback;
    try {
        return std::stoll(s);
    } catch (...) {
        return fallback;
    }
}

EpgPresentation load_graph(const Options& opt) {
    if (!opt.example.empty() && !opt.graph_file.empty())
        throw CLI::ValidationError("--example and --graph are mutually exclusive");
    if (!opt.example.empty()) return zoo_graph(opt.example);
    if (!opt.graph_file.empty()) {
        std::ifstream in(opt.graph_file);
        if (!in) throw CLI::ValidationError("cannot open " + opt.graph_file);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_presentation(buf.str());
    }
    throw CLI::ValidationError("one of --example or --graph is required");
}

Epvs load_set(const EpgPresentation& pres, const std::string& spec) {
    if (spec.empty()) throw CLI::ValidationError("--set is required for this subcommand");
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw CLI::ValidationError("cannot open set file " + spec.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_vertex_set(pres, buf.str());
    }
    return parse_vertex_set(pres, spec);
}

std::string end_line(const End& e) {
    std::ostringstream out;
    out << "end " << e.id << ": tail " << e.tail << ", strands {";
    for (size_t i = 0; i < e.strands.size(); ++i) out << (i ? "," : "") << e.strands[i];
    out << "}, " << (e.topological ? "topological" : "dominated");
    if (!e.dominators.empty()) {
        out << " by {";
        for (size_t i = 0; i < e.dominators.size(); ++i)
            out << (i ? "," : "") << "c" << e.dominators[i];
        out << "}";
    }
    return out.str();
}

// ------------------------------------------------------------------
// subcommand bodies; each returns the exit code
// ------------------------------------------------------------------

int cmd_info(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    ValidationReport rep = validate(pres);
    if (opt.format == "json") {
        Json issues = Json::array();
        for (const auto& issue : rep.issues) issues.push_back(issue.message);
        int64_t strands = 0;
        for (const auto& t : pres.tails) strands += t.period;
        out << Json{{"schema", 1},
                    {"graph", pres.name},
                    {"cores", pres.core_count},
                    {"tails", pres.tail_count()},
                    {"strands", strands},
                    {"valid", rep.structurally_valid},
                    {"connected", rep.connected},
                    {"issues", issues}}
                   .dump(2)
            << "\n";
    } else {
        out << "graph " << pres.name << ": " << pres.core_count << " cores, "
            << pres.tail_count() << " tails\n";
        out << "valid: " << (rep.structurally_valid ? "yes" : "no") << "\n";
        out << "connected: " << (rep.connected ? "yes" : "no") << "\n";
        for (const auto& issue : rep.issues) out << "issue: " << issue.message << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_ends(const Options& opt, std::ostream& out, bool dominators_only) {
    EpgPresentation pres = load_graph(opt);
    auto ends = enumerate_ends(pres);
    if (opt.format == "json") {
        out << ends_to_json(pres, ends).dump(2) << "\n";
    } else {
        if (ends.empty()) out << "no ends\n";
        for (const End& e : ends) {
            if (dominators_only) {
                out << "end " << e.id << ": dominators {";
                for (size_t i = 0; i < e.dominators.size(); ++i)
                    out << (i ? "," : "") << "c" << e.dominators[i];
                out << "}\n";
            } else {
                out << end_line(e) << "\n";
            }
        }
    }
    return 0;
}

int cmd_closure(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    Epvs m = load_set(pres, opt.set_spec);
    auto in_closure = closure(pres, m);
    if (opt.format == "json") {
        out << ends_to_json(pres, in_closure).dump(2) << "\n";
    } else {
        if (in_closure.empty()) out << "closure is empty\n";
        for (const End& e : in_closure) out << end_line(e) << "\n";
    }
    return 0;
}

int cmd_starcomb(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    Epvs u = load_set(pres, opt.set_spec);
    Certificate cert = star_or_comb(pres, u);
    CheckResult res = check_certificate(pres, cert, 50, u);
    if (opt.format == "json") {
        Json j = certificate_to_json(pres, cert, 50);
        j["checked"] = res.ok;
        out << j.dump(2) << "\n";
    } else {
        if (cert.kind == Certificate::Kind::Star) {
            out << "star with center " << cert.center.to_string() << "\n";
        } else {
            out << "comb with spine shift " << cert.spine.shift << " starting at "
                << (cert.spine.prefix.empty() ? cert.spine.segment.front().to_string()
                                              : cert.spine.prefix.front().to_string())
                << "\n";
        }
        out << "attachment: " << emit_vertex_set(cert.attachment) << "\n";
        out << "check(50): " << (res.ok ? "pass" : "fail: " + res.message) << "\n";
    }
    return res.ok ? 0 : 1;
}

int cmd_envelope(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    Epvs u = load_set(pres, opt.set_spec);
    Epvs u_star = envelope(pres, u);
    if (opt.format == "json") {
        out << envelope_to_json(pres, u, u_star).dump(2) << "\n";
        return 0;
    }
    EnvelopeCheck check = verify_envelope(pres, u, u_star);
    out << "envelope: " << emit_vertex_set(u_star) << "\n";
    out << "superset: " << (check.superset ? "pass" : "fail") << "\n";
    out << "connected: " << (check.connected ? "pass" : "fail") << "\n";
    out << "finite adhesion: " << (check.adhesion ? "pass" : "fail") << "\n";
    out << "closure unchanged: " << (check.closure_equal ? "pass" : "fail") << "\n";
    return check.ok() ? 0 : 1;
}

int cmd_exhaustion(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    int64_t layers = opt.layers >= 0 ? opt.layers : env_default(8);
    Exhaustion exh = build_exhaustion(pres, layers);
    Json j = exhaustion_to_json(pres, exh);
    if (opt.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        for (const auto& layer : j.at("layers"))
            out << "H_" << layer.at("layer") << ": size "
                << layer.at("size_class").dump() << ", (i) "
                << (layer.at("neighborhoods").get<bool>() ? "pass" : "fail") << ", (ii) "
                << (layer.at("unique_component").get<bool>() ? "pass" : "fail") << ", (iii) "
                << (layer.at("connected_intersections").get<bool>() ? "pass" : "fail") << "\n";
        if (exh.stabilized) out << "stabilized at layer " << exh.stabilized_at << "\n";
    }
    return j.at("pass").get<bool>() ? 0 : 1;
}

int cmd_treedecomp(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    int64_t depth = opt.depth >= 0 ? opt.depth : env_default(6);
    TreeDecompositionPrefix td = build_tree_decomposition(pres, depth);
    if (opt.format == "dot")
        out << emit_dot(pres, td);
    else if (opt.format == "json")
        out << td_to_json(pres, td).dump(2) << "\n";
    else
        out << td_to_json(pres, td).dump(2) << "\n";
    return 0;
}

int cmd_spanningtree(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    int64_t depth = opt.depth >= 0 ? opt.depth : env_default(6);
    int64_t horizon = opt.horizon >= 0 ? opt.horizon : std::max<int64_t>(40, env_default(40));
    SpanningTreePrefix st = build_spanning_tree(pres, depth, horizon);
    if (opt.format == "dot")
        out << emit_dot(pres, st);
    else
        out << st_to_json(pres, st).dump(2) << "\n";
    return 0;
}

int cmd_unfold(const Options& opt, std::ostream& out) {
    EpgPresentation pres = load_graph(opt);
    int64_t depth = opt.depth >= 0 ? opt.depth : env_default(8);
    FiniteGraph g = unfold(pres, depth);
    if (opt.format == "dot") {
        out << unfold_to_dot(pres, g);
    } else if (opt.format == "json") {
        out << unfold_to_json(pres, g).dump(2) << "\n";
    } else {
        out << g.size() << " vertices, " << g.edge_count() << " edges\n";
    }
    return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    if (opt.in_file.empty()) throw CLI::ValidationError("--in FILE is required");
    std::ifstream in(opt.in_file);
    if (!in) throw CLI::ValidationError("cannot open " + opt.in_file);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CLI::ValidationError(std::string("bad JSON: ") + e.what());
    }
    int64_t horizon = opt.horizon >= 0 ? opt.horizon : std::max<int64_t>(40, env_default(40));

    std::vector<std::pair<std::string, Report>> reports;
    EpgPresentation pres;
    if (opt.what == "td") {
        TreeDecompositionPrefix td = td_from_json(j, pres);
        reports.push_back({"td axioms", check_td_axioms(pres, td, horizon)});
        reports.push_back({"upwards disjoint", check_upwards_disjoint(pres, td, horizon)});
    } else if (opt.what == "display") {
        TreeDecompositionPrefix td = td_from_json(j, pres);
        reports.push_back({"display", check_display(pres, td)});
    } else if (opt.what == "tree") {
        SpanningTreePrefix st = st_from_json(j, pres);
        reports.push_back({"end faithful", check_end_faithful(pres, st)});
    } else {
        throw CLI::ValidationError("--what must be td, display or tree");
    }
    bool pass = true;
    for (auto& [name, rep] : reports) {
        out << name << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
        for (const auto& w : rep.witnesses) out << "  witness: " << w << "\n";
        pass = pass && rep.pass;
    }
    return pass ? 0 : 1;
}

int cmd_zoo(const Options& opt, std::ostream& out) {
    if (!opt.emit_name.empty()) {
        out << emit_presentation(zoo_graph(opt.emit_name));
        return 0;
    }
    if (!opt.check) {
        for (const auto& name : zoo_names()) out << name << "\n";
        return 0;
    }
    // randomized symbolic-vs-unfolding component comparison
    std::mt19937 rng(static_cast<uint32_t>(opt.seed));
    bool all_ok = true;
    for (const auto& pres : zoo_all()) {
        bool ok = true;
        std::string detail;
        try {
            for (int trial = 0; trial < 6 && ok; ++trial) {
                std::bernoulli_distribution keep(0.25);
                Epvs cut = Epvs::empty_like(pres);
                for (int32_t c = 0; c < pres.core_count; ++c) cut.set_core(c, keep(rng));
                for (int32_t t = 0; t < pres.tail_count(); ++t)
                    for (int32_t i = 0; i < pres.period_of(t); ++i)
                        for (int64_t k = 0; k < 8; ++k)
                            if (keep(rng)) cut.insert(VertexId::Tail_(t, k, i));
                ComplementAnalysis an = analyze_complement(pres, cut);
                FiniteGraph g = unfold(pres, 44);
                auto comp = finite_components(g, [&](int32_t x) {
                    return !cut.contains(g.vertices[static_cast<size_t>(x)]);
                });
                for (size_t x = 0; x < g.size() && ok; ++x) {
                    const VertexId& v = g.vertices[x];
                    if (cut.contains(v) || (v.is_tail() && v.copy > 14)) continue;
                    for (size_t y = 0; y < g.size() && ok; ++y) {
                        const VertexId& w = g.vertices[y];
                        if (cut.contains(w) || (w.is_tail() && w.copy > 14)) continue;
                        int32_t pv = an.part_of(v), pw = an.part_of(w);
                        bool same_sym =
                            pv == pw &&
                            an.parts[static_cast<size_t>(pv)].member_index_of(v) ==
                                an.parts[static_cast<size_t>(pw)].member_index_of(w);
                        if (same_sym != (comp[x] == comp[y])) {
                            ok = false;
                            detail = " at " + v.to_string() + " / " + w.to_string();
                        }
                    }
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string(" (") + e.what() + ")";
        }
        out << pres.name << ": " << (ok ? "pass" : "FAIL") << detail << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    std::ostringstream out;

    CLI::App app{"exact end structure, envelopes, tree-decompositions and "
                 "end-faithful spanning trees of eventually periodic graphs"};
    app.require_subcommand(1);
    Options opt;

    auto add_graph_opts = [&opt](CLI::App* sub) {
        sub->add_option("--example", opt.example, "built-in example graph");
        sub->add_option("--graph", opt.graph_file, "presentation file");
    };
    auto add_format = [&opt](CLI::App* sub, const std::string& allowed) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember(CLI::detail::split(allowed, '|')));
    };

    CLI::App* info = app.add_subcommand("info", "validate a presentation");
    add_graph_opts(info);
    add_format(info, "text|json");

    CLI::App* ends_cmd = app.add_subcommand("ends", "enumerate ends");
    add_graph_opts(ends_cmd);
    add_format(ends_cmd, "text|json");

    CLI::App* closure_cmd = app.add_subcommand("closure", "ends in the closure of a set");
    add_graph_opts(closure_cmd);
    add_format(closure_cmd, "text|json");
    closure_cmd->add_option("--set", opt.set_spec, "vertex set (syntax or @file)");

    CLI::App* dom = app.add_subcommand("dominators", "dominating vertices per end");
    add_graph_opts(dom);
    add_format(dom, "text|json");

    CLI::App* sc = app.add_subcommand("starcomb", "star-comb certificate for a set");
    add_graph_opts(sc);
    add_format(sc, "text|json");
    sc->add_option("--set", opt.set_spec, "vertex set (syntax or @file)");

    CLI::App* env = app.add_subcommand("envelope", "connected envelope of a set");
    add_graph_opts(env);
    add_format(env, "text|json");
    env->add_option("--set", opt.set_spec, "vertex set (syntax or @file)");

    CLI::App* exh = app.add_subcommand("exhaustion", "layered exhaustion");
    add_graph_opts(exh);
    add_format(exh, "text|json");
    exh->add_option("--layers", opt.layers, "number of layers");

    CLI::App* td = app.add_subcommand("treedecomp", "tree-decomposition prefix");
    add_graph_opts(td);
    add_format(td, "text|json|dot");
    td->add_option("--depth", opt.depth, "prefix depth");

    CLI::App* st = app.add_subcommand("spanningtree", "end-faithful spanning tree prefix");
    add_graph_opts(st);
    add_format(st, "json|dot");
    st->add_option("--depth", opt.depth, "exhaustion depth");
    st->add_option("--horizon", opt.horizon, "materialization horizon");

    CLI::App* unf = app.add_subcommand("unfold", "finite unfolding");
    add_graph_opts(unf);
    add_format(unf, "text|json|dot");
    unf->add_option("--depth", opt.depth, "unfolding depth");

    CLI::App* ver = app.add_subcommand("verify", "check a certificate file");
    ver->add_option("--what", opt.what, "td | display | tree")->required();
    ver->add_option("--in", opt.in_file, "certificate JSON file")->required();
    ver->add_option("--horizon", opt.horizon, "check horizon");

    CLI::App* zoo_cmd = app.add_subcommand("zoo", "list or check the example zoo");
    zoo_cmd->add_option("--emit", opt.emit_name, "print one example as text");
    zoo_cmd->add_flag("--check", opt.check, "randomized oracle comparison");
    zoo_cmd->add_option("--seed", opt.seed, "random seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
        return result;
    }

    try {
        if (info->parsed())
            result.exit_code = cmd_info(opt, out);
        else if (ends_cmd->parsed())
            result.exit_code = cmd_ends(opt, out, false);
        else if (closure_cmd->parsed())
            result.exit_code = cmd_closure(opt, out);
        else if (dom->parsed())
            result.exit_code = cmd_ends(opt, out, true);
        else if (sc->parsed())
            result.exit_code = cmd_starcomb(opt, out);
        else if (env->parsed())
            result.exit_code = cmd_envelope(opt, out);
        else if (exh->parsed())
            result.exit_code = cmd_exhaustion(opt, out);
        else if (td->parsed())
            result.exit_code = cmd_treedecomp(opt, out);
        else if (st->parsed())
            result.exit_code = cmd_spanningtree(opt, out);
        else if (unf->parsed())
            result.exit_code = cmd_unfold(opt, out);
        else if (ver->parsed())
            result.exit_code = cmd_verify(opt, out);
        else if (zoo_cmd->parsed())
            result.exit_code = cmd_zoo(opt, out);
    } catch (const CLI::ValidationError& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
    } catch (const std::invalid_argument& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
    } catch (const std::exception& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 1;
    }
    result.out = out.str();
    return result;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    CliResult res = run_cli(args);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}

}  // namespace endscope
