#include "endscope/textio.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace endscope {

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
}

int64_t to_int(const std::string& tok, int line_no) {
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line_no, "expected integer, got '" + tok + "'");
    return value;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        toks.push_back(tok);
    }
    return toks;
}

}  // namespace

EpgPresentation parse_presentation(const std::string& text) {
    EpgPresentation pres;
    pres.name = "unnamed";
    bool saw_core = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        auto arity = [&](size_t n) {
            if (toks.size() != n + 1)
                parse_fail(line_no, kw + " expects " + std::to_string(n) + " arguments");
        };
        auto tail_ref = [&](int64_t t) -> TailSpec& {
            if (t < 0 || t >= pres.tail_count())
                parse_fail(line_no, "forward reference to undeclared tail " + std::to_string(t));
            return pres.tails[static_cast<size_t>(t)];
        };
        if (kw == "graph") {
            arity(1);
            pres.name = toks[1];
        } else if (kw == "core") {
            arity(1);
            pres.core_count = to_int(toks[1], line_no);
            if (pres.core_count < 0) parse_fail(line_no, "core count must be >= 0");
            saw_core = true;
        } else if (kw == "core_edge") {
            arity(2);
            pres.core_edges.push_back({static_cast<int32_t>(to_int(toks[1], line_no)),
                                       static_cast<int32_t>(to_int(toks[2], line_no))});
        } else if (kw == "tail") {
            arity(3);
            if (toks[2] != "period") parse_fail(line_no, "expected 'tail <t> period <p>'");
            int64_t t = to_int(toks[1], line_no);
            if (t != pres.tail_count())
                parse_fail(line_no, "tails must be declared in order; expected tail " +
                                        std::to_string(pres.tail_count()));
            TailSpec spec;
            spec.period = to_int(toks[3], line_no);
            if (spec.period < 1) parse_fail(line_no, "tail period must be >= 1");
            pres.tails.push_back(spec);
        } else if (kw == "intra") {
            arity(3);
            tail_ref(to_int(toks[1], line_no))
                .intra.push_back({static_cast<int32_t>(to_int(toks[2], line_no)),
                                  static_cast<int32_t>(to_int(toks[3], line_no))});
        } else if (kw == "inter") {
            arity(3);
            tail_ref(to_int(toks[1], line_no))
                .inter.push_back({static_cast<int32_t>(to_int(toks[2], line_no)),
                                  static_cast<int32_t>(to_int(toks[3], line_no))});
        } else if (kw == "attach") {
            arity(3);
            tail_ref(to_int(toks[1], line_no))
                .attach.push_back({static_cast<int32_t>(to_int(toks[2], line_no)),
                                   static_cast<int32_t>(to_int(toks[3], line_no))});
        } else if (kw == "hub") {
            arity(5);
            HubRule r;
            r.core = static_cast<int32_t>(to_int(toks[2], line_no));
            r.strand = static_cast<int32_t>(to_int(toks[3], line_no));
            r.start = to_int(toks[4], line_no);
            r.stride = to_int(toks[5], line_no);
            if (r.stride < 1) parse_fail(line_no, "hub stride must be >= 1");
            tail_ref(to_int(toks[1], line_no)).hubs.push_back(r);
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_core) throw std::invalid_argument("presentation missing 'core <n>' line");
    return pres;
}

std::string emit_presentation(const EpgPresentation& pres) {
    std::ostringstream out;
    out << "graph " << pres.name << "\n";
    out << "core " << pres.core_count << "\n";
    for (auto [u, v] : pres.core_edges) out << "core_edge " << u << " " << v << "\n";
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        out << "tail " << t << " period " << spec.period << "\n";
        for (auto [i, j] : spec.intra) out << "intra " << t << " " << i << " " << j << "\n";
        for (auto [i, j] : spec.inter) out << "inter " << t << " " << i << " " << j << "\n";
        for (auto [c, i] : spec.attach) out << "attach " << t << " " << c << " " << i << "\n";
        for (const HubRule& r : spec.hubs)
            out << "hub " << t << " " << r.core << " " << r.strand << " " << r.start << " "
                << r.stride << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------
// Vertex set syntax
// ---------------------------------------------------------------------

namespace {

Upis parse_atoms(const std::string& term) {
    Upis u = Upis::none();
    std::string atom;
    std::istringstream in(term);
    while (std::getline(in, atom, ',')) {
        size_t a = atom.find_first_not_of(" \t");
        size_t b = atom.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        atom = atom.substr(a, b - a + 1);
        if (atom == "all") {
            u = Upis::all();
        } else if (atom == "none") {
            // nothing
        } else if (atom.rfind(">=", 0) == 0) {
            u = u | Upis::at_least(std::stoll(atom.substr(2)));
        } else if (auto dots = atom.find(".."); dots != std::string::npos) {
            int64_t lo = std::stoll(atom.substr(0, dots));
            int64_t hi = std::stoll(atom.substr(dots + 2));
            u = u | Upis::range(lo, hi + 1);
        } else if (auto plus = atom.find('+'); plus != std::string::npos) {
            if (atom.back() != 'k') throw std::invalid_argument("bad atom '" + atom + "'");
            int64_t start = std::stoll(atom.substr(0, plus));
            int64_t stride = std::stoll(atom.substr(plus + 1, atom.size() - plus - 2));
            u = u | Upis::arithmetic(start, stride);
        } else {
            u = u | Upis::singleton(std::stoll(atom));
        }
    }
    return u;
}

}  // namespace

Epvs parse_vertex_set(const EpgPresentation& pres, const std::string& text) {
    Epvs set = Epvs::empty_like(pres);
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) {
        size_t colon = item.find(':');
        if (colon == std::string::npos) {
            if (item.find_first_not_of(" \t\n") == std::string::npos) continue;
            throw std::invalid_argument("set item missing ':': '" + item + "'");
        }
        std::string head = item.substr(0, colon);
        std::string term = item.substr(colon + 1);
        std::istringstream hs(head);
        std::string kw;
        hs >> kw;
        if (kw == "cores") {
            std::string atom;
            std::istringstream ts(term);
            while (std::getline(ts, atom, ',')) {
                size_t a = atom.find_first_not_of(" \t");
                if (a == std::string::npos) continue;
                size_t b = atom.find_last_not_of(" \t");
                atom = atom.substr(a, b - a + 1);
                if (atom == "all") {
                    for (int32_t c = 0; c < pres.core_count; ++c) set.set_core(c, true);
                } else if (atom == "none") {
                    // nothing
                } else {
                    int64_t c = std::stoll(atom);
                    if (c < 0 || c >= pres.core_count)
                        throw std::invalid_argument("core index out of range: " + atom);
                    set.set_core(static_cast<int32_t>(c), true);
                }
            }
        } else if (kw == "strand") {
            int64_t t = -1, i = -1;
            hs >> t >> i;
            if (t < 0 || t >= pres.tail_count() || i < 0 || i >= pres.period_of(static_cast<int32_t>(t)))
                throw std::invalid_argument("strand index out of range in '" + head + "'");
            set.set_strand(static_cast<int32_t>(t), static_cast<int32_t>(i),
                           set.strand(static_cast<int32_t>(t), static_cast<int32_t>(i)) |
                               parse_atoms(term));
        } else {
            throw std::invalid_argument("unknown set item '" + kw + "'");
        }
    }
    return set;
}

std::string emit_vertex_set(const Epvs& set) {
    std::ostringstream out;
    bool any = false;
    std::string cores;
    for (int32_t c = 0; c < set.core_count(); ++c)
        if (set.core_member(c)) cores += (cores.empty() ? "" : ",") + std::to_string(c);
    if (!cores.empty()) {
        out << "cores: " << cores;
        any = true;
    }
    for (int32_t t = 0; t < set.tail_count(); ++t) {
        for (int32_t i = 0; i < set.period_of(t); ++i) {
            const Upis& u = set.strand(t, i);
            if (u.empty()) continue;
            std::string atoms;
            auto add = [&atoms](const std::string& a) {
                atoms += (atoms.empty() ? "" : ",") + a;
            };
            for (int64_t k : u.elements_below(u.threshold())) add(std::to_string(k));
            const auto& pat = u.pattern_bits();
            for (int64_t x = 0; x < u.period(); ++x)
                if (pat[static_cast<size_t>(x)]) {
                    if (u.period() == 1)
                        add(">=" + std::to_string(u.threshold()));
                    else
                        add(std::to_string(u.threshold() + x) + "+" +
                            std::to_string(u.period()) + "k");
                }
            if (any) out << "; ";
            out << "strand " << t << " " << i << ": " << atoms;
            any = true;
        }
    }
    return out.str();  // empty string for the empty set
}

VertexId parse_vertex(const std::string& text) {
    if (!text.empty() && text[0] == 'c')
        return VertexId::Core_(static_cast<int32_t>(std::stoll(text.substr(1))));
    size_t d1 = text.find('.');
    size_t d2 = text.find('.', d1 == std::string::npos ? d1 : d1 + 1);
    if (d1 == std::string::npos || d2 == std::string::npos)
        throw std::invalid_argument("bad vertex '" + text + "' (want c<idx> or t.k.i)");
    return VertexId::Tail_(static_cast<int32_t>(std::stoll(text.substr(0, d1))),
                           std::stoll(text.substr(d1 + 1, d2 - d1 - 1)),
                           static_cast<int32_t>(std::stoll(text.substr(d2 + 1))));
}

}  // namespace endscope
