#include "endscope/epvs.hpp"

#include <algorithm>
#include <stdexcept>

namespace endscope {

Epvs Epvs::empty_like(const EpgPresentation& pres) {
    Epvs e;
    e.cores_.assign(static_cast<size_t>(pres.core_count), 0);
    e.strands_.resize(pres.tails.size());
    for (size_t t = 0; t < pres.tails.size(); ++t)
        e.strands_[t].assign(static_cast<size_t>(pres.tails[t].period), Upis::none());
    return e;
}

Epvs Epvs::all_of(const EpgPresentation& pres) {
    Epvs e = empty_like(pres);
    std::fill(e.cores_.begin(), e.cores_.end(), 1);
    for (auto& tail : e.strands_)
        for (auto& s : tail) s = Upis::all();
    return e;
}

Epvs Epvs::all_cores(const EpgPresentation& pres) {
    Epvs e = empty_like(pres);
    std::fill(e.cores_.begin(), e.cores_.end(), 1);
    return e;
}

Epvs Epvs::of_vertices(const EpgPresentation& pres, const std::vector<VertexId>& vs) {
    Epvs e = empty_like(pres);
    for (const auto& v : vs) {
        if (!pres.valid_vertex(v)) throw std::invalid_argument("Epvs: invalid vertex id");
        e.insert(v);
    }
    return e;
}

bool Epvs::contains(const VertexId& v) const {
    if (v.is_core()) {
        if (v.core < 0 || v.core >= core_count()) return false;
        return cores_[static_cast<size_t>(v.core)] != 0;
    }
    if (v.tail < 0 || v.tail >= tail_count()) return false;
    if (v.strand < 0 || v.strand >= period_of(v.tail)) return false;
    return strand(v.tail, v.strand).contains(v.copy);
}

void Epvs::insert(const VertexId& v) {
    if (v.is_core()) {
        cores_[static_cast<size_t>(v.core)] = 1;
    } else {
        auto& s = strands_[static_cast<size_t>(v.tail)][static_cast<size_t>(v.strand)];
        s = s | Upis::singleton(v.copy);
    }
}

void Epvs::erase(const VertexId& v) {
    if (v.is_core()) {
        cores_[static_cast<size_t>(v.core)] = 0;
    } else {
        auto& s = strands_[static_cast<size_t>(v.tail)][static_cast<size_t>(v.strand)];
        s = s - Upis::singleton(v.copy);
    }
}

bool Epvs::same_shape(const Epvs& o) const {
    if (cores_.size() != o.cores_.size() || strands_.size() != o.strands_.size()) return false;
    for (size_t t = 0; t < strands_.size(); ++t)
        if (strands_[t].size() != o.strands_[t].size()) return false;
    return true;
}

void Epvs::check_shape(const Epvs& o) const {
    if (!same_shape(o)) throw std::invalid_argument("Epvs: mismatched presentations");
}

Epvs Epvs::unite(const Epvs& o) const {
    check_shape(o);
    Epvs r = *this;
    for (size_t c = 0; c < cores_.size(); ++c) r.cores_[c] = (cores_[c] || o.cores_[c]) ? 1 : 0;
    for (size_t t = 0; t < strands_.size(); ++t)
        for (size_t i = 0; i < strands_[t].size(); ++i)
            r.strands_[t][i] = strands_[t][i] | o.strands_[t][i];
    return r;
}

Epvs Epvs::intersect(const Epvs& o) const {
    check_shape(o);
    Epvs r = *this;
    for (size_t c = 0; c < cores_.size(); ++c) r.cores_[c] = (cores_[c] && o.cores_[c]) ? 1 : 0;
    for (size_t t = 0; t < strands_.size(); ++t)
        for (size_t i = 0; i < strands_[t].size(); ++i)
            r.strands_[t][i] = strands_[t][i] & o.strands_[t][i];
    return r;
}

Epvs Epvs::difference(const Epvs& o) const {
    check_shape(o);
    Epvs r = *this;
    for (size_t c = 0; c < cores_.size(); ++c) r.cores_[c] = (cores_[c] && !o.cores_[c]) ? 1 : 0;
    for (size_t t = 0; t < strands_.size(); ++t)
        for (size_t i = 0; i < strands_[t].size(); ++i)
            r.strands_[t][i] = strands_[t][i] - o.strands_[t][i];
    return r;
}

Epvs Epvs::complement() const {
    Epvs r = *this;
    for (size_t c = 0; c < cores_.size(); ++c) r.cores_[c] = cores_[c] ? 0 : 1;
    for (size_t t = 0; t < strands_.size(); ++t)
        for (size_t i = 0; i < strands_[t].size(); ++i)
            r.strands_[t][i] = strands_[t][i].complement();
    return r;
}

bool Epvs::is_empty() const {
    if (std::any_of(cores_.begin(), cores_.end(), [](char b) { return b != 0; })) return false;
    for (const auto& tail : strands_)
        for (const auto& s : tail)
            if (!s.empty()) return false;
    return true;
}

bool Epvs::is_finite() const {
    for (const auto& tail : strands_)
        for (const auto& s : tail)
            if (!s.is_finite()) return false;
    return true;
}

std::optional<int64_t> Epvs::size_if_finite() const {
    if (!is_finite()) return std::nullopt;
    int64_t n = 0;
    for (char b : cores_) n += b ? 1 : 0;
    for (const auto& tail : strands_)
        for (const auto& s : tail) n += *s.size_if_finite();
    return n;
}

std::optional<VertexId> Epvs::min_vertex() const {
    for (size_t c = 0; c < cores_.size(); ++c)
        if (cores_[c]) return VertexId::Core_(static_cast<int32_t>(c));
    std::optional<VertexId> best;
    for (size_t t = 0; t < strands_.size(); ++t) {
        for (size_t i = 0; i < strands_[t].size(); ++i) {
            auto k = strands_[t][i].min();
            if (!k) continue;
            VertexId v = VertexId::Tail_(static_cast<int32_t>(t), *k, static_cast<int32_t>(i));
            if (!best || v < *best) best = v;
        }
    }
    return best;
}

std::vector<VertexId> Epvs::members_up_to(int64_t depth) const {
    std::vector<VertexId> out;
    for (size_t c = 0; c < cores_.size(); ++c)
        if (cores_[c]) out.push_back(VertexId::Core_(static_cast<int32_t>(c)));
    for (size_t t = 0; t < strands_.size(); ++t)
        for (int64_t k = 0; k <= depth; ++k)
            for (size_t i = 0; i < strands_[t].size(); ++i)
                if (strands_[t][i].contains(k))
                    out.push_back(
                        VertexId::Tail_(static_cast<int32_t>(t), k, static_cast<int32_t>(i)));
    return out;
}

std::vector<VertexId> Epvs::members_finite() const {
    if (!is_finite()) throw std::invalid_argument("Epvs: infinite set has no finite member list");
    int64_t depth = 0;
    for (const auto& tail : strands_)
        for (const auto& s : tail)
            if (auto m = s.max_if_finite()) depth = std::max(depth, *m);
    return members_up_to(depth);
}

int64_t Epvs::max_threshold() const {
    int64_t t = 0;
    for (const auto& tail : strands_)
        for (const auto& s : tail) t = std::max(t, s.threshold());
    return t;
}

int64_t Epvs::period_lcm() const {
    int64_t p = 1;
    for (const auto& tail : strands_)
        for (const auto& s : tail) p = lcm64(p, s.period());
    return p;
}

std::string Epvs::to_string() const {
    std::string s = "cores{";
    bool first = true;
    for (size_t c = 0; c < cores_.size(); ++c) {
        if (!cores_[c]) continue;
        if (!first) s += ",";
        s += std::to_string(c);
        first = false;
    }
    s += "}";
    for (size_t t = 0; t < strands_.size(); ++t)
        for (size_t i = 0; i < strands_[t].size(); ++i) {
            if (strands_[t][i].empty()) continue;
            s += " s" + std::to_string(t) + "." + std::to_string(i) + "=" +
                 strands_[t][i].to_string();
        }
    return s;
}

// =====================================================================
// Neighborhoods
// =====================================================================

Epvs neighbors(const EpgPresentation& pres, const Epvs& a) {
    Epvs n = Epvs::empty_like(pres);
    // core-core edges
    for (auto [u, v] : pres.core_edges) {
        if (a.core_member(u)) n.set_core(v, true);
        if (a.core_member(v)) n.set_core(u, true);
    }
    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        // attach: Core(c) -- Tail(t,0,i)
        for (auto [c, i] : spec.attach) {
            if (a.core_member(c))
                n.set_strand(t, i, n.strand(t, i) | Upis::singleton(0));
            if (a.strand(t, i).contains(0)) n.set_core(c, true);
        }
        // intra: Tail(k,i) -- Tail(k,j)
        for (auto [i, j] : spec.intra) {
            n.set_strand(t, j, n.strand(t, j) | a.strand(t, i));
            n.set_strand(t, i, n.strand(t, i) | a.strand(t, j));
        }
        // inter: Tail(k,i) -- Tail(k+1,j)
        for (auto [i, j] : spec.inter) {
            n.set_strand(t, j, n.strand(t, j) | a.strand(t, i).shift_up(1));
            n.set_strand(t, i, n.strand(t, i) | a.strand(t, j).shift_down(1));
        }
        // hub rules: Core(h) -- Tail(s + m*d, i)
        for (const HubRule& r : spec.hubs) {
            Upis targets = Upis::arithmetic(r.start, r.stride);
            if (a.core_member(r.core))
                n.set_strand(t, r.strand, n.strand(t, r.strand) | targets);
            if (a.strand(t, r.strand).intersects(targets)) n.set_core(r.core, true);
        }
    }
    return n;
}

Epvs neighbors(const EpgPresentation& pres, const VertexId& v) {
    if (!pres.valid_vertex(v)) throw std::invalid_argument("neighbors: invalid vertex id");
    return neighbors(pres, Epvs::of_vertices(pres, {v}));
}

}  // namespace endscope
