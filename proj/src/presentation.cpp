#include "endscope/presentation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "endscope/engine.hpp"

namespace endscope {

std::vector<int32_t> EpgPresentation::hub_cores() const {
    std::set<int32_t> hs;
    for (const auto& t : tails)
        for (const auto& r : t.hubs) hs.insert(r.core);
    return std::vector<int32_t>(hs.begin(), hs.end());
}

bool EpgPresentation::is_hub(int32_t core) const {
    for (const auto& t : tails)
        for (const auto& r : t.hubs)
            if (r.core == core) return true;
    return false;
}

ValidationReport validate(const EpgPresentation& pres) {
    ValidationReport rep;
    auto bad = [&rep](std::string msg) { rep.issues.push_back({std::move(msg)}); };

    if (pres.core_count < 0) bad("core count must be nonnegative");

    std::set<std::pair<int32_t, int32_t>> seen_core_edges;
    for (auto [u, v] : pres.core_edges) {
        if (u < 0 || u >= pres.core_count || v < 0 || v >= pres.core_count) {
            bad("core_edge index out of range: " + std::to_string(u) + " " + std::to_string(v));
            continue;
        }
        if (u == v) bad("core_edge self-loop at " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen_core_edges.insert({key.first, key.second}).second)
            bad("duplicate core_edge " + std::to_string(u) + " " + std::to_string(v));
    }

    for (int32_t t = 0; t < pres.tail_count(); ++t) {
        const TailSpec& spec = pres.tails[static_cast<size_t>(t)];
        std::string where = "tail " + std::to_string(t);
        if (spec.period < 1) {
            bad(where + ": period must be >= 1");
            continue;
        }
        auto strand_ok = [&spec](int32_t i) { return i >= 0 && i < spec.period; };

        std::set<std::pair<int32_t, int32_t>> intra_seen;
        for (auto [i, j] : spec.intra) {
            if (!strand_ok(i) || !strand_ok(j)) {
                bad(where + ": intra strand out of range");
                continue;
            }
            if (i == j) bad(where + ": intra self-loop on strand " + std::to_string(i));
            auto key = std::minmax(i, j);
            if (!intra_seen.insert({key.first, key.second}).second)
                bad(where + ": duplicate intra edge");
        }
        std::set<std::pair<int32_t, int32_t>> inter_seen;
        for (auto [i, j] : spec.inter) {
            if (!strand_ok(i) || !strand_ok(j)) {
                bad(where + ": inter strand out of range");
                continue;
            }
            if (!inter_seen.insert({i, j}).second) bad(where + ": duplicate inter edge");
        }
        std::set<std::pair<int32_t, int32_t>> attach_seen;
        for (auto [c, i] : spec.attach) {
            if (c < 0 || c >= pres.core_count || !strand_ok(i)) {
                bad(where + ": attach index out of range");
                continue;
            }
            if (!attach_seen.insert({c, i}).second) bad(where + ": duplicate attach edge");
        }
        for (const HubRule& r : spec.hubs) {
            if (r.core < 0 || r.core >= pres.core_count || !strand_ok(r.strand)) {
                bad(where + ": hub rule index out of range");
                continue;
            }
            if (r.start < 0) bad(where + ": hub start must be >= 0");
            if (r.stride < 1) bad(where + ": hub stride must be >= 1");
            // a hub edge duplicating an attach edge at copy 0
            if (r.start == 0)
                for (auto [c, i] : spec.attach)
                    if (c == r.core && i == r.strand)
                        bad(where + ": hub rule duplicates attach edge at copy 0");
        }
        // duplicate hub rules hitting the same strand with overlapping progressions
        for (size_t x = 0; x < spec.hubs.size(); ++x)
            for (size_t y = x + 1; y < spec.hubs.size(); ++y) {
                const HubRule &a = spec.hubs[x], &b = spec.hubs[y];
                if (a.core != b.core || a.strand != b.strand) continue;
                if (a.start >= 0 && a.stride >= 1 && b.start >= 0 && b.stride >= 1 &&
                    Upis::arithmetic(a.start, a.stride).intersects(
                        Upis::arithmetic(b.start, b.stride)))
                    bad(where + ": overlapping hub rules duplicate an edge");
            }
    }

    rep.structurally_valid = rep.issues.empty();
    if (rep.structurally_valid) rep.connected = is_connected(pres);
    return rep;
}

void require_valid(const EpgPresentation& pres) {
    ValidationReport rep = validate(pres);
    if (!rep.structurally_valid) {
        std::string msg = "invalid presentation";
        if (!rep.issues.empty()) msg += ": " + rep.issues.front().message;
        throw std::invalid_argument(msg);
    }
}

}  // namespace endscope
