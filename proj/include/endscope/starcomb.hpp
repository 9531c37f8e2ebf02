#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/epvs.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Periodic family of pairwise disjoint paths: member m is base shifted
// by m*stride copies. The attachment end of each path is its last vertex.
struct PathFamily {
    std::vector<VertexId> base;
    int64_t stride = 1;

    std::vector<VertexId> member(int64_t m) const;
};

// Checkable witness of the star-comb dichotomy. Lazy: paths are rules,
// check() materializes the first n of them.
struct Certificate {
    enum class Kind { Star, Comb };
    Kind kind = Kind::Star;
    VertexId center;     // star only
    PeriodicRay spine;   // comb only
    Epvs attachment;     // leaves / teeth (infinite, inside the query set)
    std::vector<PathFamily> paths;
};

struct CheckResult {
    bool ok = true;
    std::string message;
};

// Materializes the first n leaves/teeth with their paths and verifies
// adjacency, disjointness, attachment membership and (for combs) the
// first-vertex-on-spine rule against the host set U.
CheckResult check_certificate(const EpgPresentation& pres, const Certificate& cert, int64_t n,
                              const Epvs& u);

// Star-comb dichotomy for an infinite U in a connected graph; hubs are
// tried before combs.
Certificate star_or_comb(const EpgPresentation& pres, const Epvs& u);

// External variant: certificate attached to W whose interior lies in the
// component C of G-W; requires N(C) infinite.
Certificate external_star_or_comb(const EpgPresentation& pres, const Epvs& w, const Epvs& c);

// Rooted subtree of G containing U cofinally, with a finitely presented
// eventually periodic parent map.
struct TreePresentation {
    VertexId root;
    Epvs vertices;
    std::unordered_map<VertexId, VertexId, VertexIdHash> explicit_parent;
    int64_t explicit_depth = 0;  // tail copies below this use explicit_parent
    struct Rule {
        enum class Kind { InterPrev, Intra, InterNext, Core, None } kind = Kind::None;
        int32_t target = -1;  // strand (tail rules) or core index
    };
    std::vector<std::vector<std::vector<Rule>>> rules;  // [tail][strand][copy mod period]
    std::vector<int64_t> rule_period;

    // Parent in the ambient graph's spanning structure; nullopt at the root.
    std::optional<VertexId> parent_of(const VertexId& v) const;
};

TreePresentation cofinal_tree(const EpgPresentation& pres, const Epvs& u);

}  // namespace endscope
