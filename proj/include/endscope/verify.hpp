#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "endscope/ends.hpp"
#include "endscope/epvs.hpp"
#include "endscope/presentation.hpp"
#include "endscope/spanning_tree.hpp"
#include "endscope/treedecomp.hpp"

namespace endscope {

// Machine-readable check outcome; witnesses name concrete offending
// vertices/edges/nodes.
struct Report {
    bool pass = true;
    std::vector<std::string> witnesses;

    void fail(std::string witness) {
        pass = false;
        witnesses.push_back(std::move(witness));
    }
    std::string summary() const;
};

// (T1)-(T3) plus finite separators and connected parts, checked on
// unfold(horizon) against the prefix's materialized nodes.
Report check_td_axioms(const EpgPresentation& pres, const TreeDecompositionPrefix& td,
                       int64_t horizon);

// Separators along any root-to-leaf path are pairwise disjoint.
Report check_upwards_disjoint(const EpgPresentation& pres, const TreeDecompositionPrefix& td,
                              int64_t horizon);

// Display table: bijection between topological ends and descending
// component chains; dominated ends orient to a node of the prefix.
Report check_display(const EpgPresentation& pres, const TreeDecompositionPrefix& td);

// Lemma-style nested chain: X_m disjoint finite, C_m a component of
// G-X_m with C_m containing C_{m+1} and X_{m+1}; exactly one end lives
// in the whole chain and it is undominated.
Report check_nested_chain(const EpgPresentation& pres,
                          const std::vector<std::pair<Epvs, Epvs>>& chain);

// Spanning-tree prefix: spans H_n in the horizon, acyclic and connected,
// single attachment edges, and per topological end exactly one rooted
// deep ray equivalent to it (its certificate).
Report check_end_faithful(const EpgPresentation& pres, const SpanningTreePrefix& st);

}  // namespace endscope
