#pragma once

#include <json.hpp>
#include <string>

#include "endscope/ends.hpp"
#include "endscope/envelope.hpp"
#include "endscope/exhaustion.hpp"
#include "endscope/presentation.hpp"
#include "endscope/spanning_tree.hpp"
#include "endscope/starcomb.hpp"
#include "endscope/treedecomp.hpp"
#include "endscope/unfold.hpp"

namespace endscope {

using Json = nlohmann::ordered_json;

// All emitters carry {"schema": 1}. Decomposition and spanning-tree
// documents embed the presentation text so files are self-contained.

std::string emit_index_set(const Upis& u);
Upis parse_index_set(const std::string& text);

Json ends_to_json(const EpgPresentation& pres, const std::vector<End>& ends);
Json certificate_to_json(const EpgPresentation& pres, const Certificate& cert, int64_t n_paths);
Json envelope_to_json(const EpgPresentation& pres, const Epvs& u, const Epvs& u_star);
Json exhaustion_to_json(const EpgPresentation& pres, const Exhaustion& exh);

Json td_to_json(const EpgPresentation& pres, const TreeDecompositionPrefix& td);
TreeDecompositionPrefix td_from_json(const Json& j, EpgPresentation& pres_out);

Json st_to_json(const EpgPresentation& pres, const SpanningTreePrefix& st);
SpanningTreePrefix st_from_json(const Json& j, EpgPresentation& pres_out);

std::string unfold_to_dot(const EpgPresentation& pres, const FiniteGraph& g);
Json unfold_to_json(const EpgPresentation& pres, const FiniteGraph& g);

}  // namespace endscope
