#pragma once

#include <string>

#include "endscope/epvs.hpp"
#include "endscope/presentation.hpp"

namespace endscope {

// Line-based presentation format, '#' comments:
//   graph <name>
//   core <n>
//   core_edge <u> <v>
//   tail <t> period <p>
//   intra <t> <i> <j>
//   inter <t> <i> <j>
//   attach <t> <c> <i>
//   hub <t> <h> <i> <s> <d>
// Tails must be declared before lines that reference them.
EpgPresentation parse_presentation(const std::string& text);
std::string emit_presentation(const EpgPresentation& pres);

// Vertex set syntax, ';'-separated items:
//   cores: 0,2         strand <t> <i>: <atoms>
// atoms: INT | INT..INT | INT+INTk | >=INT | all | none
Epvs parse_vertex_set(const EpgPresentation& pres, const std::string& text);
std::string emit_vertex_set(const Epvs& set);

// Single vertex: "c<idx>" or "<tail>.<copy>.<strand>".
VertexId parse_vertex(const std::string& text);

}  // namespace endscope
