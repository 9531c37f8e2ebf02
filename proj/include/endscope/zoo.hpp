#pragma once

#include <string>
#include <vector>

#include "endscope/presentation.hpp"

namespace endscope {

// Built-in example graphs: ray, double_ray, ladder, comb, fan, infstar,
// twostrand, hubbed_ladder.
std::vector<std::string> zoo_names();
EpgPresentation zoo_graph(const std::string& name);
std::vector<EpgPresentation> zoo_all();

}  // namespace endscope
