#pragma once

#include <string>
#include <vector>

#include "csv.hpp"

namespace credeq::cli {

// Hard-coded experiment presets. Names: fig-a1, fig-gamma2, fig-gamma3,
// ramsey-a1-shock, ramsey-gamma2-compare.
std::vector<std::string> preset_names();
ResultTable run_preset(const std::string& name);

}  // namespace credeq::cli
