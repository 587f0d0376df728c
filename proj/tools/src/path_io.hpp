#pragma once

#include <string>

#include "credeq/ramsey.hpp"
#include "csv.hpp"

namespace credeq::cli {

// Equilibrium paths round-trip through CSV: one row per date t = 0..T+1 with
// columns t,R,Y then k_<id>,b_<id>,c_<id>,s_<id> per agent. R is valid from
// t = 1 and the t = T+1 row carries only the continuation rate; Y is valid
// for 1 <= t <= T. Unused cells are written as 0.
ResultTable path_to_table(const DynamicEconomy& econ, const EquilibriumPath& path);
EquilibriumPath table_to_path(const DynamicEconomy& econ, const std::string& csv_text);
EquilibriumPath load_path(const DynamicEconomy& econ, const std::string& file);

}  // namespace credeq::cli
