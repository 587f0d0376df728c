#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credeq/economy.hpp"
#include "credeq/ramsey.hpp"
#include "credeq/sensitivity.hpp"

namespace credeq::cli {

struct SweepSpec {
  int agent_id = 0;
  Param param = Param::A;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

struct Scenario {
  std::string model;  // "static" or "ramsey"
  StaticEconomy st;
  DynamicEconomy dyn;
  std::optional<SweepSpec> sweep;
};

// Parses the documented JSON schema. On any problem throws
// scenario_error whose message lists one diagnostic per line with a
// field path like agents[2].gamma.
struct scenario_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& file);
std::string serialize_scenario(const Scenario& sc);

// FNV-1a over the scenario bytes, for the CSV metadata block.
std::string content_hash(const std::string& text);

}  // namespace credeq::cli
