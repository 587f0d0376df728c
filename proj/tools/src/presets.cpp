#include "presets.hpp"

#include <stdexcept>

#include "credeq/linear.hpp"
#include "credeq/ramsey.hpp"
#include "credeq/sensitivity.hpp"
#include "scenario.hpp"

namespace credeq::cli {

namespace {

void add_common_meta(ResultTable& t, const std::string& name) {
  t.meta.emplace_back("preset", name);
  t.meta.emplace_back("solver_version", "1.0.0");
  t.meta.emplace_back("tolerance_market_clearing",
                      format_double(default_tols().market_clearing));
  t.meta.emplace_back("tolerance_root_rel", format_double(default_tols().root_rel));
  t.meta.emplace_back("scenario_hash", content_hash(name));
}

StaticEconomy two_agent_static(double A1) {
  StaticEconomy e;
  // gamma_1 never binds in this economy (agent 1 is the less productive
  // side); any admissible value gives the same equilibrium.
  e.agents = {
      {1, Technology::linear(A1), 0.2, 1.0},
      {2, Technology::linear(1.0), 0.2, 0.7},
  };
  return e;
}

StaticEconomy three_agent_static(double g2, double g3) {
  StaticEconomy e;
  e.agents = {
      {1, Technology::linear(1.0), 0.2, 4.0},
      {2, Technology::linear(1.2), g2, 4.0},
      {3, Technology::linear(1.5), g3, 3.0},
  };
  return e;
}

DynamicEconomy two_agent_dynamic(double A1) {
  DynamicEconomy e;
  // Initial savings s0 = beta*w0 are (200, 100).
  e.agents = {
      {1, 0.99, 0.4, 200.0 / 0.99, {A1}},
      {2, 0.40, 0.4, 100.0 / 0.40, {2.25}},
  };
  return e;
}

DynamicEconomy three_agent_dynamic(double g2) {
  DynamicEconomy e;
  // Initial savings s0 = beta*w0 are (4, 4, 3).
  e.agents = {
      {1, 0.20, 0.2, 4.0 / 0.20, {1.0}},
      {2, 0.20, g2, 4.0 / 0.20, {1.2}},
      {3, 0.95, 0.3, 3.0 / 0.95, {1.5}},
  };
  return e;
}

void append_static_row(ResultTable& t, double value, const StaticEconomy& e) {
  const auto eq = solve_equilibrium_linear(e);
  t.rows.push_back({value, eq.R, eq.Y, eq.regime.describe()});
}

ResultTable fig_a1() {
  ResultTable t;
  add_common_meta(t, "fig-a1");
  t.header = {"A1", "R", "Y", "regime"};
  // Open interval (0.34, 1): 133 interior points of a uniform 135-point
  // partition.
  for (int k = 1; k <= 133; ++k) {
    const double A1 = 0.34 + k * (1.0 - 0.34) / 134.0;
    append_static_row(t, A1, two_agent_static(A1));
  }
  return t;
}

ResultTable fig_gamma(int which) {
  ResultTable t;
  add_common_meta(t, which == 2 ? "fig-gamma2" : "fig-gamma3");
  t.header = {which == 2 ? "gamma2" : "gamma3", "R", "Y", "regime"};
  for (int k = 0; k <= 60; ++k) {
    const double g = 0.15 + k * 0.005;
    const auto e = which == 2 ? three_agent_static(g, 0.3)
                              : three_agent_static(0.3, g);
    append_static_row(t, g, e);
  }
  return t;
}

ResultTable ramsey_a1_shock() {
  ResultTable t;
  add_common_meta(t, "ramsey-a1-shock");
  const int T = 50;
  const double shocks[3] = {1.5, 1.53, 1.95};
  std::vector<EquilibriumPath> paths;
  for (double A1 : shocks)
    paths.push_back(auto_construct(two_agent_dynamic(A1), T).path);
  t.header = {"t", "Y_A1_1.5", "Y_A1_1.53", "Y_A1_1.95"};
  for (int date = 1; date <= T; ++date)
    t.rows.push_back({static_cast<double>(date), paths[0].Y[date],
                      paths[1].Y[date], paths[2].Y[date]});
  return t;
}

ResultTable ramsey_gamma2_compare() {
  ResultTable t;
  add_common_meta(t, "ramsey-gamma2-compare");
  const int T = 50;
  const auto p30 = auto_construct(three_agent_dynamic(0.30), T).path;
  const auto p35 = auto_construct(three_agent_dynamic(0.35), T).path;
  t.header = {"t", "Y_gamma2_0.30", "Y_gamma2_0.35"};
  for (int date = 1; date <= T; ++date)
    t.rows.push_back({static_cast<double>(date), p30.Y[date], p35.Y[date]});
  return t;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig-a1", "fig-gamma2", "fig-gamma3", "ramsey-a1-shock",
          "ramsey-gamma2-compare"};
}

ResultTable run_preset(const std::string& name) {
  if (name == "fig-a1") return fig_a1();
  if (name == "fig-gamma2") return fig_gamma(2);
  if (name == "fig-gamma3") return fig_gamma(3);
  if (name == "ramsey-a1-shock") return ramsey_a1_shock();
  if (name == "ramsey-gamma2-compare") return ramsey_gamma2_compare();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace credeq::cli
