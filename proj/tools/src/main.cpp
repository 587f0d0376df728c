#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "credeq/linear.hpp"
#include "credeq/ramsey.hpp"
#include "credeq/sensitivity.hpp"
#include "csv.hpp"
#include "path_io.hpp"
#include "presets.hpp"
#include "scenario.hpp"

namespace {

using namespace credeq;
using namespace credeq::cli;

ResultTable meta_table(const std::string& scenario_text) {
  ResultTable t;
  t.meta.emplace_back("solver_version", "1.0.0");
  t.meta.emplace_back("tolerance_market_clearing",
                      format_double(default_tols().market_clearing));
  t.meta.emplace_back("tolerance_root_rel",
                      format_double(default_tols().root_rel));
  t.meta.emplace_back("scenario_hash", content_hash(scenario_text));
  return t;
}

std::string read_file(const std::string& file) {
  std::FILE* f = std::fopen(file.c_str(), "rb");
  if (!f) throw scenario_error(file + ": cannot open");
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
  std::fclose(f);
  return text;
}

int run_static_solve(const std::string& scenario_file, const std::string& out) {
  const std::string text = read_file(scenario_file);
  const Scenario sc = parse_scenario(text);
  if (sc.model != "static")
    throw scenario_error("model: expected \"static\" for this subcommand");
  const auto eq = solve_equilibrium(sc.st);
  std::printf("regime: %s\n", eq.regime.describe().c_str());
  std::printf("R = %s\n", format_double(eq.R).c_str());
  std::printf("Y = %s\n", format_double(eq.Y).c_str());
  for (std::size_t i = 0; i < sc.st.agents.size(); ++i)
    std::printf("agent %d: k = %s, b = %s%s\n", sc.st.agents[i].id,
                format_double(eq.allocations[i].k).c_str(),
                format_double(eq.allocations[i].b).c_str(),
                eq.allocations[i].binding ? " (binding)" : "");
  if (!out.empty()) {
    ResultTable t = meta_table(text);
    t.header = {"R", "Y", "regime"};
    std::vector<Cell> row{eq.R, eq.Y, eq.regime.describe()};
    for (std::size_t i = 0; i < sc.st.agents.size(); ++i) {
      const std::string id = std::to_string(sc.st.agents[i].id);
      t.header.push_back("k_" + id);
      t.header.push_back("b_" + id);
      row.emplace_back(eq.allocations[i].k);
      row.emplace_back(eq.allocations[i].b);
    }
    t.rows.push_back(std::move(row));
    write_csv(t, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int run_static_sweep(const std::string& scenario_file, const std::string& out,
                     int agent_id, const std::string& param_name, double from,
                     double to, int steps) {
  const std::string text = read_file(scenario_file);
  const Scenario sc = parse_scenario(text);
  if (sc.model != "static")
    throw scenario_error("model: expected \"static\" for this subcommand");

  SweepSpec spec;
  if (sc.sweep) spec = *sc.sweep;
  if (agent_id >= 0) spec.agent_id = agent_id;
  if (!param_name.empty()) {
    if (param_name == "A")
      spec.param = Param::A;
    else if (param_name == "gamma")
      spec.param = Param::Gamma;
    else
      throw scenario_error("--param: expected \"A\" or \"gamma\"");
  }
  if (steps > 0) {
    spec.from = from;
    spec.to = to;
    spec.steps = steps;
  }
  if (spec.steps < 2)
    throw scenario_error(
        "sweep: no grid given (flags --agent/--param/--from/--to/--steps or a "
        "\"sweep\" block in the scenario)");
  int idx = -1;
  for (std::size_t i = 0; i < sc.st.agents.size(); ++i)
    if (sc.st.agents[i].id == spec.agent_id) idx = static_cast<int>(i);
  if (idx < 0) throw scenario_error("sweep.agent: no agent with this id");

  const auto table =
      sweep(sc.st, idx, spec.param, spec.from, spec.to, spec.steps);
  ResultTable t = meta_table(text);
  const std::string col =
      (spec.param == Param::A ? "A" : "gamma") + std::to_string(spec.agent_id);
  t.header = {col, "R", "Y", "regime"};
  for (const auto& row : table.rows) {
    if (row.ok)
      t.rows.push_back({row.value, row.R, row.Y, row.regime.describe()});
    else
      t.rows.push_back({row.value, std::nan(""), std::nan(""),
                        "error: " + row.error});
  }
  write_csv(t, out);
  std::printf("wrote %s (%zu rows)\n", out.c_str(), t.rows.size());
  return 0;
}

int run_ramsey_simulate(const std::string& scenario_file, const std::string& out,
                        int horizon) {
  const std::string text = read_file(scenario_file);
  Scenario sc = parse_scenario(text);
  if (sc.model != "ramsey")
    throw scenario_error("model: expected \"ramsey\" for this subcommand");
  const int T = horizon > 0 ? horizon : sc.dyn.T;
  const auto result = auto_construct(sc.dyn, T);
  std::printf("hypothesis: %s\n", result.path.hypothesis.c_str());
  for (const auto& r : result.rejected)
    std::printf("rejected: %s\n", r.c_str());
  const auto rep = verify_path(sc.dyn, result.path);
  std::printf("verified: %s (max budget %.3e, market %.3e, tvc %.3e)\n",
              rep.pass ? "yes" : "no", rep.max_budget, rep.max_market,
              rep.tvc_proxy);
  if (!out.empty()) {
    ResultTable t = path_to_table(sc.dyn, result.path);
    auto meta = meta_table(text);
    t.meta.insert(t.meta.end(), meta.meta.begin(), meta.meta.end());
    write_csv(t, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int run_ramsey_verify(const std::string& path_file,
                      const std::string& scenario_file, double tol,
                      double tvc_tol) {
  const Scenario sc = parse_scenario(read_file(scenario_file));
  if (sc.model != "ramsey")
    throw scenario_error("model: expected \"ramsey\" for this subcommand");
  const auto path = load_path(sc.dyn, path_file);
  const auto rep = verify_path(
      sc.dyn, path, tol > 0 ? tol : default_tols().market_clearing,
      tvc_tol > 0 ? tvc_tol : default_tols().tvc);
  std::printf("budget residual      %.3e\n", rep.max_budget);
  std::printf("market clearing      %.3e\n", rep.max_market);
  std::printf("constraint violation %.3e\n", rep.max_constraint);
  std::printf("bond FOC (mu < 0)    %.3e\n", rep.max_mu_neg);
  std::printf("capital FOC (eta<0)  %.3e\n", rep.max_eta_neg);
  std::printf("eta complementarity  %.3e\n", rep.max_eta_comp);
  std::printf("mu complementarity   %.3e\n", rep.max_mu_comp);
  std::printf("tvc proxy            %.3e (raw %.3e)\n", rep.tvc_proxy,
              rep.tvc_raw);
  if (rep.pass) {
    std::printf("verdict: pass\n");
    return 0;
  }
  std::printf("verdict: FAIL at t=%d (%s)\n", rep.first_fail_t,
              rep.first_fail_what.c_str());
  return 3;
}

int run_reproduce(const std::string& preset, const std::string& out) {
  const auto table = run_preset(preset);
  const std::string file = out.empty() ? preset + ".csv" : out;
  write_csv(table, file);
  std::printf("wrote %s (%zu rows)\n", file.c_str(), table.rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Computes, classifies, and differentiates general equilibria of "
      "economies with heterogeneous producers facing earnings-based credit "
      "constraints"};
  app.require_subcommand(1);

  std::string scenario_file, path_file, out, preset, param_name;
  int horizon = -1, agent_id = -1, steps = 0;
  double from = 0, to = 0, tol = -1, tvc_tol = -1;
  unsigned seed = 0;
  app.add_option("--seed", seed,
                 "RNG seed (only used by randomized test utilities)");

  auto* st = app.add_subcommand("static", "Two-period economies");
  st->require_subcommand(1);
  auto* solve = st->add_subcommand("solve", "Solve one equilibrium");
  solve->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  solve->add_option("--out", out, "Write a one-row CSV");
  auto* sw = st->add_subcommand("sweep", "Sweep one parameter");
  sw->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  sw->add_option("--out", out, "Output CSV file")->required();
  sw->add_option("--agent", agent_id, "Agent id to perturb");
  sw->add_option("--param", param_name, "A or gamma");
  sw->add_option("--from", from, "Grid start");
  sw->add_option("--to", to, "Grid end");
  sw->add_option("--steps", steps, "Grid size (inclusive endpoints)");

  auto* rs = app.add_subcommand("ramsey", "Infinite-horizon economies");
  rs->require_subcommand(1);
  auto* sim = rs->add_subcommand("simulate", "Construct and verify a path");
  sim->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  sim->add_option("--out", out, "Write the path CSV");
  sim->add_option("--horizon", horizon, "Truncation horizon (overrides scenario)");
  auto* ver = rs->add_subcommand("verify", "Verify a path CSV against a scenario");
  ver->add_option("path", path_file, "Path CSV file")->required();
  ver->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  ver->add_option("--tol", tol, "Residual tolerance");
  ver->add_option("--tvc-tol", tvc_tol, "Transversality proxy tolerance");

  auto* rep = app.add_subcommand("reproduce", "Run a named experiment preset");
  rep->add_option("preset", preset, "One of: fig-a1, fig-gamma2, fig-gamma3, "
                                    "ramsey-a1-shock, ramsey-gamma2-compare")
      ->required();
  rep->add_option("--out", out, "Output CSV file (default <preset>.csv)");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_static_solve(scenario_file, out);
    if (sw->parsed())
      return run_static_sweep(scenario_file, out, agent_id, param_name, from,
                              to, steps);
    if (sim->parsed()) return run_ramsey_simulate(scenario_file, out, horizon);
    if (ver->parsed())
      return run_ramsey_verify(path_file, scenario_file, tol, tvc_tol);
    if (rep->parsed()) return run_reproduce(preset, out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const credeq::cli::scenario_error& e) {
    std::fprintf(stderr, "scenario error:\n%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const credeq::numerical_error& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
