#include "credeq/concave.hpp"

#include <algorithm>
#include <cmath>

namespace credeq {

namespace {

void require_concave(const Technology& t, const char* where) {
  if (t.kind == TechKind::Linear)
    throw std::invalid_argument(std::string(where) +
                                ": linear technology has no interior optimum");
}

}  // namespace

double kn(const Technology& tech, double R) {
  require_concave(tech, "kn");
  if (!(R > 0)) throw std::invalid_argument("kn: R must be positive");
  if (tech.kind == TechKind::CobbDouglas)
    return std::pow(tech.alpha * tech.A / R, 1.0 / (1.0 - tech.alpha));
  // Custom: f' is strictly decreasing with Inada limits; bracket and bisect.
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (tech.mpk(lo) <= R) {
    lo *= 0.5;
    if (++guard > 2000) throw numerical_error("kn: bracket failure (low)");
  }
  guard = 0;
  while (tech.mpk(hi) >= R) {
    hi *= 2.0;
    if (++guard > 2000) throw numerical_error("kn: bracket failure (high)");
  }
  return bisect([&](double k) { return tech.mpk(k) - R; }, lo, hi);
}

double kb(const Technology& tech, double gamma, double S, double R) {
  require_concave(tech, "kb");
  if (!(R > 0) || !(S > 0))
    throw std::invalid_argument("kb: R and S must be positive");
  // Root of g(k) = R*(k-S) - gamma*A*f(k) on (S, inf); g(S) < 0 and g
  // eventually turns positive when gamma is below the share limit.
  auto g = [&](double k) { return R * (k - S) - gamma * tech.output(k); };
  double hi = 2.0 * S;
  int guard = 0;
  while (g(hi) <= 0) {
    hi *= 2.0;
    if (++guard > 400)
      throw numerical_error("kb: no solution (gamma at or above the share limit)");
  }
  return bisect(g, S, hi);
}

double binding_share(const Technology& tech, double S, double R) {
  const double k = kn(tech, R);
  return R * (k - S) / tech.output(k);
}

BindingThreshold threshold_Ri(const StaticAgent& agent) {
  require_concave(agent.tech, "threshold_Ri");
  BindingThreshold th;
  th.id = agent.id;
  const double limit = agent.tech.share_limit();
  if (agent.gamma >= limit - 1e-12) {
    th.never_binding = true;  // H(R) < limit <= gamma for every R
    return th;
  }
  // H is strictly decreasing with H(A*f'(S)) = 0 and H -> share limit as
  // R -> 0, so the root is bracketed below the slack-at-own-wealth rate.
  const double hi = agent.tech.mpk(agent.S);
  double lo = hi;
  int guard = 0;
  while (binding_share(agent.tech, agent.S, lo) <= agent.gamma) {
    lo *= 0.5;
    if (++guard > 2000) throw numerical_error("threshold_Ri: bracket failure");
  }
  th.R_i = bisect(
      [&](double R) { return binding_share(agent.tech, agent.S, R) - agent.gamma; },
      lo, hi);
  return th;
}

AgentAllocation individual_choice_concave(const StaticAgent& agent, double R) {
  AgentAllocation a;
  if (binding_share(agent.tech, agent.S, R) >= agent.gamma) {
    a.k = kb(agent.tech, agent.gamma, agent.S, R);
    a.binding = true;
  } else {
    a.k = kn(agent.tech, R);
    a.binding = false;
  }
  a.b = a.k - agent.S;
  a.profit = agent.tech.output(a.k) - R * a.b;
  return a;
}

namespace {

double total_demand(const StaticEconomy& econ, double R) {
  double d = 0;
  for (const auto& a : econ.agents) d += individual_choice_concave(a, R).k;
  return d;
}

// Bracket the market-clearing rate of a strictly decreasing demand curve.
template <typename Fn>
double clearing_rate(const StaticEconomy& econ, Fn demand) {
  const double S = econ.total_wealth();
  double R0 = 0;
  for (const auto& a : econ.agents)
    R0 = std::max(R0, a.tech.mpk(S / static_cast<double>(econ.agents.size())));
  double lo = R0, hi = R0;
  int guard = 0;
  while (demand(lo) <= S) {
    lo *= 0.5;
    if (++guard > 2000) throw numerical_error("clearing_rate: bracket failure (low)");
  }
  guard = 0;
  while (demand(hi) >= S) {
    hi *= 2.0;
    if (++guard > 2000)
      throw numerical_error("clearing_rate: bracket failure (high)");
  }
  return bisect([&](double R) { return demand(R) - S; }, lo, hi);
}

}  // namespace

StaticEquilibrium solve_equilibrium_concave(const StaticEconomy& econ) {
  for (const auto& a : econ.agents) require_concave(a.tech, "solve_equilibrium_concave");
  StaticEquilibrium eq;
  eq.R = clearing_rate(econ, [&](double R) { return total_demand(econ, R); });
  const int m = static_cast<int>(econ.agents.size());
  eq.allocations.resize(m);
  bool any_binding = false;
  for (int i = 0; i < m; ++i) {
    eq.allocations[i] = individual_choice_concave(econ.agents[i], eq.R);
    any_binding = any_binding || eq.allocations[i].binding;
  }
  eq.Y = aggregate_output(econ, eq.allocations);

  if (!any_binding) {
    eq.regime = {RegimeKind::FrictionlessConcave, -1};
    return eq;
  }
  // Regime bookkeeping: with ordered thresholds R_0 < ... < R_{m-1}, binding
  // agents form the suffix above the last threshold below R.
  std::vector<double> thr(m);
  for (int i = 0; i < m; ++i) {
    auto t = threshold_Ri(econ.agents[i]);
    thr[i] = t.never_binding ? 0.0 : t.R_i;
  }
  bool ordered = true;
  for (int i = 1; i < m; ++i)
    if (!(thr[i] > thr[i - 1])) ordered = false;
  if (!ordered) {
    eq.regime = {RegimeKind::UnorderedThresholds, -1};
    return eq;
  }
  int n = -1;
  for (int i = 0; i < m; ++i)
    if (thr[i] < eq.R) n = i;
  eq.regime = {RegimeKind::Interior, n};
  return eq;
}

FrictionlessSolution frictionless_concave(const StaticEconomy& econ) {
  for (const auto& a : econ.agents) require_concave(a.tech, "frictionless_concave");
  FrictionlessSolution sol;
  auto demand = [&](double R) {
    double d = 0;
    for (const auto& a : econ.agents) d += kn(a.tech, R);
    return d;
  };
  sol.R = clearing_rate(econ, demand);
  sol.allocations.resize(econ.agents.size());
  for (std::size_t i = 0; i < econ.agents.size(); ++i) {
    auto& al = sol.allocations[i];
    al.k = kn(econ.agents[i].tech, sol.R);
    al.b = al.k - econ.agents[i].S;
    al.binding = false;
    al.profit = econ.agents[i].tech.output(al.k) - sol.R * al.b;
  }
  sol.Y = aggregate_output(econ, sol.allocations);
  return sol;
}

}  // namespace credeq
