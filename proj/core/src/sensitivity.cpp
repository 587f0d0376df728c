#include "credeq/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "credeq/concave.hpp"
#include "credeq/linear.hpp"

namespace credeq {

StaticEquilibrium solve_equilibrium(const StaticEconomy& econ) {
  if (econ.all_linear()) return solve_equilibrium_linear(econ);
  return solve_equilibrium_concave(econ);
}

double dY_dA_linear(const StaticEconomy& econ, int j) {
  const auto regime = classify_regime(econ);
  if (regime.kind != RegimeKind::AtTFP)
    throw std::invalid_argument("dY_dA_linear: economy not in an AtTFP regime");
  const int n = regime.n;
  const int m = static_cast<int>(econ.agents.size());
  const double An = econ.agents[n].tech.A;
  if (j < n) return 0.0;
  if (j == n) {
    double d = 0;
    for (int i = 0; i <= n; ++i) d += econ.agents[i].S;
    for (int i = n + 1; i < m; ++i) {
      const auto& a = econ.agents[i];
      const double r = An / a.tech.A - a.gamma;
      d -= (1.0 - a.gamma) * a.gamma * a.S / (r * r);
    }
    return d;
  }
  const auto& a = econ.agents[j];
  const double den = An - a.gamma * a.tech.A;
  return An * An * (1.0 - a.gamma) * a.S / (den * den);
}

double dY_dGamma_linear(const StaticEconomy& econ, int i) {
  const auto regime = classify_regime(econ);
  const int m = static_cast<int>(econ.agents.size());
  if (regime.kind == RegimeKind::AtTFP) {
    const int n = regime.n;
    if (i <= n) return 0.0;  // non-borrowers' credit limits are inert
    const double An = econ.agents[n].tech.A;
    const auto& a = econ.agents[i];
    const double den = An - a.gamma * a.tech.A;
    return An * a.tech.A * a.S * (a.tech.A - An) / (den * den);
  }
  if (regime.kind != RegimeKind::Interior)
    throw std::invalid_argument("dY_dGamma_linear: unsupported regime");
  const int n = regime.n;
  if (i <= n) return 0.0;
  const double R = solve_R_interior(n, econ);
  // Implicit differentiation of the clearing condition
  // sum_{j>n} R*S_j/(R-g_j*A_j) = S.
  double denom = 0, num_y = 0;
  for (int j = n + 1; j < m; ++j) {
    const auto& a = econ.agents[j];
    const double gA = a.gamma * a.tech.A;
    const double d2 = (R - gA) * (R - gA);
    denom += gA * a.S / d2;
    num_y += gA * a.tech.A * a.S / d2;
  }
  const auto& v = econ.agents[i];
  const double gAv = v.gamma * v.tech.A;
  const double dR = R * v.tech.A * v.S / ((R - gAv) * (R - gAv)) / denom;
  return dR * (v.tech.A * denom - num_y);
}

SensitivityReport finite_diff_sensitivity(const StaticEconomy& econ, int agent,
                                          Param param, double h) {
  SensitivityReport rep;
  rep.agent = agent;
  rep.param = param;
  const double x = param == Param::A ? econ.agents[agent].tech.A
                                     : econ.agents[agent].gamma;
  if (h <= 0) h = default_tols().fd_step_scale * (1.0 + std::fabs(x));

  auto perturbed = [&](double xv) {
    StaticEconomy e = econ;
    if (param == Param::A)
      e.agents[agent].tech.A = xv;
    else
      e.agents[agent].gamma = xv;
    if (!validate_economy(e).empty())
      throw std::invalid_argument(
          "finite_diff_sensitivity: perturbation leaves the admissible set");
    return e;
  };
  const auto lo = perturbed(x - h);
  const auto hi = perturbed(x + h);
  const auto eq_lo = solve_equilibrium(lo);
  const auto eq_hi = solve_equilibrium(hi);
  rep.finite_diff = (eq_hi.Y - eq_lo.Y) / (2.0 * h);
  rep.regime_boundary = eq_lo.regime.kind != eq_hi.regime.kind ||
                        eq_lo.regime.n != eq_hi.regime.n;

  if (econ.all_linear() && !rep.regime_boundary) {
    const auto regime = classify_regime(econ);
    if (param == Param::Gamma &&
        (regime.kind == RegimeKind::AtTFP || regime.kind == RegimeKind::Interior))
      rep.analytic = dY_dGamma_linear(econ, agent);
    else if (param == Param::A && regime.kind == RegimeKind::AtTFP)
      rep.analytic = dY_dA_linear(econ, agent);
  }
  return rep;
}

SweepTable sweep(const StaticEconomy& econ, int agent, Param param,
                 double from, double to, int steps) {
  if (steps < 2 || !(to > from))
    throw std::invalid_argument("sweep: need an increasing grid of >= 2 points");
  SweepTable table;
  table.agent = agent;
  table.param = param;
  table.rows.reserve(steps);
  for (int s = 0; s < steps; ++s) {
    SweepRow row;
    row.value = from + (to - from) * static_cast<double>(s) /
                           static_cast<double>(steps - 1);
    StaticEconomy e = econ;
    if (param == Param::A)
      e.agents[agent].tech.A = row.value;
    else
      e.agents[agent].gamma = row.value;
    try {
      const auto eq = solve_equilibrium(e);
      row.ok = true;
      row.R = eq.R;
      row.Y = eq.Y;
      row.regime = eq.regime;
      row.k.reserve(eq.allocations.size());
      for (const auto& al : eq.allocations) row.k.push_back(al.k);
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ShockVerdict asymmetric_shock_check(const StaticEconomy& econ,
                                    const std::vector<double>& new_As) {
  if (new_As.size() != econ.agents.size())
    throw std::invalid_argument("asymmetric_shock_check: size mismatch");
  ShockVerdict v;
  StaticEconomy after = econ;
  for (std::size_t i = 0; i < new_As.size(); ++i)
    after.agents[i].tech.A = new_As[i];

  const auto eq0 = solve_equilibrium(econ);
  const auto eq1 = solve_equilibrium(after);
  v.delta_Y = eq1.Y - eq0.Y;
  const double scale = 1e-12 * (1.0 + std::fabs(eq0.Y));
  v.realized_sign = v.delta_Y > scale ? 1 : (v.delta_Y < -scale ? -1 : 0);

  if (econ.agents.size() != 2 || !econ.all_linear()) return v;
  const double A1 = econ.agents[0].tech.A, A2 = econ.agents[1].tech.A;
  const double A1p = new_As[0], A2p = new_As[1];
  const double g2 = econ.agents[1].gamma;
  const double S1 = econ.agents[0].S, S2 = econ.agents[1].S;
  // The closed form requires both economies in the constrained regime
  // (gamma_2 below A_1/A_2 * S_1/(S_1+S_2) before and after the shock).
  const double bound0 = A1 / A2 * S1 / (S1 + S2);
  const double bound1 = A1p / A2p * S1 / (S1 + S2);
  if (!(g2 < bound0 && g2 < bound1 && A2p > A1p)) return v;
  v.closed_form = true;

  v.cond_a2fast = A2p / A2 >= A1p / A1 && A1p / A1 >= 1.0;
  const double d = A1 - g2 * A2;
  v.cond_dispersion = S2 * A2 * (1.0 - g2) * g2 * A2 / (d * d) - S1 > 0;
  if (A1p != A1) {
    const double lhs = (A2p / A2 - 1.0) / (A1p / A1 - 1.0);
    const double rhs =
        g2 * A2 / A1 - S1 * d * d / (S2 * A1 * A2 * (1.0 - g2));
    v.cond_rate = lhs < rhs;
  }
  if (v.cond_a2fast)
    v.predicted_sign = 1;
  else if (v.cond_dispersion && v.cond_rate && A1p > A1)
    v.predicted_sign = -1;
  if (v.predicted_sign != 0) {
    // Predictions are weak inequalities; zero realizations stay consistent.
    v.consistent = v.realized_sign == v.predicted_sign || v.realized_sign == 0;
  }
  return v;
}

TfpAccount tfp_accounting(const StaticEconomy& before, const StaticEconomy& after,
                          const std::function<double(double)>& f_ref) {
  if (before.agents.size() != after.agents.size())
    throw std::invalid_argument("tfp_accounting: size mismatch");
  TfpAccount acc;
  const auto eq0 = solve_equilibrium(before);
  const auto eq1 = solve_equilibrium(after);
  acc.tfp_before = eq0.Y / f_ref(before.total_wealth());
  acc.tfp_after = eq1.Y / f_ref(after.total_wealth());
  acc.ratio = acc.tfp_after / acc.tfp_before;
  acc.growth_min = acc.growth_max =
      after.agents[0].tech.A / before.agents[0].tech.A;
  for (std::size_t i = 1; i < before.agents.size(); ++i) {
    const double g = after.agents[i].tech.A / before.agents[i].tech.A;
    acc.growth_min = std::min(acc.growth_min, g);
    acc.growth_max = std::max(acc.growth_max, g);
  }
  const double slack = 1e-12 * (1.0 + acc.ratio);
  acc.within_bounds =
      acc.ratio >= acc.growth_min - slack && acc.ratio <= acc.growth_max + slack;
  return acc;
}

double refine_extremum(const std::function<double(double)>& f, double a, double b,
                       bool find_min, double xtol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double sgn = find_min ? 1.0 : -1.0;
  while (b - a > xtol) {
    if (sgn * f1 < sgn * f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace credeq
