#include "credeq/linear.hpp"

#include <algorithm>
#include <cmath>

namespace credeq {

namespace {

void require_linear(const StaticEconomy& econ, const char* where) {
  if (!econ.all_linear())
    throw std::invalid_argument(std::string(where) + ": economy is not linear");
  for (std::size_t i = 1; i < econ.agents.size(); ++i)
    if (!(econ.agents[i].tech.A > econ.agents[i - 1].tech.A))
      throw std::invalid_argument(std::string(where) +
                                  ": productivities not strictly increasing");
}

// Borrower demand sum_{i>n} R*S_i/(R - gamma_i*A_i) at rate R.
double borrower_demand(const StaticEconomy& econ, int n, double R) {
  double d = 0;
  for (std::size_t i = n + 1; i < econ.agents.size(); ++i) {
    const auto& a = econ.agents[i];
    d += R * a.S / (R - a.gamma * a.tech.A);
  }
  return d;
}

}  // namespace

LinearChoice individual_choice_linear(double A, double gamma, double S, double R) {
  LinearChoice c;
  const double gA = gamma * A;
  if (R <= gA) {
    // Leverage is self-financing: profit grows without bound in k.
    c.kind = LinearChoiceKind::Unbounded;
    return c;
  }
  if (R < A) {
    c.kind = LinearChoiceKind::Determinate;
    c.alloc.k = R * S / (R - gA);
    c.alloc.b = gA * S / (R - gA);
    c.alloc.binding = true;
    c.alloc.profit = A * c.alloc.k - R * c.alloc.b;
    return c;
  }
  if (R == A) {
    // Producing and lending earn the same return: any bond position in the
    // admissible interval is optimal, profit = A*S throughout.
    c.kind = LinearChoiceKind::Indeterminate;
    c.b_lo = -S;
    c.b_hi = gamma * S / (1.0 - gamma);
    return c;
  }
  c.kind = LinearChoiceKind::Determinate;
  c.alloc.k = 0;
  c.alloc.b = -S;
  c.alloc.binding = false;
  c.alloc.profit = R * S;
  return c;
}

std::vector<LinearBounds> compute_bounds(const StaticEconomy& econ) {
  require_linear(econ, "compute_bounds");
  const double gmax = econ.max_gamma_A();
  const int m = static_cast<int>(econ.agents.size());
  std::vector<LinearBounds> out(m);
  for (int n = 0; n < m; ++n) {
    out[n].n = n;
    const double An = econ.agents[n].tech.A;
    if (!(An > gmax)) continue;  // undefined below the leverage cutoff
    out[n].defined = true;
    double D = 0;
    for (int i = n; i < m; ++i) {
      const auto& a = econ.agents[i];
      D += An * a.S / (An - a.gamma * a.tech.A);
    }
    out[n].D = D;
    out[n].B = D - An * econ.agents[n].S / (An - econ.agents[n].gamma * An);
  }
  return out;
}

RegimeLabel classify_regime(const StaticEconomy& econ) {
  require_linear(econ, "classify_regime");
  const double gmax = econ.max_gamma_A();
  const double S = econ.total_wealth();
  const int m = static_cast<int>(econ.agents.size());
  const auto bounds = compute_bounds(econ);

  for (int n = 0; n < m; ++n) {
    if (bounds[n].defined && bounds[n].B <= S && S <= bounds[n].D)
      return {RegimeKind::AtTFP, n};
  }
  for (int n = 0; n + 1 < m; ++n) {
    if (!bounds[n + 1].defined || !(bounds[n + 1].D < S)) continue;
    const double An = econ.agents[n].tech.A;
    if (gmax < An) {
      // case (a): root lies strictly between A_n and A_{n+1}
      if (S < bounds[n].B) return {RegimeKind::Interior, n};
    } else {
      // case (b): A_n <= max gamma*A < A_{n+1}; demand explodes toward the
      // cutoff, so any supply above D_{n+1} is covered
      return {RegimeKind::Interior, n};
    }
  }
  // The regime cells partition the admissible parameter space exactly.
  throw std::logic_error("classify_regime: no cell matched (internal bug)");
}

double solve_R_interior(int n, const StaticEconomy& econ) {
  require_linear(econ, "solve_R_interior");
  const int m = static_cast<int>(econ.agents.size());
  if (n < 0 || n + 1 >= m)
    throw std::invalid_argument("solve_R_interior: bad regime index");
  const double S = econ.total_wealth();
  const int nb = m - (n + 1);  // number of borrowers

  if (nb == 1) {
    const auto& a = econ.agents[m - 1];
    // R*S_m/(R - gamma*A) = S  =>  R = gamma*A*S/(S - S_m)
    return a.gamma * a.tech.A * S / (S - a.S);
  }
  if (nb == 2) {
    // Two borrowers p, q reduce the demand equation to a quadratic
    //   L*R^2 - [S*(g_p+g_q) - S_p*g_q - S_q*g_p]*R + S*g_p*g_q = 0
    // with L the lenders' wealth and g = gamma*A; take the greatest root.
    const auto& p = econ.agents[m - 2];
    const auto& q = econ.agents[m - 1];
    const double gp = p.gamma * p.tech.A, gq = q.gamma * q.tech.A;
    const double L = S - p.S - q.S;
    const double B = S * (gp + gq) - p.S * gq - q.S * gp;
    const double C = S * gp * gq;
    const double disc = B * B - 4.0 * L * C;
    if (disc < 0)
      throw numerical_error("solve_R_interior: negative discriminant");
    return (B + std::sqrt(disc)) / (2.0 * L);
  }

  double glo = 0;
  for (int i = n + 1; i < m; ++i)
    glo = std::max(glo, econ.agents[i].gamma * econ.agents[i].tech.A);
  double lo = glo * (1.0 + 1e-9);
  double hi = econ.agents[m - 1].tech.A * 10.0;
  // demand is strictly decreasing from +inf (at the cutoff) to below S
  while (borrower_demand(econ, n, lo) <= S) lo = glo + (lo - glo) * 0.5;
  return bisect([&](double R) { return borrower_demand(econ, n, R) - S; }, lo, hi);
}

StaticEquilibrium solve_equilibrium_linear(const StaticEconomy& econ) {
  require_linear(econ, "solve_equilibrium_linear");
  StaticEquilibrium eq;
  eq.regime = classify_regime(econ);
  const int m = static_cast<int>(econ.agents.size());
  eq.allocations.resize(m);

  if (eq.regime.kind == RegimeKind::AtTFP) {
    const int n = eq.regime.n;
    eq.R = econ.agents[n].tech.A;
    double k_others = 0;
    for (int i = 0; i < m; ++i) {
      if (i == n) continue;
      auto c = individual_choice_linear(econ.agents[i].tech.A, econ.agents[i].gamma,
                                        econ.agents[i].S, eq.R);
      if (c.kind != LinearChoiceKind::Determinate)
        throw std::logic_error("solve_equilibrium_linear: unexpected indeterminacy");
      eq.allocations[i] = c.alloc;
      k_others += c.alloc.k;
    }
    // Agent n's problem is indeterminate at R = A_n; market clearing forces
    // its capital to absorb the residual supply.
    auto& an = eq.allocations[n];
    an.k = econ.total_wealth() - k_others;
    an.b = an.k - econ.agents[n].S;
    an.binding = false;
    an.profit = econ.agents[n].tech.A * an.k - eq.R * an.b;
    const auto cn = individual_choice_linear(econ.agents[n].tech.A,
                                             econ.agents[n].gamma,
                                             econ.agents[n].S, eq.R);
    const double slack = 1e-9 * (1.0 + std::fabs(an.b));
    if (an.b < cn.b_lo - slack || an.b > cn.b_hi + slack)
      throw std::logic_error(
          "solve_equilibrium_linear: residual outside admissible interval");
  } else {
    const int n = eq.regime.n;
    eq.R = solve_R_interior(n, econ);
    for (int i = 0; i < m; ++i) {
      auto c = individual_choice_linear(econ.agents[i].tech.A, econ.agents[i].gamma,
                                        econ.agents[i].S, eq.R);
      if (c.kind != LinearChoiceKind::Determinate)
        throw std::logic_error("solve_equilibrium_linear: unexpected indeterminacy");
      eq.allocations[i] = c.alloc;
    }
  }
  eq.Y = aggregate_output(econ, eq.allocations);
  return eq;
}

double frictionless_output_linear(const StaticEconomy& econ) {
  require_linear(econ, "frictionless_output_linear");
  return econ.agents.back().tech.A * econ.total_wealth();
}

double oracle_equilibrium_linear(const StaticEconomy& econ, std::size_t grid_size) {
  require_linear(econ, "oracle_equilibrium_linear");
  const double gmax = econ.max_gamma_A();
  const double Am = econ.agents.back().tech.A;
  const double S = econ.total_wealth();
  // Demand (as an interval, to cover the indeterminate R = A_i atoms) is
  // decreasing in R; report the first grid rate at which its lower end has
  // fallen to the supply.
  for (std::size_t g = 1; g <= grid_size; ++g) {
    const double R = gmax + (Am - gmax) * static_cast<double>(g) /
                                static_cast<double>(grid_size);
    double dmin = 0, dmax = 0;
    for (const auto& a : econ.agents) {
      const double A = a.tech.A;
      if (R < A) {
        const double k = R * a.S / (R - a.gamma * A);
        dmin += k;
        dmax += k;
      } else if (R == A) {
        dmax += a.S / (1.0 - a.gamma);
      }
    }
    if (dmin <= S && S <= dmax) return R;
    if (dmin <= S) return R;  // crossed between grid points
  }
  return Am;
}

}  // namespace credeq
