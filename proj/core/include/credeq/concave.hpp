#pragma once

#include <vector>

#include "credeq/economy.hpp"

namespace credeq {

// Unconstrained capital: the unique k with A*f'(k) = R (Inada). Strictly
// decreasing in R. Closed form (alpha*A/R)^(1/(1-alpha)) for Cobb-Douglas.
double kn(const Technology& tech, double R);

// Constrained capital: the unique k > S with R*(k-S) = gamma*A*f(k).
// Requires gamma below the technology's share limit (else no solution).
double kb(const Technology& tech, double gamma, double S, double R);

// H(R) = R*(kn(R)-S)/(A*f(kn(R))): the collateral share a just-binding
// constraint would need at rate R. Strictly decreasing in R.
double binding_share(const Technology& tech, double S, double R);

// The cutoff rate R_i with H(R_i) = gamma: the constraint binds iff R <= R_i.
// never_binding is set when gamma >= sup k*f'/f (Cobb-Douglas: gamma >= alpha).
// Cobb-Douglas closed form: R_i = alpha*A*S^(alpha-1)*(1-gamma/alpha)^(1-alpha).
struct BindingThreshold {
  int id = 0;
  bool never_binding = false;
  double R_i = 0.0;
};

BindingThreshold threshold_Ri(const StaticAgent& agent);

// k = kb when H(R) >= gamma (binding), k = kn otherwise; b = k - S.
AgentAllocation individual_choice_concave(const StaticAgent& agent, double R);

// Bisection on the strictly decreasing, continuous aggregate demand
// D(R) = sum_i k_i(R) = S. Regime: FrictionlessConcave when R exceeds every
// threshold; Interior(n) when thresholds are ordered and exactly agents
// above n bind (n = -1 when all bind); UnorderedThresholds otherwise.
StaticEquilibrium solve_equilibrium_concave(const StaticEconomy& econ);

struct FrictionlessSolution {
  double R = 0.0;
  std::vector<AgentAllocation> allocations;
  double Y = 0.0;
};

// No-constraint benchmark: marginal products equalized, sum kn_i(R) = S.
FrictionlessSolution frictionless_concave(const StaticEconomy& econ);

}  // namespace credeq
