#pragma once

#include <vector>

#include "credeq/economy.hpp"

namespace credeq {

// Individual problem with linear technology F(k) = A*k at rate R:
//   R <= gamma*A          -> demand is unbounded (no solution)
//   gamma*A < R < A       -> k = R*S/(R-gamma*A), b = gamma*A*S/(R-gamma*A),
//                            constraint binds
//   R = A                 -> any b in [-S, gamma*S/(1-gamma)], k = b+S
//   R > A                 -> k = 0, b = -S (pure lender)
enum class LinearChoiceKind { Determinate, Indeterminate, Unbounded };

struct LinearChoice {
  LinearChoiceKind kind = LinearChoiceKind::Determinate;
  AgentAllocation alloc;        // Determinate only
  double b_lo = 0, b_hi = 0;    // Indeterminate: admissible bond interval
};

LinearChoice individual_choice_linear(double A, double gamma, double S, double R);

// Wealth bounds delimiting the regime cells:
//   D_n = sum_{i>=n} A_n*S_i/(A_n - gamma_i*A_i)   (total demand at R = A_n)
//   B_n = sum_{i>n}  A_n*S_i/(A_n - gamma_i*A_i)   (borrower demand at R = A_n)
// defined only when A_n > max_i gamma_i*A_i. Indices are 0-based.
struct LinearBounds {
  int n = 0;
  bool defined = false;
  double D = 0, B = 0;
};

std::vector<LinearBounds> compute_bounds(const StaticEconomy& econ);

// Unique regime cell per the exact partition: AtTFP(n) iff A_n > max gamma*A
// and B_n <= S <= D_n; Interior(n) iff D_{n+1} < S and either
// (a) max gamma*A < A_n and S < B_n, or (b) A_n <= max gamma*A < A_{n+1}.
RegimeLabel classify_regime(const StaticEconomy& econ);

// Greatest root of sum_{i>n} R*S_i/(R - gamma_i*A_i) = S on
// (max_{i>n} gamma_i*A_i, infinity). Closed forms for one or two borrowers,
// bisection on the strictly decreasing demand otherwise.
double solve_R_interior(int n, const StaticEconomy& econ);

StaticEquilibrium solve_equilibrium_linear(const StaticEconomy& econ);

// Y* = A_m * sum_i S_i, the no-friction upper bound.
double frictionless_output_linear(const StaticEconomy& econ);

// Independent verification oracle: scans R over a uniform grid of
// (max gamma*A, A_m], computes the interval of aggregate capital demand
// consistent with the individual problem (interval-valued at R = A_i), and
// returns the first grid rate whose demand interval has dropped to S.
double oracle_equilibrium_linear(const StaticEconomy& econ, std::size_t grid_size);

}  // namespace credeq
