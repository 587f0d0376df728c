#pragma once

// Independent cross-checks used by the unit and acceptance suites: random
// economy generators, brute-force grid oracles, and finite-difference
// helpers. Everything here is deliberately dumber (and slower) than the
// solver under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "credeq/economy.hpp"
#include "credeq/linear.hpp"

namespace credeq::oracles {

inline std::mt19937_64 rng(std::uint64_t seed = 0xC0FFEE5EEDull) {
  return std::mt19937_64(seed);
}

// Random linear economy with strictly ascending productivities. Any
// gamma in (0,1) keeps it admissible (gamma_i*A_i < A_i <= A_m).
inline StaticEconomy random_linear_economy(std::mt19937_64& gen, int max_m = 6) {
  std::uniform_int_distribution<int> md(2, max_m);
  std::uniform_real_distribution<double> gap(0.05, 1.0);
  std::uniform_real_distribution<double> gd(0.05, 0.9);
  std::uniform_real_distribution<double> sd(0.1, 3.0);
  const int m = md(gen);
  StaticEconomy e;
  double A = gap(gen);
  for (int i = 0; i < m; ++i) {
    A += gap(gen);
    e.agents.push_back({i + 1, Technology::linear(A), gd(gen), sd(gen)});
  }
  return e;
}

inline StaticEconomy random_cd_economy(std::mt19937_64& gen, int max_m = 5,
                                       double gamma_lo = 0.05,
                                       double gamma_hi = 0.9) {
  std::uniform_int_distribution<int> md(2, max_m);
  std::uniform_real_distribution<double> ad(0.5, 3.0);
  std::uniform_real_distribution<double> alphad(0.2, 0.8);
  std::uniform_real_distribution<double> sd(0.2, 3.0);
  const int m = md(gen);
  StaticEconomy e;
  for (int i = 0; i < m; ++i) {
    std::uniform_real_distribution<double> gd(gamma_lo, gamma_hi);
    e.agents.push_back(
        {i + 1, Technology::cobb_douglas(ad(gen), alphad(gen)), gd(gen), sd(gen)});
  }
  return e;
}

// Best attainable profit for one agent at rate R, by brute force over bond
// positions with k = S + b and the credit constraint R*b <= gamma*A*(S+b).
// Linear technology only. Returns the max over the grid; the true optimum is
// at a grid point or an endpoint since profit is piecewise linear.
inline double best_profit_grid(const StaticAgent& a, double R, int grid = 20000) {
  const double A = a.tech.A;
  double b_hi;
  if (R > a.gamma * A)
    b_hi = a.gamma * A * a.S / (R - a.gamma * A);
  else
    b_hi = 1e6 * a.S;  // unbounded case; the caller never hits this in eq.
  const double b_lo = -a.S;
  double best = -1e300;
  for (int i = 0; i <= grid; ++i) {
    const double b = b_lo + (b_hi - b_lo) * i / grid;
    const double profit = A * (a.S + b) - R * b;
    best = std::max(best, profit);
  }
  return best;
}

// Central finite difference of a scalar function of one parameter.
template <typename Fn>
double central_diff(Fn f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Frictionless Cobb-Douglas aggregate output with common exponent alpha:
// Y* = S^alpha * (sum_i A_i^(1/(1-alpha)))^(1-alpha).
inline double frictionless_cd_output(const StaticEconomy& e) {
  const double alpha = e.agents[0].tech.alpha;
  double sum = 0;
  for (const auto& a : e.agents) sum += std::pow(a.tech.A, 1.0 / (1.0 - alpha));
  return std::pow(e.total_wealth(), alpha) * std::pow(sum, 1.0 - alpha);
}

// Independent evaluation of the regime-cell predicates; returns how many
// cells claim the economy. Used to certify that the partition is exact.
inline int count_matching_cells(const StaticEconomy& e) {
  const auto bounds = compute_bounds(e);
  const double S = e.total_wealth();
  const double gmax = e.max_gamma_A();
  const int m = static_cast<int>(e.agents.size());
  int hits = 0;
  for (int n = 0; n < m; ++n)
    if (bounds[n].defined && bounds[n].B <= S && S <= bounds[n].D) ++hits;
  for (int n = 0; n + 1 < m; ++n) {
    if (!bounds[n + 1].defined || !(bounds[n + 1].D < S)) continue;
    const double An = e.agents[n].tech.A;
    if (gmax < An) {
      if (S < bounds[n].B) ++hits;
    } else {
      ++hits;
    }
  }
  return hits;
}

}  // namespace credeq::oracles
