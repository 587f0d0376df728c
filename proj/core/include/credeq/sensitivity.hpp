#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "credeq/economy.hpp"

namespace credeq {

// Dispatch: linear economies go through the exact regime solver, anything
// else through the concave bisection solver.
StaticEquilibrium solve_equilibrium(const StaticEconomy& econ);

enum class Param { A, Gamma };

// dY/dA_j in regime AtTFP(n) (linear):
//   j < n: 0
//   j = n: sum_{i<=n} S_i - sum_{i>n} (1-g_i)*g_i*S_i/((A_n/A_i)-g_i)^2
//   j > n: A_n^2*(1-g_j)*S_j/(A_n-g_j*A_j)^2
double dY_dA_linear(const StaticEconomy& econ, int j);

// dY/dgamma_i (linear), in the AtTFP(n) regime:
//   i <= n: 0,  i > n: A_n*A_i*S_i*(A_i-A_n)/(A_n-g_i*A_i)^2
// and in the Interior(n) regime (borrowers B = {i > n}):
//   dR/dg_i = R*A_i*S_i/(R-g_i*A_i)^2 / sum_{j in B} g_j*A_j*S_j/(R-g_j*A_j)^2
//   dY/dg_i = dR/dg_i*(A_i*sum_B g_j*A_j*S_j/(R-g_j*A_j)^2
//                      - sum_B g_j*A_j^2*S_j/(R-g_j*A_j)^2)
double dY_dGamma_linear(const StaticEconomy& econ, int i);

struct SensitivityReport {
  int agent = 0;
  Param param = Param::A;
  std::optional<double> analytic;
  double finite_diff = 0.0;
  bool regime_boundary = false;  // the two perturbed economies classify apart
};

// Central difference (Y(x+h)-Y(x-h))/(2h), default h = 1e-6*(1+|x|).
SensitivityReport finite_diff_sensitivity(const StaticEconomy& econ, int agent,
                                          Param param, double h = 0.0);

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  double R = 0.0, Y = 0.0;
  RegimeLabel regime;
  std::vector<double> k;  // per-agent capital
  std::string error;
};

struct SweepTable {
  int agent = 0;
  Param param = Param::A;
  std::vector<SweepRow> rows;  // one per grid point, grid strictly increasing
};

SweepTable sweep(const StaticEconomy& econ, int agent, Param param,
                 double from, double to, int steps);

// Two-agent productivity-shock asymmetry check (closed form):
// evaluates the faster-top-growth condition, the dispersion condition and the
// growth-ratio condition, predicts the sign of Y(A')-Y(A), and re-solves both
// economies for the realized sign. For m > 2 only the realized sign is filled.
struct ShockVerdict {
  bool closed_form = false;       // two-agent constrained-regime formula used
  bool cond_a2fast = false;       // A2'/A2 >= A1'/A1 >= 1
  bool cond_dispersion = false;   // S2*A2*(1-g2)*g2*A2/(A1-g2*A2)^2 > S1
  bool cond_rate = false;         // relative growth ratio below the cutoff
  int predicted_sign = 0;         // -1/0/+1; 0 = no condition fires
  int realized_sign = 0;
  double delta_Y = 0.0;
  bool consistent = true;         // prediction (when made) matches realization
};

ShockVerdict asymmetric_shock_check(const StaticEconomy& econ,
                                    const std::vector<double>& new_As);

// Aggregate TFP accounting: TFP = Y/f_ref(S). Reports whether
// min_i A'_i/A_i <= TFP'/TFP <= max_i A'_i/A_i.
struct TfpAccount {
  double tfp_before = 0.0, tfp_after = 0.0, ratio = 0.0;
  double growth_min = 0.0, growth_max = 0.0;
  bool within_bounds = false;
};

TfpAccount tfp_accounting(const StaticEconomy& before, const StaticEconomy& after,
                          const std::function<double(double)>& f_ref);

// Golden-section refinement of an extremum of a unimodal scalar function on
// [a, b]; used to localize sweep turning points to ~1e-4.
double refine_extremum(const std::function<double(double)>& f, double a, double b,
                       bool find_min, double xtol = 1e-6);

}  // namespace credeq
