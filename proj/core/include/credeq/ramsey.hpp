#pragma once

#include <string>
#include <vector>

#include "credeq/common.hpp"

namespace credeq {

// Infinite-horizon model: log utility, linear technology F_{i,t}(k) = A_{i,t}k.
// With log utility the savings rule is s_{i,t} = beta_i * cash-on-hand and
// consumption is the complementary share.
struct DynamicAgent {
  int id = 0;
  double beta = 0.0;   // discount factor, in (0,1)
  double gamma = 0.0;  // credit limit, in (0,1)
  double w0 = 0.0;     // initial wealth, positive
  // Productivity path: A_path[t-1] = A_{i,t}; the last entry extends forever
  // (a single entry means stationary technology).
  std::vector<double> A_path;

  double A_at(int t) const;                    // t >= 1
  double s0() const { return beta * w0; }      // s_{i,0} = beta_i*w_{i,0}
};

struct DynamicEconomy {
  std::vector<DynamicAgent> agents;  // ascending productivity at every date
  int T = 100;                       // truncation horizon

  double S0() const;  // sum_i s_{i,0}
};

std::vector<std::string> validate_dynamic_economy(const DynamicEconomy& econ,
                                                  int T_check);

struct AgentPath {
  int id = 0;
  // All indexed by date t = 0..T.
  std::vector<double> k, b, c, s;
};

struct EquilibriumPath {
  int T = 0;
  // R[t] for t = 1..T+1; R[0] unused. R[T+1] is the continuation-rate
  // hypothesis that pins down the date-T portfolio.
  std::vector<double> R;
  std::vector<AgentPath> agents;
  std::vector<double> Y;  // Y[t] for t = 1..T; Y[0] unused
  std::string hypothesis;
  // Constructor bookkeeping (indices into the agent list; -1 when unused):
  int hypo_n = -1;  // date-0 borrowers are agents >= n
  int hypo_h = -1;  // residual producer from date 1 on
  double R1 = 0.0;
};

// R = 1/max_i beta_i.
double steady_state_rate(const DynamicEconomy& econ);

// No-constraint benchmark: R_t = A_{m,t},
// Y*_t = A_{m,t}...A_{m,1} * sum_i beta_i^{t-1} s_{i,0}.
struct FrictionlessPath {
  std::vector<double> Y;  // Y[t], t = 1..T
  std::vector<double> G;  // G[t] = Y[t]/Y[t-1], t = 2..T
  EquilibriumPath path;
};

FrictionlessPath frictionless_path(const DynamicEconomy& econ, int T);

struct ConditionCheck {
  bool ok = false;
  int first_fail = -1;       // first violating period (-1 when ok)
  bool dominance = false;    // geometric-base comparison deciding t > T
  std::string detail;
};

// Conditions for an equilibrium with R_t = A_{h,t} for all t: the double
// inequality beta_h^t s_{h,0}/(1-gamma_h) >= k-residual >= 0 for t = 0..T,
// plus (stationary case) beta_h = max_{i<=h} beta_i >
// max_{j>h} beta_j(1-gamma_j)A_j/(A_h-gamma_j A_j), which settles all t > T.
ConditionCheck check_conditions_Ah(const DynamicEconomy& econ, int h, int T);

EquilibriumPath construct_path_Ah(const DynamicEconomy& econ, int h, int T);

// R_1 in (A_{n-1}, A_n) solving sum_{i<n} s_{i,0} =
// sum_{j>=n} gamma_j A_j/(R_1-gamma_j A_j) s_{j,0}; R_t = A_h for t >= 2.
// For n = h = m the closed form R_1 = gamma_m A_m S_0 / sum_{i!=m} s_{i,0}
// applies and is asserted against the bisection root.
EquilibriumPath construct_path_interior_then_Ah(const DynamicEconomy& econ,
                                                int n, int h, int T);

// R_1 = gamma_m A_m S_0/sum_{i!=m} s_{i,0} in (A_{m-1}, A_m); R_t = A_h with
// h <= m-1 from date 2 on. Only agent m produces at date 1; m-h+1 producers
// afterwards.
EquilibriumPath construct_path_m1mh(const DynamicEconomy& econ, int h, int T);

// R_t strictly between A_{m-1,t} and A_{m,t} at every date:
// R_1 = gamma_m A_{m,1} S_0/sum_{i<m} s_{i,0},
// R_{t+1} = A_{m,t+1}(gamma_m + (1-gamma_m) beta_m
//           * sum_{i<m} beta_i^{t-1} s_{i,0} / sum_{i<m} beta_i^t s_{i,0}).
EquilibriumPath construct_path_interior_all(const DynamicEconomy& econ, int T);

struct AutoResult {
  EquilibriumPath path;
  std::vector<std::string> rejected;  // hypotheses tried and why they failed
};

// Tries the constructors in order of decreasing residual-producer index and
// closed-form specificity; returns the first candidate certified by
// verify_path. Throws numerical_error when no hypothesis verifies.
AutoResult auto_construct(const DynamicEconomy& econ, int T);

// Sufficiency check per the saddle-point conditions: recovered multipliers
// lambda_{i,t} = beta_i^t/c_{i,t},
// mu_{i,t+1} = lambda_{i,t}/R_{t+1} - lambda_{i,t+1} >= 0,
// eta_{i,t} = lambda_{i,t} - A_{i,t+1}(lambda_{i,t+1}+gamma_i mu_{i,t+1}) >= 0
// with eta*k = 0, complementary slackness of mu with the borrowing constraint,
// exact budget identities, market clearing, and the TVC proxy
// beta_i^T (k_{i,T}-b_{i,T})/c_{i,T}. All residuals are normalized by the
// local scale of the path (levels grow geometrically).
struct VerificationReport {
  bool pass = false;
  int first_fail_t = -1;
  std::string first_fail_what;
  double max_budget = 0.0;
  double max_market = 0.0;
  double max_constraint = 0.0;   // borrowing-constraint violation
  double max_mu_neg = 0.0;       // most negative recovered mu (normalized)
  double max_eta_neg = 0.0;      // most negative capital-FOC slack
  double max_eta_comp = 0.0;     // eta * k complementarity
  double max_mu_comp = 0.0;      // mu * constraint-slack complementarity
  double max_k_neg = 0.0;
  // Raw discounted-value proxy beta_i^T (k-b)/c at T, and its geometric
  // extrapolation to horizon 10T using the measured tail decay ratio; the
  // pass verdict uses the extrapolated value (the raw proxy decays like
  // beta_i^t and is not yet small at moderate T when beta_i is near 1).
  double tvc_raw = 0.0;
  double tvc_proxy = 0.0;
};

VerificationReport verify_path(const DynamicEconomy& econ,
                               const EquilibriumPath& path,
                               double tol = default_tols().market_clearing,
                               double tvc_tol = default_tols().tvc);

// Closed-form dY_t/dgamma_v along an interior-then-A_h path (v a producer).
// t = 1 uses the static interior-regime formula on (s_{j,0}, R_1); t >= 2
// uses the dynamic displays together with
// dR_1/dgamma_v = A_v R_1 s_{v,0}/(R_1-gamma_v A_v)^2
//                 / sum_{j>=n} gamma_j A_j s_{j,0}/(R_1-gamma_j A_j)^2.
double dYt_dGamma_analytic(const DynamicEconomy& econ, const EquilibriumPath& path,
                           int v, int t);

}  // namespace credeq
