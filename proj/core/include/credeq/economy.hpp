#pragma once

#include <functional>
#include <string>
#include <vector>

#include "credeq/common.hpp"

namespace credeq {

enum class TechKind { Linear, CobbDouglas, CustomConcave };

// Production technology F(k) = A*f(k).
//  Linear:        f(k) = k
//  CobbDouglas:   f(k) = k^alpha, alpha in (0,1)
//  CustomConcave: user-supplied f and f' (f(0)=0, strictly increasing,
//                 strictly concave, k*f'(k)/f(k) nondecreasing)
struct Technology {
  TechKind kind = TechKind::Linear;
  double A = 1.0;
  double alpha = 0.0;
  std::function<double(double)> f;        // CustomConcave only
  std::function<double(double)> f_prime;  // CustomConcave only

  static Technology linear(double A);
  static Technology cobb_douglas(double A, double alpha);
  static Technology custom(double A, std::function<double(double)> f,
                           std::function<double(double)> f_prime);

  double output(double k) const;  // F(k) = A*f(k)
  double mpk(double k) const;     // F'(k) = A*f'(k)
  // sup_k k*f'(k)/f(k); equals alpha for Cobb-Douglas, 1 for linear,
  // sampled at large k for custom technologies.
  double share_limit() const;
};

struct StaticAgent {
  int id = 0;
  Technology tech;
  double gamma = 0.0;  // credit limit, in (0,1)
  double S = 0.0;      // initial wealth, positive
};

struct StaticEconomy {
  std::vector<StaticAgent> agents;

  double total_wealth() const;  // S = sum_i S_i
  bool all_linear() const;
  // max_i gamma_i * A_i, the unbounded-demand cutoff for linear economies
  double max_gamma_A() const;
};

struct AgentAllocation {
  double k = 0.0;        // capital, nonnegative
  double b = 0.0;        // bond position, negative = lending
  bool binding = false;  // credit constraint binds
  double profit = 0.0;   // F(k) - R*b
};

enum class RegimeKind { AtTFP, Interior, FrictionlessConcave, UnorderedThresholds };

// Which cell of the equilibrium partition the economy occupies.
//  AtTFP(n):    R = A_n (agent n's allocation pinned down by market clearing)
//  Interior(n): A_n < R < A_{n+1}; agents above n borrow at a binding
//               constraint (concave case: R in (R_n, R_{n+1}])
// Agent indices are 0-based positions in the ascending-A ordering.
struct RegimeLabel {
  RegimeKind kind = RegimeKind::AtTFP;
  int n = -1;

  std::string describe() const;
};

struct StaticEquilibrium {
  double R = 0.0;
  std::vector<AgentAllocation> allocations;  // parallel to economy agents
  RegimeLabel regime;
  double Y = 0.0;  // aggregate output sum_i F_i(k_i)
};

// Diagnostic validation: empty result iff all invariants hold. Each entry
// names the offending agent (by id) and the violated rule.
std::vector<std::string> validate_economy(const StaticEconomy& econ);

// Y = sum_i F_i(k_i). Throws if the allocation list does not cover the agents.
double aggregate_output(const StaticEconomy& econ,
                        const std::vector<AgentAllocation>& allocations);

}  // namespace credeq
