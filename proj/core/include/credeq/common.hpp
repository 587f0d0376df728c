#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace credeq {

// Numerical tolerances used across every solver. Kept in one place so the
// whole artifact can be tightened or relaxed consistently.
struct Tolerances {
  double market_clearing = 1e-9;  // absolute, on sum of bonds / capital
  double root_rel = 1e-12;        // relative, root finding convergence
  double deriv_rel = 1e-5;        // analytic vs finite-difference agreement
  double fd_step_scale = 1e-6;    // central-difference step h = scale*(1+|x|)
  double tvc = 1e-6;              // transversality proxy threshold
  int max_bisect = 200;           // bisection iteration cap
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bisection for a continuous function with f(lo) and f(hi) of opposite sign.
// Converges on interval width <= root_rel*(1+|mid|) or the iteration cap.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const Tolerances& tol = default_tols());

}  // namespace credeq
