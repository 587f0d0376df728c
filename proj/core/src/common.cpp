#include "credeq/common.hpp"

#include <cmath>

namespace credeq {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const Tolerances& tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw numerical_error("bisect: endpoints do not bracket a root");
  for (int it = 0; it < tol.max_bisect; ++it) {
    double mid = 0.5 * (lo + hi);
    // Run until the interval cannot shrink any further; this always lands
    // well inside the root_rel guarantee and removes solver noise from
    // finite-difference consumers.
    if (!(lo < mid && mid < hi)) return mid;
    double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace credeq
