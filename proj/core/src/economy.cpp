#include "credeq/economy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace credeq {

Technology Technology::linear(double A) {
  Technology t;
  t.kind = TechKind::Linear;
  t.A = A;
  return t;
}

Technology Technology::cobb_douglas(double A, double alpha) {
  Technology t;
  t.kind = TechKind::CobbDouglas;
  t.A = A;
  t.alpha = alpha;
  return t;
}

Technology Technology::custom(double A, std::function<double(double)> f,
                              std::function<double(double)> f_prime) {
  Technology t;
  t.kind = TechKind::CustomConcave;
  t.A = A;
  t.f = std::move(f);
  t.f_prime = std::move(f_prime);
  return t;
}

double Technology::output(double k) const {
  switch (kind) {
    case TechKind::Linear:
      return A * k;
    case TechKind::CobbDouglas:
      return A * std::pow(k, alpha);
    case TechKind::CustomConcave:
      return A * f(k);
  }
  return 0.0;
}

double Technology::mpk(double k) const {
  switch (kind) {
    case TechKind::Linear:
      return A;
    case TechKind::CobbDouglas:
      return A * alpha * std::pow(k, alpha - 1.0);
    case TechKind::CustomConcave:
      return A * f_prime(k);
  }
  return 0.0;
}

double Technology::share_limit() const {
  switch (kind) {
    case TechKind::Linear:
      return 1.0;
    case TechKind::CobbDouglas:
      return alpha;
    case TechKind::CustomConcave: {
      // k*f'/f is nondecreasing; its value at very large k approximates the sup.
      const double k = 1e8;
      return k * f_prime(k) / f(k);
    }
  }
  return 1.0;
}

double StaticEconomy::total_wealth() const {
  double s = 0;
  for (const auto& a : agents) s += a.S;
  return s;
}

bool StaticEconomy::all_linear() const {
  return std::all_of(agents.begin(), agents.end(), [](const StaticAgent& a) {
    return a.tech.kind == TechKind::Linear;
  });
}

double StaticEconomy::max_gamma_A() const {
  double m = 0;
  for (const auto& a : agents) m = std::max(m, a.gamma * a.tech.A);
  return m;
}

std::string RegimeLabel::describe() const {
  switch (kind) {
    case RegimeKind::AtTFP:
      return "AtTFP(" + std::to_string(n) + ")";
    case RegimeKind::Interior:
      return "Interior(" + std::to_string(n) + ")";
    case RegimeKind::FrictionlessConcave:
      return "FrictionlessConcave";
    case RegimeKind::UnorderedThresholds:
      return "UnorderedThresholds";
  }
  return "?";
}

namespace {

// Sampled admissibility check for user-supplied technologies: f(0) = 0,
// strictly increasing, strictly concave, k*f'/f nondecreasing, on a 64-point
// log-spaced grid over [1e-6, 1e6].
void check_custom_concave(const StaticAgent& a, std::vector<std::string>& out) {
  const auto& t = a.tech;
  const std::string who = "agent " + std::to_string(a.id) + ": ";
  if (!t.f || !t.f_prime) {
    out.push_back(who + "custom technology missing f or f_prime");
    return;
  }
  if (std::fabs(t.f(0.0)) > 1e-12) {
    out.push_back(who + "custom technology violates f(0)=0");
    return;
  }
  const int N = 64;
  std::vector<double> ks(N), fv(N), fp(N), share(N);
  for (int i = 0; i < N; ++i) {
    ks[i] = std::pow(10.0, -6.0 + 12.0 * i / (N - 1));
    fv[i] = t.f(ks[i]);
    fp[i] = t.f_prime(ks[i]);
    share[i] = ks[i] * fp[i] / fv[i];
  }
  for (int i = 0; i < N; ++i) {
    if (!(fp[i] > 0)) {
      out.push_back(who + "custom technology not strictly increasing");
      return;
    }
  }
  for (int i = 1; i < N; ++i) {
    if (!(fv[i] > fv[i - 1])) {
      out.push_back(who + "custom technology not strictly increasing");
      return;
    }
    if (!(fp[i] < fp[i - 1])) {
      out.push_back(who + "custom technology not strictly concave");
      return;
    }
    if (share[i] < share[i - 1] - 1e-9) {
      out.push_back(who + "custom technology: k*f'/f not nondecreasing");
      return;
    }
  }
}

}  // namespace

std::vector<std::string> validate_economy(const StaticEconomy& econ) {
  std::vector<std::string> out;
  if (econ.agents.empty()) {
    out.push_back("economy has no agents");
    return out;
  }
  std::set<int> ids;
  for (const auto& a : econ.agents) {
    const std::string who = "agent " + std::to_string(a.id) + ": ";
    if (!ids.insert(a.id).second) out.push_back(who + "duplicate id");
    if (!(a.gamma > 0.0 && a.gamma < 1.0))
      out.push_back(who + "gamma out of (0,1)");
    if (!(a.S > 0.0)) out.push_back(who + "wealth S not positive");
    if (!(a.tech.A > 0.0)) out.push_back(who + "productivity A not positive");
    if (a.tech.kind == TechKind::CobbDouglas &&
        !(a.tech.alpha > 0.0 && a.tech.alpha < 1.0))
      out.push_back(who + "alpha out of (0,1)");
    if (a.tech.kind == TechKind::CustomConcave) check_custom_concave(a, out);
  }
  if (econ.all_linear()) {
    for (std::size_t i = 1; i < econ.agents.size(); ++i) {
      if (econ.agents[i].tech.A == econ.agents[i - 1].tech.A)
        out.push_back("agent " + std::to_string(econ.agents[i].id) +
                      ": non-strict A ordering (tie)");
      else if (econ.agents[i].tech.A < econ.agents[i - 1].tech.A)
        out.push_back("agent " + std::to_string(econ.agents[i].id) +
                      ": agents not sorted by increasing A");
    }
  }
  return out;
}

double aggregate_output(const StaticEconomy& econ,
                        const std::vector<AgentAllocation>& allocations) {
  if (allocations.size() != econ.agents.size())
    throw std::invalid_argument("aggregate_output: allocation list does not cover agents");
  double y = 0;
  for (std::size_t i = 0; i < econ.agents.size(); ++i)
    y += econ.agents[i].tech.output(allocations[i].k);
  return y;
}

}  // namespace credeq
