#include "credeq/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace credeq {

double DynamicAgent::A_at(int t) const {
  if (t < 1) throw std::invalid_argument("A_at: dates start at 1");
  const std::size_t idx = static_cast<std::size_t>(t - 1);
  if (idx < A_path.size()) return A_path[idx];
  return A_path.back();
}

double DynamicEconomy::S0() const {
  double s = 0;
  for (const auto& a : agents) s += a.s0();
  return s;
}

std::vector<std::string> validate_dynamic_economy(const DynamicEconomy& econ,
                                                  int T_check) {
  std::vector<std::string> out;
  if (econ.agents.empty()) {
    out.push_back("economy has no agents");
    return out;
  }
  std::set<int> ids;
  for (const auto& a : econ.agents) {
    const std::string who = "agent " + std::to_string(a.id) + ": ";
    if (!ids.insert(a.id).second) out.push_back(who + "duplicate id");
    if (!(a.beta > 0.0 && a.beta < 1.0)) out.push_back(who + "beta out of (0,1)");
    if (!(a.gamma > 0.0 && a.gamma < 1.0))
      out.push_back(who + "gamma out of (0,1)");
    if (!(a.w0 > 0.0)) out.push_back(who + "initial wealth not positive");
    if (a.A_path.empty()) {
      out.push_back(who + "empty productivity path");
      return out;
    }
    for (double A : a.A_path)
      if (!(A > 0.0)) {
        out.push_back(who + "non-positive productivity");
        break;
      }
  }
  if (!out.empty()) return out;
  for (int t = 1; t <= T_check + 1; ++t) {
    double gmax = 0;
    for (const auto& a : econ.agents) gmax = std::max(gmax, a.gamma * a.A_at(t));
    for (std::size_t i = 1; i < econ.agents.size(); ++i) {
      if (!(econ.agents[i].A_at(t) > econ.agents[i - 1].A_at(t))) {
        out.push_back("date " + std::to_string(t) +
                      ": productivities not strictly increasing across agents");
        break;
      }
    }
    if (!(gmax < econ.agents.front().A_at(t)))
      out.push_back("date " + std::to_string(t) +
                    ": max gamma_i*A_i not below the lowest productivity");
    if (!out.empty()) break;
  }
  return out;
}

double steady_state_rate(const DynamicEconomy& econ) {
  if (econ.agents.empty())
    throw std::invalid_argument("steady_state_rate: empty economy");
  double bmax = 0;
  for (const auto& a : econ.agents) bmax = std::max(bmax, a.beta);
  return 1.0 / bmax;
}

namespace {

bool stationary(const DynamicEconomy& econ) {
  return std::all_of(econ.agents.begin(), econ.agents.end(),
                     [](const DynamicAgent& a) { return a.A_path.size() == 1; });
}

void require_stationary(const DynamicEconomy& econ, const char* where) {
  if (!stationary(econ))
    throw numerical_error(std::string(where) +
                          ": requires stationary technology");
}

// A complete rate hypothesis: R[t] for t = 1..T+1 and, per date, which agent
// (if any) absorbs residual market clearing at a rate equal to its own
// productivity. -1 means the rate is interior and clearing holds by
// construction of R.
struct RatePlan {
  std::vector<double> R;      // size T+2, R[t] valid for t = 1..T+1
  std::vector<int> residual;  // size T+1
};

// Forward simulation shared by every constructor. Date-t portfolios are read
// off R[t+1]: agents with A_{i,t+1} above the rate lever to their credit
// limit, agents below lend everything, and the designated residual agent
// absorbs whatever capital remains.
EquilibriumPath simulate_given_rates(const DynamicEconomy& econ,
                                     const RatePlan& plan, int T) {
  const int m = static_cast<int>(econ.agents.size());
  EquilibriumPath path;
  path.T = T;
  path.R = plan.R;
  path.Y.assign(T + 1, 0.0);
  path.agents.resize(m);
  for (int i = 0; i < m; ++i) {
    path.agents[i].id = econ.agents[i].id;
    path.agents[i].k.assign(T + 1, 0.0);
    path.agents[i].b.assign(T + 1, 0.0);
    path.agents[i].c.assign(T + 1, 0.0);
    path.agents[i].s.assign(T + 1, 0.0);
  }

  for (int t = 0; t <= T; ++t) {
    // Wealth update: date-0 endowments, afterwards realized cash-on-hand.
    if (t == 0) {
      for (int i = 0; i < m; ++i) {
        path.agents[i].c[0] = (1.0 - econ.agents[i].beta) * econ.agents[i].w0;
        path.agents[i].s[0] = econ.agents[i].s0();
      }
    } else {
      double y = 0;
      for (int i = 0; i < m; ++i) {
        const auto& ag = econ.agents[i];
        auto& p = path.agents[i];
        // A*k - R*b with b = k - s cancels catastrophically once k >> s
        // (the residual producer's own savings can shrink while its borrowed
        // capital grows); the equivalent (A-R)*k + R*s form is stable.
        const double cash = (ag.A_at(t) - path.R[t]) * p.k[t - 1] +
                            path.R[t] * p.s[t - 1];
        if (!(cash > 0))
          throw numerical_error("simulate: non-positive cash-on-hand at t=" +
                                std::to_string(t));
        p.c[t] = (1.0 - ag.beta) * cash;
        p.s[t] = ag.beta * cash;
        y += ag.A_at(t) * p.k[t - 1];
      }
      path.Y[t] = y;
    }

    // Date-t portfolios against the t+1 rate.
    const double Rn = path.R[t + 1];
    const int res = plan.residual[t];
    double total_s = 0, k_others = 0;
    for (int i = 0; i < m; ++i) total_s += path.agents[i].s[t];
    for (int i = 0; i < m; ++i) {
      if (i == res) continue;
      const auto& ag = econ.agents[i];
      auto& p = path.agents[i];
      const double A = ag.A_at(t + 1);
      if (A > Rn) {
        const double den = Rn - ag.gamma * A;
        if (!(den > 0))
          throw numerical_error("simulate: rate at or below a leverage cutoff");
        p.k[t] = Rn * p.s[t] / den;
        p.b[t] = p.k[t] - p.s[t];
      } else if (A < Rn) {
        p.k[t] = 0.0;
        p.b[t] = -p.s[t];
      } else {
        throw numerical_error(
            "simulate: rate equals a productivity without a residual "
            "designation");
      }
      k_others += p.k[t];
    }
    if (res >= 0) {
      auto& p = path.agents[res];
      p.k[t] = total_s - k_others;
      p.b[t] = p.k[t] - p.s[t];
    }
  }
  return path;
}

std::string agent_tag(const DynamicEconomy& econ, int i) {
  return std::to_string(econ.agents[i].id);
}

}  // namespace

FrictionlessPath frictionless_path(const DynamicEconomy& econ, int T) {
  const int m = static_cast<int>(econ.agents.size());
  if (m == 0) throw std::invalid_argument("frictionless_path: empty economy");
  RatePlan plan;
  plan.R.assign(T + 2, 0.0);
  plan.residual.assign(T + 1, m - 1);
  for (int t = 1; t <= T + 1; ++t) plan.R[t] = econ.agents[m - 1].A_at(t);
  FrictionlessPath out;
  out.path = simulate_given_rates(econ, plan, T);
  out.path.hypothesis = "no credit constraints, all capital with agent " +
                        agent_tag(econ, m - 1);
  out.path.hypo_h = m - 1;
  out.path.R1 = plan.R[1];
  out.Y.assign(T + 1, 0.0);
  out.G.assign(T + 1, 0.0);
  for (int t = 1; t <= T; ++t) out.Y[t] = out.path.Y[t];
  for (int t = 2; t <= T; ++t) out.G[t] = out.Y[t] / out.Y[t - 1];
  return out;
}

ConditionCheck check_conditions_Ah(const DynamicEconomy& econ, int h, int T) {
  const int m = static_cast<int>(econ.agents.size());
  if (h < 0 || h >= m)
    throw std::invalid_argument("check_conditions_Ah: bad residual index");
  ConditionCheck chk;
  chk.ok = true;

  // beta_i^t s_{i,0} for i <= h and beta_j^t * prod_{tau<=t} of the leveraged
  // pass-through factor for j > h, maintained incrementally.
  std::vector<double> disc(m), lever(m, 0.0);
  for (int i = 0; i < m; ++i) disc[i] = econ.agents[i].s0();
  for (int j = h + 1; j < m; ++j) lever[j] = econ.agents[j].s0();

  for (int t = 0; t <= T; ++t) {
    if (t > 0) {
      const double Ah = econ.agents[h].A_at(t);
      for (int i = 0; i < m; ++i) disc[i] *= econ.agents[i].beta;
      for (int j = h + 1; j < m; ++j) {
        const auto& ag = econ.agents[j];
        lever[j] *= ag.beta * (1.0 - ag.gamma) * ag.A_at(t) /
                    (Ah - ag.gamma * ag.A_at(t));
      }
    }
    const double Ah1 = econ.agents[h].A_at(t + 1);
    double mid = 0, scale = 0;
    for (int i = 0; i <= h; ++i) {
      mid += disc[i];
      scale += disc[i];
    }
    for (int j = h + 1; j < m; ++j) {
      const auto& ag = econ.agents[j];
      const double gA = ag.gamma * ag.A_at(t + 1);
      const double term = gA / (Ah1 - gA) * lever[j];
      mid -= term;
      scale += std::fabs(term);
    }
    const double lhs = disc[h] / (1.0 - econ.agents[h].gamma);
    const double eps = 1e-12 * (scale + lhs) + 1e-300;
    if (!(mid >= -eps) || !(lhs >= mid - eps)) {
      chk.ok = false;
      chk.first_fail = t;
      std::ostringstream os;
      os << "residual-capital bound fails at t=" << t << " (lhs=" << lhs
         << ", mid=" << mid << ")";
      chk.detail = os.str();
      break;
    }
  }

  if (stationary(econ)) {
    const double bh = econ.agents[h].beta;
    double bmax_below = 0;
    for (int i = 0; i <= h; ++i) bmax_below = std::max(bmax_below, econ.agents[i].beta);
    double qmax = 0;
    const double Ah = econ.agents[h].A_at(1);
    for (int j = h + 1; j < m; ++j) {
      const auto& ag = econ.agents[j];
      qmax = std::max(qmax, ag.beta * (1.0 - ag.gamma) * ag.A_at(1) /
                                (Ah - ag.gamma * ag.A_at(1)));
    }
    chk.dominance = bh >= bmax_below - 1e-15 && bh > qmax;
  }
  if (chk.ok && chk.detail.empty() && !chk.dominance)
    chk.detail = "finite horizon only; tail not settled by dominance";
  return chk;
}

EquilibriumPath construct_path_Ah(const DynamicEconomy& econ, int h, int T) {
  const auto chk = check_conditions_Ah(econ, h, T);
  if (!chk.ok)
    throw numerical_error("construct_path_Ah: " + chk.detail);
  const int m = static_cast<int>(econ.agents.size());
  RatePlan plan;
  plan.R.assign(T + 2, 0.0);
  plan.residual.assign(T + 1, h);
  for (int t = 1; t <= T + 1; ++t) plan.R[t] = econ.agents[h].A_at(t);
  auto path = simulate_given_rates(econ, plan, T);
  path.hypothesis =
      "constant rate at the productivity of agent " + agent_tag(econ, h) +
      (h == m - 1 ? " (coincides with the frictionless path)" : "");
  path.hypo_n = h;
  path.hypo_h = h;
  path.R1 = plan.R[1];
  return path;
}

EquilibriumPath construct_path_interior_then_Ah(const DynamicEconomy& econ,
                                                int n, int h, int T) {
  require_stationary(econ, "construct_path_interior_then_Ah");
  const int m = static_cast<int>(econ.agents.size());
  if (!(n >= 1 && n <= h && h <= m - 1))
    throw std::invalid_argument(
        "construct_path_interior_then_Ah: need 1 <= n <= h <= m-1");

  double L = 0;  // lenders' date-0 savings
  for (int i = 0; i < n; ++i) L += econ.agents[i].s0();
  auto borrowed = [&](double R) {
    double d = 0;
    for (int j = n; j < m; ++j) {
      const auto& ag = econ.agents[j];
      const double gA = ag.gamma * ag.A_at(1);
      d += gA / (R - gA) * ag.s0();
    }
    return d;
  };
  const double An = econ.agents[n].A_at(1);
  const double An1 = econ.agents[n - 1].A_at(1);
  if (!(borrowed(An) < L) || !(L < borrowed(An1)))
    throw numerical_error(
        "construct_path_interior_then_Ah: date-0 rate not bracketed in "
        "(A_{n-1}, A_n)");
  double R1 = bisect([&](double R) { return borrowed(R) - L; }, An1, An);
  if (n == m - 1) {
    // Single date-0 borrower: closed form, cross-checked against the root.
    const auto& am = econ.agents[m - 1];
    const double R1c = am.gamma * am.A_at(1) * econ.S0() / (econ.S0() - am.s0());
    if (std::fabs(R1 - R1c) > 1e-9 * R1c)
      throw std::logic_error(
          "construct_path_interior_then_Ah: closed form disagrees with root");
    R1 = R1c;
  }

  // Residual-capital bounds for agent h from date 1 on, in units of
  // A_h^{t-1} R_1 so every term stays O(beta^t).
  const double Ah = econ.agents[h].A_at(1);
  std::vector<double> disc(m);
  for (int i = 0; i < m; ++i) disc[i] = econ.agents[i].s0();
  for (int t = 1; t <= T; ++t) {
    double knorm = 0, scale = 0;
    for (int i = 0; i < m; ++i) {
      if (i > h) {
        const auto& ag = econ.agents[i];
        disc[i] *= ag.beta * (1.0 - ag.gamma) * ag.A_at(1) /
                   (Ah - ag.gamma * ag.A_at(1));
      } else {
        disc[i] *= econ.agents[i].beta;
      }
      double term;
      const auto& ag = econ.agents[i];
      const double gA = ag.gamma * ag.A_at(1);
      if (i < n)
        term = disc[i];
      else if (i <= h)
        term = disc[i] * (1.0 - ag.gamma) * ag.A_at(1) / (R1 - gA);
      else
        term = -disc[i] * gA / (R1 - gA);
      knorm += term;
      scale += std::fabs(term);
    }
    const auto& ah = econ.agents[h];
    const double cap = disc[h] * Ah / (R1 - ah.gamma * ah.A_at(1));
    const double eps = 1e-12 * (scale + cap) + 1e-300;
    if (!(knorm >= -eps) || !(knorm <= cap + eps))
      throw numerical_error(
          "construct_path_interior_then_Ah: residual-capital bound fails at "
          "t=" +
          std::to_string(t));
  }

  RatePlan plan;
  plan.R.assign(T + 2, 0.0);
  plan.residual.assign(T + 1, h);
  plan.R[1] = R1;
  plan.residual[0] = -1;
  for (int t = 2; t <= T + 1; ++t) plan.R[t] = econ.agents[h].A_at(t);
  auto path = simulate_given_rates(econ, plan, T);
  path.hypothesis = "interior date-1 rate (borrowers are agents >= " +
                    agent_tag(econ, n) + "), then the productivity of agent " +
                    agent_tag(econ, h);
  path.hypo_n = n;
  path.hypo_h = h;
  path.R1 = R1;
  return path;
}

EquilibriumPath construct_path_m1mh(const DynamicEconomy& econ, int h, int T) {
  require_stationary(econ, "construct_path_m1mh");
  const int m = static_cast<int>(econ.agents.size());
  if (m < 2 || h < 0 || h > m - 2)
    throw std::invalid_argument("construct_path_m1mh: need 0 <= h <= m-2");
  const auto& am = econ.agents[m - 1];
  const double others = econ.S0() - am.s0();
  const double R1 = am.gamma * am.A_at(1) * econ.S0() / others;
  if (!(R1 > econ.agents[m - 2].A_at(1)) || !(R1 < am.A_at(1)))
    throw numerical_error(
        "construct_path_m1mh: date-0 rate not in (A_{m-1}, A_m)");

  const double Ah = econ.agents[h].A_at(1);
  std::vector<double> disc(m);
  for (int i = 0; i < m; ++i) disc[i] = econ.agents[i].s0();
  double qm_pow = 1.0;
  const double qm = am.beta * (1.0 - am.gamma) * am.A_at(1) /
                    (Ah - am.gamma * am.A_at(1));
  for (int t = 1; t <= T; ++t) {
    for (int i = 0; i < m; ++i) disc[i] *= econ.agents[i].beta;
    qm_pow *= qm;
    double mid = 0, scale = 0;
    for (int i = 0; i <= h; ++i) {
      mid += disc[i];
      scale += disc[i];
    }
    for (int j = h + 1; j < m - 1; ++j) {
      const auto& ag = econ.agents[j];
      const double gA = ag.gamma * ag.A_at(1);
      const double q = ag.beta * (1.0 - ag.gamma) * ag.A_at(1) / (Ah - gA);
      const double term =
          gA / (Ah - gA) * std::pow(q, t - 1) * ag.beta * ag.s0();
      mid -= term;
      scale += std::fabs(term);
    }
    {
      const double term = qm_pow * others;
      mid -= term;
      scale += term;
    }
    const double lhs = disc[h] / (1.0 - econ.agents[h].gamma);
    const double eps = 1e-12 * (scale + lhs) + 1e-300;
    if (!(mid >= -eps) || !(lhs >= mid - eps))
      throw numerical_error(
          "construct_path_m1mh: residual-capital bound fails at t=" +
          std::to_string(t));
  }

  RatePlan plan;
  plan.R.assign(T + 2, 0.0);
  plan.residual.assign(T + 1, h);
  plan.R[1] = R1;
  plan.residual[0] = -1;
  for (int t = 2; t <= T + 1; ++t) plan.R[t] = econ.agents[h].A_at(t);
  auto path = simulate_given_rates(econ, plan, T);
  path.hypothesis =
      "only agent " + agent_tag(econ, m - 1) +
      " produces at date 1, then rate at the productivity of agent " +
      agent_tag(econ, h);
  path.hypo_n = m - 1;
  path.hypo_h = h;
  path.R1 = R1;
  return path;
}

EquilibriumPath construct_path_interior_all(const DynamicEconomy& econ, int T) {
  const int m = static_cast<int>(econ.agents.size());
  if (m < 2)
    throw std::invalid_argument("construct_path_interior_all: need m >= 2");
  const auto& am = econ.agents[m - 1];
  double L = 0;
  for (int i = 0; i < m - 1; ++i) L += econ.agents[i].s0();
  const double frac = am.gamma * econ.S0() / L;
  if (!(econ.agents[m - 2].A_at(1) / am.A_at(1) < frac) || !(frac < 1.0))
    throw numerical_error(
        "construct_path_interior_all: date-0 rate not in (A_{m-1}, A_m)");

  RatePlan plan;
  plan.R.assign(T + 2, 0.0);
  plan.residual.assign(T + 1, -1);
  plan.R[1] = frac * am.A_at(1);
  double num = L;  // sum_{i<m} beta_i^{t-1} s_{i,0}
  std::vector<double> disc(m - 1);
  for (int i = 0; i < m - 1; ++i) disc[i] = econ.agents[i].s0();
  for (int t = 1; t <= T + 1; ++t) {
    double den = 0;
    for (int i = 0; i < m - 1; ++i) {
      disc[i] *= econ.agents[i].beta;
      den += disc[i];
    }
    const double ratio = am.beta * num / den;
    if (!(ratio < 1.0))
      throw numerical_error(
          "construct_path_interior_all: rate would reach A_m at t=" +
          std::to_string(t + 1));
    const double share = am.gamma + (1.0 - am.gamma) * ratio;
    if (!(econ.agents[m - 2].A_at(t + 1) / am.A_at(t + 1) < share))
      throw numerical_error(
          "construct_path_interior_all: rate would fall to A_{m-1} at t=" +
          std::to_string(t + 1));
    plan.R[t + 1] = am.A_at(t + 1) * share;
    num = den;
  }
  auto path = simulate_given_rates(econ, plan, T);
  path.hypothesis = "interior rate at every date, only agent " +
                    agent_tag(econ, m - 1) + " produces";
  path.hypo_n = m - 1;
  path.hypo_h = -1;
  path.R1 = plan.R[1];
  return path;
}

AutoResult auto_construct(const DynamicEconomy& econ, int T) {
  const auto problems = validate_dynamic_economy(econ, T);
  if (!problems.empty())
    throw std::invalid_argument("auto_construct: " + problems.front());
  const int m = static_cast<int>(econ.agents.size());
  AutoResult result;

  auto attempt = [&](const std::string& name, auto&& build) -> bool {
    try {
      EquilibriumPath cand = build();
      const auto rep = verify_path(econ, cand);
      if (rep.pass) {
        result.path = std::move(cand);
        return true;
      }
      result.rejected.push_back(name + ": verification fails at t=" +
                                std::to_string(rep.first_fail_t) + " (" +
                                rep.first_fail_what + ")");
    } catch (const numerical_error& ex) {
      result.rejected.push_back(name + ": " + ex.what());
    }
    return false;
  };

  for (int h = m - 1; h >= 0; --h) {
    if (attempt("rate at A_" + agent_tag(econ, h),
                [&] { return construct_path_Ah(econ, h, T); }))
      return result;
  }
  if (stationary(econ)) {
    for (int h = m - 1; h >= 1; --h)
      for (int n = h; n >= 1; --n) {
        if (attempt("interior then A_" + agent_tag(econ, h) +
                        " (borrowers >= " + agent_tag(econ, n) + ")",
                    [&] { return construct_path_interior_then_Ah(econ, n, h, T); }))
          return result;
      }
    for (int h = m - 2; h >= 0; --h) {
      if (attempt("single producer then A_" + agent_tag(econ, h),
                  [&] { return construct_path_m1mh(econ, h, T); }))
        return result;
    }
  }
  if (m >= 2 && attempt("interior at every date",
                        [&] { return construct_path_interior_all(econ, T); }))
    return result;

  std::string msg = "auto_construct: no hypothesis produced a verified path";
  for (const auto& r : result.rejected) msg += "\n  " + r;
  throw numerical_error(msg);
}

VerificationReport verify_path(const DynamicEconomy& econ,
                               const EquilibriumPath& path, double tol,
                               double tvc_tol) {
  const int m = static_cast<int>(econ.agents.size());
  const int T = path.T;
  VerificationReport rep;
  if (static_cast<int>(path.agents.size()) != m ||
      static_cast<int>(path.R.size()) < T + 2)
    throw std::invalid_argument("verify_path: path does not match economy");

  bool failed = false;
  auto fail = [&](int t, const std::string& what) {
    if (!failed) {
      failed = true;
      rep.first_fail_t = t;
      rep.first_fail_what = what;
    }
  };
  auto track = [](double& slot, double v) { slot = std::max(slot, v); };

  for (int t = 0; t <= T && !failed; ++t) {
    double total_k = 0, total_s = 0, sum_b = 0, sum_abs_b = 0;
    for (int i = 0; i < m; ++i) {
      total_k += path.agents[i].k[t];
      total_s += path.agents[i].s[t];
      sum_b += path.agents[i].b[t];
      sum_abs_b += std::fabs(path.agents[i].b[t]);
    }
    const double k_scale = std::max(total_s, 1e-300);

    for (int i = 0; i < m && !failed; ++i) {
      const auto& ag = econ.agents[i];
      const auto& p = path.agents[i];
      const double A1 = ag.A_at(t + 1);
      const double Rn = path.R[t + 1];

      if (!(p.c[t] > 0)) fail(t, "non-positive consumption, agent " + std::to_string(ag.id));

      // Budget identity.
      if (t == 0) {
        const double resid =
            std::fabs(p.c[0] + p.k[0] - p.b[0] - ag.w0) / std::max(ag.w0, 1.0);
        track(rep.max_budget, resid);
        if (resid > tol) fail(t, "budget, agent " + std::to_string(ag.id));
      } else {
        // Stable form of A*k - R*b (b = k - s cancels once k >> s); the
        // portfolio identity below supplies the substituted equation.
        const double cash = (ag.A_at(t) - path.R[t]) * p.k[t - 1] +
                            path.R[t] * p.s[t - 1];
        const double resid = std::fabs(p.c[t] + p.s[t] - cash) /
                             std::max(std::fabs(cash), 1e-300);
        track(rep.max_budget, resid);
        if (resid > tol) fail(t, "budget, agent " + std::to_string(ag.id));
      }
      const double identity =
          std::fabs(p.k[t] - p.s[t] - p.b[t]) /
          std::max({std::fabs(p.k[t]), p.s[t], std::fabs(p.b[t]), 1e-300});
      track(rep.max_budget, identity);
      if (identity > tol)
        fail(t, "portfolio identity, agent " + std::to_string(ag.id));

      // Capital nonnegativity and the borrowing constraint at the t+1 rate.
      const double k_neg = -p.k[t] / k_scale;
      track(rep.max_k_neg, k_neg);
      if (k_neg > tol) fail(t, "negative capital, agent " + std::to_string(ag.id));
      const double gAk = ag.gamma * A1 * p.k[t];
      const double Rb = Rn * p.b[t];
      const double con_scale =
          std::max(1e-300, gAk + std::fabs(Rb) + Rn * p.s[t]);
      const double viol = (Rb - gAk) / con_scale;
      track(rep.max_constraint, viol);
      if (viol > tol)
        fail(t, "borrowing constraint, agent " + std::to_string(ag.id));

      // First-order conditions via recovered multipliers, all relative to
      // lambda_{i,t} so geometric growth cancels.
      if (t < T && !failed) {
        const double g = ag.beta * p.c[t] / p.c[t + 1];
        const double mu_rel = 1.0 - Rn * g;  // mu_{t+1} / (lambda_t / R)
        track(rep.max_mu_neg, -mu_rel);
        if (-mu_rel > tol) fail(t, "bond FOC, agent " + std::to_string(ag.id));
        const double eta_rel =
            1.0 - A1 * ((1.0 - ag.gamma) * g + ag.gamma / Rn);
        track(rep.max_eta_neg, -eta_rel);
        if (-eta_rel > tol)
          fail(t, "capital FOC, agent " + std::to_string(ag.id));
        const double eta_comp = std::fabs(eta_rel) * p.k[t] / k_scale;
        track(rep.max_eta_comp, eta_comp);
        if (eta_comp > tol)
          fail(t, "capital complementarity, agent " + std::to_string(ag.id));
        const double mu_comp = std::fabs(mu_rel) * (gAk - Rb) / con_scale;
        track(rep.max_mu_comp, mu_comp);
        if (mu_comp > tol)
          fail(t, "constraint complementarity, agent " + std::to_string(ag.id));
      }
    }

    const double market =
        std::fabs(sum_b) / std::max(sum_abs_b + total_s, 1e-300);
    track(rep.max_market, market);
    if (market > tol) fail(t, "bond market clearing");
  }

  // Transversality proxy, extrapolated geometrically from the measured tail
  // decay ratio to a fixed certification horizon T + 5000.
  if (!failed && T >= 1) {
    const double horizon = 5000.0;
    for (int i = 0; i < m; ++i) {
      const auto& ag = econ.agents[i];
      const auto& p = path.agents[i];
      const double raw =
          std::pow(ag.beta, T) * (p.k[T] - p.b[T]) / p.c[T];
      track(rep.tvc_raw, raw);
      const double prevv = (p.k[T - 1] - p.b[T - 1]) / p.c[T - 1];
      const double q = prevv > 0 ? ag.beta * ((p.k[T] - p.b[T]) / p.c[T]) / prevv
                                 : ag.beta;
      double ext = raw;
      if (raw > 0 && q > 0 && q < 1)
        ext = std::exp(std::log(raw) + horizon * std::log(q));
      track(rep.tvc_proxy, ext);
    }
    if (rep.tvc_proxy > tvc_tol) fail(T, "transversality proxy");
  }

  rep.pass = !failed;
  return rep;
}

double dYt_dGamma_analytic(const DynamicEconomy& econ,
                           const EquilibriumPath& path, int v, int t) {
  require_stationary(econ, "dYt_dGamma_analytic");
  const int m = static_cast<int>(econ.agents.size());
  const int n = path.hypo_n, h = path.hypo_h;
  if (!(n >= 1 && n <= h && h <= m - 1))
    throw std::invalid_argument(
        "dYt_dGamma_analytic: path is not interior-then-A_h");
  if (t < 1 || t > path.T)
    throw std::invalid_argument("dYt_dGamma_analytic: date out of range");
  if (v < n) return 0.0;  // lenders' credit limits are inert
  const double R1 = path.R1;

  auto gA = [&](int j) { return econ.agents[j].gamma * econ.agents[j].A_at(1); };
  double denom = 0, num_y = 0;
  for (int j = n; j < m; ++j) {
    const double d = R1 - gA(j);
    denom += gA(j) * econ.agents[j].s0() / (d * d);
    num_y += gA(j) * econ.agents[j].A_at(1) * econ.agents[j].s0() / (d * d);
  }
  const double Av = econ.agents[v].A_at(1);
  const double dv = R1 - gA(v);
  const double dR1 = Av * R1 * econ.agents[v].s0() / (dv * dv) / denom;

  if (t == 1) return dR1 * (Av * denom - num_y);

  const int tt = t - 1;
  const double Ah = econ.agents[h].A_at(1);
  double core = 0;
  for (int i = 0; i < n; ++i)
    core += std::pow(econ.agents[i].beta, tt) * econ.agents[i].s0();
  for (int j = n; j < m; ++j) {
    const auto& ag = econ.agents[j];
    const double Aj = ag.A_at(1);
    const double d = R1 - gA(j);
    const double w = (1.0 - ag.gamma) * ag.gamma * Aj * Aj * ag.s0() / (d * d);
    const double base = j <= h ? ag.beta
                               : ag.beta * (1.0 - ag.gamma) * Aj /
                                     (Ah - ag.gamma * Aj);
    core -= std::pow(base, tt) * w;
  }
  double extra;
  if (v <= h) {
    extra = std::pow(econ.agents[v].beta, tt) * (Av - R1) * denom;
  } else {
    const double base = econ.agents[v].beta * (1.0 - econ.agents[v].gamma) *
                        Av / (Ah - gA(v));
    extra = std::pow(base, tt) *
            (tt * (R1 - gA(v)) * (Av - Ah) / (Ah - gA(v)) + (Av - R1)) * denom;
  }
  return std::pow(Ah, tt) * dR1 * (core + extra);
}

}  // namespace credeq
