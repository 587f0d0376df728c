#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "credeq/ramsey.hpp"
#include "doctest.h"

using namespace credeq;

namespace {

DynamicEconomy two_agent(double A1 = 1.5) {
  DynamicEconomy e;
  e.agents = {{1, 0.99, 0.4, 200.0 / 0.99, {A1}},
              {2, 0.40, 0.4, 100.0 / 0.40, {2.25}}};
  return e;
}

DynamicEconomy two_agent_single_producer() {
  DynamicEconomy e;  // s0 = (1, 1); only agent 2 produces
  e.agents = {{1, 0.5, 0.2, 2.0, {1.0}}, {2, 0.9, 0.4, 1.0 / 0.9, {2.0}}};
  return e;
}

DynamicEconomy three_agent(double g2 = 0.3) {
  DynamicEconomy e;  // s0 = (4, 4, 3)
  e.agents = {{1, 0.20, 0.2, 4.0 / 0.20, {1.0}},
              {2, 0.20, g2, 4.0 / 0.20, {1.2}},
              {3, 0.95, 0.3, 3.0 / 0.95, {1.5}}};
  return e;
}

DynamicEconomy single_producer_then_switch() {
  DynamicEconomy e;  // s0 = (2.8, 0.2, 6.5); patient low-productivity agent
  e.agents = {{1, 0.95, 0.2, 2.8 / 0.95, {1.0}},
              {2, 0.30, 0.2, 0.2 / 0.30, {1.2}},
              {3, 0.40, 0.3, 6.5 / 0.40, {1.5}}};
  return e;
}

DynamicEconomy interior_forever() {
  DynamicEconomy e;  // s0 = (1.2, 0.8)
  e.agents = {{1, 0.9, 0.3, 1.2 / 0.9, {1.0}}, {2, 0.5, 0.5, 0.8 / 0.5, {1.5}}};
  return e;
}

double fd_Y(const DynamicEconomy& base, int agent, int t, double h,
            int horizon = 20) {
  DynamicEconomy lo = base, hi = base;
  lo.agents[agent].gamma -= h;
  hi.agents[agent].gamma += h;
  const auto plo = auto_construct(lo, horizon).path;
  const auto phi = auto_construct(hi, horizon).path;
  return (phi.Y[t] - plo.Y[t]) / (2.0 * h);
}

}  // namespace

TEST_CASE("steady-state rate is the reciprocal of the highest patience") {
  DynamicEconomy e;
  e.agents = {{1, 0.95, 0.3, 1.0, {1.0}}, {2, 0.9, 0.3, 1.0, {2.0}}};
  CHECK(steady_state_rate(e) == doctest::Approx(1.0 / 0.95).epsilon(1e-12));
  DynamicEconomy single;
  single.agents = {{1, 0.5, 0.3, 1.0, {1.0}}};
  CHECK(steady_state_rate(single) == doctest::Approx(2.0));
  e.agents.push_back({3, 0.1, 0.3, 1.0, {3.0}});
  CHECK(steady_state_rate(e) == doctest::Approx(1.0 / 0.95).epsilon(1e-12));
}

TEST_CASE("dynamic validation enforces ordering and the leverage cutoff") {
  DynamicEconomy e;
  e.agents = {{1, 0.9, 0.3, 1.0, {2.0}}, {2, 0.5, 0.3, 1.0, {1.0}}};
  CHECK(!validate_dynamic_economy(e, 10).empty());
  DynamicEconomy f;
  f.agents = {{1, 0.9, 0.3, 1.0, {1.0}}, {2, 0.5, 0.9, 1.0, {2.0}}};
  CHECK(!validate_dynamic_economy(f, 10).empty());  // gamma*A = 1.8 > A_1
  CHECK(validate_dynamic_economy(two_agent(), 10).empty());
}

TEST_CASE("single-agent frictionless output follows the closed form") {
  DynamicEconomy e;
  e.agents = {{1, 0.5, 0.3, 1.0, {2.0}}};
  const auto fr = frictionless_path(e, 50);
  // Y*_t = A^t * beta^(t-1) * s0 = 2^t * 0.5^(t-1) * 0.5 = 1 for every t.
  for (int t = 1; t <= 50; ++t) CHECK(fr.Y[t] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frictionless growth approaches A_m times the highest patience") {
  const auto fr = frictionless_path(two_agent(), 200);
  CHECK(std::fabs(fr.G[200] - 2.25 * 0.99) < 1e-6);
}

TEST_CASE("constant-rate construction reproduces the benchmark output") {
  const auto e = two_agent();
  const auto chk = check_conditions_Ah(e, 0, 200);
  CHECK(chk.ok);
  CHECK(chk.dominance);  // 0.4*0.6*2.25/(1.5-0.9) = 0.9 < 0.99
  const auto p = construct_path_Ah(e, 0, 200);
  CHECK(p.Y[1] == doctest::Approx(637.5).epsilon(1e-12));
  const auto p2 = construct_path_Ah(two_agent(1.53), 0, 10);
  CHECK(p2.Y[1] == doctest::Approx(633.857).epsilon(1e-4));
  CHECK(p2.Y[1] < p.Y[1]);
}

TEST_CASE("constant-rate growth converges to beta_h * A_h") {
  const auto p = construct_path_Ah(two_agent(), 0, 300);
  const double G = p.Y[300] / p.Y[299];
  CHECK(std::fabs(G - 0.99 * 1.5) < 1e-6);
}

TEST_CASE("condition check reports the first failing period") {
  DynamicEconomy e = two_agent();
  e.agents[0].beta = 0.3;  // impatient residual: the bound must break
  const auto chk = check_conditions_Ah(e, 0, 100);
  CHECK(!chk.ok);
  CHECK(chk.first_fail >= 0);
  CHECK_THROWS_AS(construct_path_Ah(e, 0, 100), numerical_error);
}

TEST_CASE("interior-then-constant path matches the single-producer closed forms") {
  const auto e = two_agent_single_producer();
  const auto p = construct_path_interior_then_Ah(e, 1, 1, 200);
  CHECK(p.R1 == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(p.Y[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(p.Y[2] == doctest::Approx(5.92).epsilon(1e-12));
  const auto rep = verify_path(e, p);
  CHECK(rep.pass);
  // Long-run growth coincides with the frictionless rate beta_m * A_m; the
  // level gap is a constant factor set by the date-0 transition.
  const auto fr = frictionless_path(e, 200);
  CHECK(p.Y[200] / p.Y[199] == doctest::Approx(0.9 * 2.0).epsilon(1e-9));
  CHECK(p.Y[200] / p.Y[199] ==
        doctest::Approx(fr.Y[200] / fr.Y[199]).epsilon(1e-9));
}

TEST_CASE("raising the top credit limit lowers later output in that regime") {
  const auto e = two_agent_single_producer();
  for (int t = 2; t <= 6; ++t) CHECK(fd_Y(e, 1, t, 1e-5) < 0);
  CHECK(fd_Y(e, 1, 1, 1e-5) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("closed-form credit-limit derivative matches finite differences") {
  const auto e = two_agent_single_producer();
  const auto p = construct_path_interior_then_Ah(e, 1, 1, 20);
  for (int t : {1, 2, 3, 7, 15}) {
    const double analytic = dYt_dGamma_analytic(e, p, 1, t);
    DynamicEconomy lo = e, hi = e;
    lo.agents[1].gamma -= 1e-6;
    hi.agents[1].gamma += 1e-6;
    const auto plo = construct_path_interior_then_Ah(lo, 1, 1, 20);
    const auto phi = construct_path_interior_then_Ah(hi, 1, 1, 20);
    const double fd = (phi.Y[t] - plo.Y[t]) / 2e-6;
    CHECK(analytic ==
          doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK(dYt_dGamma_analytic(e, p, 0, 3) == 0.0);
}

TEST_CASE("three-agent economy settles on an interior-then-constant path") {
  const auto result = auto_construct(three_agent(), 50);
  CHECK(result.path.hypo_n == 1);
  CHECK(result.path.hypo_h == 2);
  CHECK(result.path.R1 == doctest::Approx(1.103949).epsilon(1e-5));
  CHECK(!result.rejected.empty());
  CHECK(verify_path(three_agent(), result.path).pass);
}

TEST_CASE("single-producer start with a later switch to a patient agent") {
  const auto e = single_producer_then_switch();
  const auto p = construct_path_m1mh(e, 0, 100);
  // R_1 = gamma_m A_m S_0 / sum_{i != m} s_{i,0} = 0.45*9.5/3
  CHECK(p.R1 == doctest::Approx(0.45 * 9.5 / 3.0).epsilon(1e-12));
  CHECK(p.R[2] == doctest::Approx(1.0).epsilon(1e-12));
  // Only the most productive agent produces at date 0.
  CHECK(p.agents[2].k[0] == doctest::Approx(9.5).epsilon(1e-9));
  CHECK(p.agents[0].k[0] == doctest::Approx(0.0));
  CHECK(p.agents[1].k[0] == doctest::Approx(0.0));
  // All m - h + 1 = 3 agents hold capital from date 1 on.
  for (int i = 0; i < 3; ++i) CHECK(p.agents[i].k[1] > 0);
  CHECK(verify_path(e, p).pass);
  // Credit limits of the middle producers help later output.
  for (int t = 2; t <= 5; ++t) {
    DynamicEconomy lo = e, hi = e;
    lo.agents[1].gamma -= 1e-5;
    hi.agents[1].gamma += 1e-5;
    const auto plo = construct_path_m1mh(lo, 0, 10);
    const auto phi = construct_path_m1mh(hi, 0, 10);
    CHECK(phi.Y[t] > plo.Y[t]);
  }
}

TEST_CASE("permanently interior rates with the patient lender") {
  const auto e = interior_forever();
  const auto p = construct_path_interior_all(e, 400);
  CHECK(p.R1 == doctest::Approx(0.5 * 1.5 * 2.0 / 1.2).epsilon(1e-12));
  // Limit: A_m (gamma_m + (beta_m/beta_1)(1 - gamma_m))
  const double limit = 1.5 * (0.5 + (0.5 / 0.9) * 0.5);
  CHECK(std::fabs(p.R[401] - limit) < 1e-6);
  // k_{m,1} = A_m S_0 (gamma_m sum beta_i s_i / sum s_i + beta_m(1-gamma_m))
  const double km1 =
      1.5 * 2.0 * (0.5 * (0.9 * 1.2) / 1.2 + 0.5 * 0.5);
  CHECK(p.agents[1].k[1] == doctest::Approx(km1).epsilon(1e-9));
  CHECK(verify_path(e, p).pass);
  // Output rises with the producer's credit limit at every later date;
  // date-1 output A_m * S_0 is pinned by initial wealth.
  for (int t = 2; t <= 6; ++t) {
    DynamicEconomy lo = e, hi = e;
    lo.agents[1].gamma -= 1e-5;
    hi.agents[1].gamma += 1e-5;
    const auto plo = construct_path_interior_all(lo, 10);
    const auto phi = construct_path_interior_all(hi, 10);
    CHECK(phi.Y[t] > plo.Y[t]);
  }
  // The automatic search lands on this hypothesis too.
  const auto result = auto_construct(e, 100);
  CHECK(result.path.hypo_h == -1);
}

TEST_CASE("frictionless coincidence when the top agent can absorb everything") {
  DynamicEconomy e;
  e.agents = {{1, 0.40, 0.3, 1.0 / 0.40, {1.0}},
              {2, 0.95, 0.5, 2.0 / 0.95, {1.2}}};
  const auto result = auto_construct(e, 100);
  CHECK(result.path.hypo_h == 1);
  const auto fr = frictionless_path(e, 100);
  for (int t = 1; t <= 100; ++t)
    CHECK(result.path.Y[t] == doctest::Approx(fr.Y[t]).epsilon(1e-10));
}

TEST_CASE("single agent reduces to its own constant-rate path") {
  DynamicEconomy e;
  e.agents = {{1, 0.5, 0.3, 1.0, {2.0}}};
  const auto result = auto_construct(e, 100);
  CHECK(result.path.R[5] == doctest::Approx(2.0));
  CHECK(verify_path(e, result.path).pass);
}

TEST_CASE("verifier certifies constructor output and rejects corruption") {
  const auto e = three_agent();
  const auto p = auto_construct(e, 200).path;
  const auto rep = verify_path(e, p);
  CHECK(rep.pass);
  CHECK(rep.max_budget <= 1e-9);
  CHECK(rep.max_market <= 1e-9);
  CHECK(rep.tvc_proxy <= 1e-6);

  auto corrupt_b = p;
  corrupt_b.agents[1].b[37] *= 1.0 + 1e-3;
  const auto bad1 = verify_path(e, corrupt_b);
  CHECK(!bad1.pass);
  CHECK(bad1.first_fail_t >= 0);

  auto corrupt_k = p;
  corrupt_k.agents[2].k[150] *= 1.0 - 1e-3;
  CHECK(!verify_path(e, corrupt_k).pass);

  auto corrupt_c = p;
  corrupt_c.agents[0].c[5] *= 1.0 + 1e-3;
  CHECK(!verify_path(e, corrupt_c).pass);

  auto corrupt_R = p;
  corrupt_R.R[80] *= 1.0 + 1e-3;
  CHECK(!verify_path(e, corrupt_R).pass);
}

TEST_CASE("time-varying productivity paths are supported by the engine") {
  DynamicEconomy e = two_agent();
  e.agents[1].A_path = {2.25, 2.3, 2.4};  // settles at 2.4 from date 3
  const auto chk = check_conditions_Ah(e, 0, 50);
  if (chk.ok) {
    const auto p = construct_path_Ah(e, 0, 50);
    CHECK(verify_path(e, p).pass);
    CHECK(p.Y[1] == doctest::Approx(637.5).epsilon(1e-12));
    CHECK(p.Y[2] > 0);
  }
  CHECK(e.agents[1].A_at(1) == doctest::Approx(2.25));
  CHECK(e.agents[1].A_at(3) == doctest::Approx(2.4));
  CHECK(e.agents[1].A_at(40) == doctest::Approx(2.4));
}

TEST_CASE("productivity shock experiment signs") {
  const int T = 50;
  const auto base = auto_construct(two_agent(1.5), T).path;
  const auto small = auto_construct(two_agent(1.53), T).path;
  const auto large = auto_construct(two_agent(1.95), T).path;
  for (int t = 1; t <= 4; ++t) CHECK(small.Y[t] < base.Y[t]);
  for (int t = 5; t <= T; ++t) CHECK(small.Y[t] > base.Y[t]);
  for (int t = 1; t <= T; ++t) CHECK(large.Y[t] > base.Y[t]);
}

TEST_CASE("credit-limit experiment: looser credit lowers every period") {
  const int T = 50;
  const auto p30 = auto_construct(three_agent(0.30), T).path;
  const auto p35 = auto_construct(three_agent(0.35), T).path;
  for (int t = 1; t <= T; ++t) CHECK(p35.Y[t] < p30.Y[t]);
}
