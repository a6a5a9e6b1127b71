#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "ants/extremals.hpp"

using namespace ants;
using Cx = std::complex<double>;

namespace {

// Base-chart polynomial lifted to the doubled phase chart by variable name.
MultiPoly lift_to_phase(const MultiPoly& p, const ChartPtr& phase) {
  std::vector<RationalFn> bind;
  for (const auto& v : p.chart()->vars())
    bind.push_back(RationalFn::variable(phase, v));
  auto f = substitute(p, phase, bind);
  REQUIRE(f.is_polynomial());
  return f.num() * (Rational(1) / f.den().constant_value());
}

HamiltonianLift rule_b_lift() { return hamiltonian_lift(build_rule_b().Z); }

ExtremalTrajectory reference_extremal(double step, double duration = 1.0) {
  auto lift = rule_b_lift();
  RatVector q0{0, 0, 1, 0, 0, 1};
  auto lam = initial_covector(
      lift, q0, {Rational(1, 4), Rational(1, 4), Rational(-1, 2)});
  REQUIRE(lam.has_value());
  std::array<double, 6> q0d{0, 0, 1, 0, 0, 1}, l0d{};
  for (int k = 0; k < 6; ++k) l0d[k] = to_double((*lam)[k]);
  return integrate_extremal(lift, q0d, l0d, duration, step);
}

ReducedTrajectory reference_reduced() {
  ReducedState s0;
  s0.u1 = 1;
  s0.u2 = 1;
  s0.z1 = {1, 0};
  s0.z2 = {0, 1};
  // the solution from (1,1) escapes to infinity near t = 0.70
  return integrate_reduced(s0, 0.5, 1e-4);
}

std::array<double, 3> rk4_control(Rule rule, std::array<double, 3> u, double T,
                                  double step) {
  auto n = static_cast<std::size_t>(std::llround(T / step));
  for (std::size_t i = 0; i < n; ++i) {
    auto k1 = control_rhs(rule, u);
    std::array<double, 3> tmp;
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + 0.5 * step * k1[j];
    auto k2 = control_rhs(rule, tmp);
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + 0.5 * step * k2[j];
    auto k3 = control_rhs(rule, tmp);
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + step * k3[j];
    auto k4 = control_rhs(rule, tmp);
    for (int j = 0; j < 3; ++j)
      u[j] += step / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return u;
}

}  // namespace

TEST_CASE("hamiltonian lift of the rule-B fields") {
  auto lift = rule_b_lift();
  auto ph = lift.phase_chart;
  auto var = [&](const char* n) { return MultiPoly::variable(ph, n); };
  auto h1 = (var("x2") - var("x3")) * var("l1") +
            (var("y2") - var("y3")) * var("l2");
  CHECK(lift.h[0] == h1);

  // h_{ij} = <lambda, [Z_i, Z_j]>
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    auto br = lie_bracket(lift.Z[j], lift.Z[k]);
    MultiPoly pairing(ph);
    for (std::size_t m = 0; m < 6; ++m) {
      const auto& c = br.component(m);
      if (c.is_zero()) continue;
      REQUIRE(c.is_polynomial());
      pairing += lift_to_phase(c.num(), ph) *
                 MultiPoly::variable(ph, 6 + m) *
                 (Rational(1) / c.den().constant_value());
    }
    CHECK(lift.h_bracket[i] == pairing);
  }

  CHECK(poisson_bracket(lift.h[0], lift.h[0], 6).is_zero());
  CHECK(symbolic_h_conservation(lift));
}

TEST_CASE("control system right-hand sides") {
  auto b = control_rhs(Rule::B, {1, 1, -2});
  CHECK(b[0] == doctest::Approx(3).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(-3).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(0).epsilon(1e-15));
  auto a = control_rhs(Rule::A, {1, 0, 0});
  CHECK(a[0] == -1);
  CHECK(a[1] == 0);
  CHECK(a[2] == 0);
  auto z = control_rhs(Rule::B, {0, 0, 0});
  CHECK((z[0] == 0 && z[1] == 0 && z[2] == 0));
}

TEST_CASE("equilibrium covector gives a stationary extremal") {
  // d(32A) annihilates both the fields and their brackets, so u = 0.
  auto b = build_rule_b();
  auto lift = hamiltonian_lift(b.Z);
  RatVector q0{0, 0, 1, 0, 0, 1};
  auto dF = exterior_derivative(RationalFn(b.area32));
  ExtremalState s;
  s.q = {0, 0, 1, 0, 0, 1};
  for (std::uint32_t k = 0; k < 6; ++k)
    s.lam[k] = to_double(dF.coeff({k}).evaluate(q0));
  auto [qd, ld] = extremal_rhs(lift, s);
  for (int k = 0; k < 6; ++k) {
    CHECK(qd[k] == 0);
    CHECK(ld[k] == 0);
  }
}

TEST_CASE("invalid initial covector targets are rejected") {
  auto lift = rule_b_lift();
  RatVector q0{0, 0, 1, 0, 0, 1};
  // rule B requires u1+u2+u3 = 0
  CHECK_FALSE(initial_covector(lift, q0, {1, 1, 1}).has_value());
}

TEST_CASE("extremal monitors at the reference resolution") {
  auto traj = reference_extremal(1e-4);
  CHECK_FALSE(traj.flagged);
  CHECK(traj.max_h_drift < 1e-8);
  CHECK(traj.max_sum_u < 1e-12);
  CHECK(traj.max_prod_drift < 1e-8);
  CHECK(traj.max_bary_dd < 1e-8);

  // controls obey system (B)
  double maxres = 0;
  const auto& pts = traj.points;
  for (std::size_t i = 1; i + 1 < pts.size(); i += 97) {
    auto rhs = control_rhs(Rule::B, pts[i].u);
    for (int j = 0; j < 3; ++j)
      maxres = std::max(maxres, std::abs((pts[i + 1].u[j] - pts[i - 1].u[j]) /
                                             (2e-4) - rhs[j]));
  }
  CHECK(maxres < 1e-8);

  // the controls never change sign
  for (int j = 0; j < 3; ++j) {
    int s0 = pts.front().u[j] > 0 ? 1 : -1;
    for (const auto& p : pts) CHECK(p.u[j] * s0 > 0);
  }
}

TEST_CASE("step halving improves the drift by at least 8x") {
  auto coarse = reference_extremal(1e-2);
  auto fine = reference_extremal(5e-3);
  CHECK(fine.max_h_drift * 8 <= coarse.max_h_drift);
  CHECK(fine.max_prod_drift * 8 <= coarse.max_prod_drift);
}

TEST_CASE("cyclic permutation of u0 permutes the control trajectory") {
  std::array<double, 3> u0{0.25, 0.25, -0.5};
  std::array<double, 3> cyc{u0[1], u0[2], u0[0]};
  auto a = rk4_control(Rule::B, u0, 0.5, 1e-3);
  auto b = rk4_control(Rule::B, cyc, 0.5, 1e-3);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(b[j] - a[(j + 1) % 3]) < 1e-12);
}

TEST_CASE("trajectory CSV header") {
  auto traj = reference_extremal(1e-2, 0.05);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  auto text = os.str();
  CHECK(text.substr(0, text.find('\n')) ==
        "t,x1,y1,x2,y2,x3,y3,l1,l2,l3,l4,l5,l6,u1,u2,u3,inv_sum,inv_prod,"
        "bary_x,bary_y");
}

TEST_CASE("reduced system conservation and closed form") {
  auto traj = reference_reduced();
  CHECK_FALSE(traj.flagged);
  CHECK(traj.max_e_drift < 1e-8);
  CHECK(traj.max_c_drift < 1e-8);

  auto [z1, z2] = zeta_closed_form(traj, 0.5);
  const auto& last = traj.points.back();
  CHECK(std::abs(z1 - last.z1) < 1e-6);
  CHECK(std::abs(z2 - last.z2) < 1e-6);

  auto [w1, w2] = zeta_closed_form(traj, 0.0);
  CHECK(w1 == traj.points.front().z1);
  CHECK(w2 == traj.points.front().z2);
}

TEST_CASE("zero barycenter velocity keeps zeta proportional to u") {
  ReducedState s0;
  s0.u1 = 1;
  s0.u2 = 1;
  s0.z1 = {1, 0};
  s0.z2 = {1, 0};  // e = u1 z2 - u2 z1 = 0
  auto traj = integrate_reduced(s0, 0.5, 1e-4);
  for (std::size_t i = 0; i < traj.points.size(); i += 500) {
    const auto& p = traj.points[i];
    CHECK(std::abs(p.z1 - Cx(p.u1, 0)) < 1e-8);
  }
}

TEST_CASE("invariant axis u2 = 0") {
  ReducedState s0;
  s0.u1 = 1;
  s0.u2 = 0;
  s0.z1 = {1, 0};
  s0.z2 = {0, 1};
  auto traj = integrate_reduced(s0, 0.5, 1e-4, 1e-6);
  for (const auto& p : traj.points) CHECK(p.u2 == 0);
  // udot1 = u1^2 gives u1(t) = 1/(1-t)
  CHECK(std::abs(traj.points.back().u1 - 2.0) < 1e-6);
}

TEST_CASE("elliptic time quadrature inverts the ODE clock") {
  CHECK(elliptic_time(1.0, 1.0, 2.0) == 0);
  auto traj = reference_reduced();
  const auto& p = traj.points.at(1000);  // t = 0.1
  CHECK(std::abs(elliptic_time(p.u1, 1.0, 2.0) - p.t) < 1e-6);

  // udot1^2 = u1(u1^3 + 4c) with c = 2 along the trajectory
  double maxid = 0;
  for (std::size_t i = 0; i < traj.points.size(); i += 500) {
    double u1 = traj.points[i].u1, u2 = traj.points[i].u2;
    double ud = u1 * (u1 + 2 * u2);
    maxid = std::max(maxid, std::abs(ud * ud - u1 * (u1 * u1 * u1 + 8.0)));
  }
  CHECK(maxid < 1e-6);

  CHECK_THROWS_AS(elliptic_time(-1.0, 0.0, 2.0), std::domain_error);
}

TEST_CASE("symmetric reduction") {
  auto d = symmetric_reduction_rhs(2, 3, 5);
  CHECK(d[0] == 10);
  CHECK(d[1] == -15);
  CHECK(d[2] == 10);

  // constraint delta^2 = nu1^2 - 4 nu2 along a reduced trajectory
  auto traj = reference_reduced();
  for (std::size_t i = 0; i < traj.points.size(); i += 500) {
    double u1 = traj.points[i].u1, u2 = traj.points[i].u2;
    double nu1 = u1 + u2, nu2 = u1 * u2, delta = u1 - u2;
    CHECK(std::abs(delta * delta - nu1 * nu1 + 4 * nu2) < 1e-8);
  }

  // nu2 = 0, nu1 = delta collapses to nudot1 = nu1^2
  auto ax = symmetric_reduction_rhs(3, 0, 3);
  CHECK(ax[0] == 9);
  CHECK(ax[1] == 0);
}

TEST_CASE("nu1, nu2 are exponentials in the time s") {
  ReducedState a0;
  a0.u1 = 2;
  a0.u2 = 1;
  a0.z1 = {1, 0};
  a0.z2 = {0, 1};
  auto chain = integrate_reduced(a0, 0.25, 1e-4);
  // s(t) = int delta dt with delta = u1 - u2; c1 = nu1(0) = 3, c2 = nu2(0) = 2
  double s = 0, maxnu = 0;
  for (std::size_t i = 1; i < chain.points.size(); ++i) {
    double d0 = chain.points[i - 1].u1 - chain.points[i - 1].u2;
    double d1 = chain.points[i].u1 - chain.points[i].u2;
    s += 0.5e-4 * (d0 + d1);
    double nu1 = chain.points[i].u1 + chain.points[i].u2;
    double nu2 = chain.points[i].u1 * chain.points[i].u2;
    maxnu = std::max(maxnu, std::abs(nu1 - 3 * std::exp(s)));
    maxnu = std::max(maxnu, std::abs(nu2 - 2 * std::exp(-s)));
  }
  CHECK(maxnu < 1e-6);
}

TEST_CASE("fuchsian residue matrices") {
  auto m1 = fuchsian_matrix(1);
  CHECK(m1[0][0] == -1);
  CHECK(m1[0][1] == -1);
  CHECK(m1[1][0] == 0);
  CHECK(m1[1][1] == 1);
  auto m0 = fuchsian_matrix(0);
  CHECK(m0[0][0] == 0);
  CHECK(m0[0][1] == 1);
  CHECK(m0[1][0] == 1);
  CHECK(m0[1][1] == 0);
  auto m2 = fuchsian_matrix(-1);
  CHECK(m2[0][0] == 1);
  CHECK(m2[0][1] == 0);
  CHECK(m2[1][0] == -1);
  CHECK(m2[1][1] == -1);
  for (int pole : {-1, 0, 1}) {
    auto m = fuchsian_matrix(pole);
    CHECK(m[0][0] + m[1][1] == 0);
  }
  CHECK_THROWS_AS(fuchsian_matrix(2), std::invalid_argument);
}

TEST_CASE("fuchsian right-hand side at tau = 2") {
  FuchsianState s;
  s.tau = 2;
  s.psi = {Cx(1, 0), Cx(0, 0)};
  auto d = fuchsian_rhs(s);
  CHECK(std::abs(d[0] - Cx(-2.0 / 9.0, 0)) < 1e-15);
  CHECK(std::abs(d[1] - Cx(1.0 / 18.0, 0)) < 1e-15);
}

TEST_CASE("fuchsian integration refuses to cross a pole") {
  FuchsianState s;
  s.tau = 0.5;
  s.psi = {Cx(1, 0), Cx(0, 1)};
  CHECK_THROWS_AS(integrate_fuchsian(s, 1.5, 1e-3), std::domain_error);
}

TEST_CASE("fuchsian system matches the reduced system after time changes") {
  ReducedState a0;
  a0.u1 = 2;
  a0.u2 = 1;
  a0.z1 = {1, 0};
  a0.z2 = {0, 1};
  auto chain = integrate_reduced(a0, 0.25, 1e-4);
  const auto& p0 = chain.points.front();
  const auto& pN = chain.points.back();
  auto tau_of = [](const ReducedState& p) {
    return (p.u1 + p.u2) / (p.u1 - p.u2);
  };
  FuchsianState f0;
  f0.tau = tau_of(p0);
  f0.psi = {p0.z1, p0.z2};
  auto ft = integrate_fuchsian(f0, tau_of(pN), 1e-4);
  const auto& fend = ft.back();
  CHECK(std::abs(fend.psi[0] - pN.z1) < 1e-6);
  CHECK(std::abs(fend.psi[1] - pN.z2) < 1e-6);
}

TEST_CASE("fixed vertex branch") {
  auto rep = fixed_vertex_trajectory({Cx(0, 0), Cx(1, 0), Cx(0, 1)}, 0.5, 1.0,
                                     1e-4);
  CHECK(rep.max_fixed_vertex_motion < 1e-9);
  CHECK(rep.max_side_cross < 1e-8);
  CHECK(rep.max_area_drift < 1e-8);
  CHECK(rep.max_bisectrix_residual < 1e-6);
  // the second vertex literally never moves
  for (const auto& z : rep.z) CHECK(z[1] == Cx(1, 0));
}
