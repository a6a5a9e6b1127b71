#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ants/models.hpp"

namespace ants {

/// Fiber-linear Hamiltonians of three fields on the doubled chart
/// (base variables, then l1..ln). h_bracket = (h23, h31, h12).
struct HamiltonianLift {
  ChartPtr phase_chart;
  std::size_t base_dim = 0;
  std::array<VectorField, 3> Z;  // on the base chart
  std::array<MultiPoly, 3> h;
  std::array<MultiPoly, 3> h_bracket;
};

HamiltonianLift hamiltonian_lift(const std::array<VectorField, 3>& fields);

/// {f,g} = sum_k (df/dl_k dg/dq_k - df/dq_k dg/dl_k) on a doubled chart.
MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g,
                          std::size_t base_dim);

/// d/dt h_i = sum_j u_j {h_j, h_i} with u = h_bracket vanishes identically.
bool symbolic_h_conservation(const HamiltonianLift& lift);

struct ExtremalState {
  double t = 0;
  std::array<double, 6> q{};
  std::array<double, 6> lam{};
};

struct ExtremalPoint {
  double t;
  std::array<double, 6> q, lam;
  std::array<double, 3> u;  // (h23, h31, h12)
};

struct MonitorConfig {
  double tol_h = 1e-8;
  double tol_sum = 1e-12;   // |u1+u2+u3|, exact identity for rule B lifts
  double tol_prod = 1e-8;   // drift of u1 u2 u3
  double tol_bary = 1e-8;   // barycenter second difference
};

struct ExtremalTrajectory {
  std::vector<ExtremalPoint> points;
  double max_h_drift = 0;
  double max_sum_u = 0;
  double max_prod_drift = 0;
  double max_bary_dd = 0;
  bool flagged = false;
  std::vector<std::string> breaches;
};

/// (qdot, lamdot) of the singular-extremal system at one state.
std::pair<std::array<double, 6>, std::array<double, 6>> extremal_rhs(
    const HamiltonianLift& lift, const ExtremalState& state);

/// Exact initial covector: solves h_i(q0, l) = 0 and h_bracket(q0, l) =
/// u_target over the rationals. nullopt when inconsistent (for rule B the
/// target must satisfy u1+u2+u3 = 0).
std::optional<RatVector> initial_covector(const HamiltonianLift& lift,
                                          const RatVector& q0,
                                          const std::array<Rational, 3>& u_target);

/// Classical fixed-step 4th-order integration with drift monitors.
ExtremalTrajectory integrate_extremal(const HamiltonianLift& lift,
                                      const std::array<double, 6>& q0,
                                      const std::array<double, 6>& lam0,
                                      double duration, double step,
                                      const MonitorConfig& cfg = {});

/// Decoupled control systems: (A) udot_i = -u_i(u_i + u_{i+1});
/// (B) udot_i = u_i(u_{i+1} - u_{i+2}).
std::array<double, 3> control_rhs(Rule rule, const std::array<double, 3>& u);

struct ReducedState {
  double t = 0;
  double u1 = 0, u2 = 0;
  std::complex<double> z1, z2;
};

struct ReducedTrajectory {
  std::vector<ReducedState> points;
  std::complex<double> e0;   // u1 z2 - u2 z1 at the start
  double c0 = 0;             // u1 u2 (u1 + u2) at the start
  double max_e_drift = 0;
  double max_c_drift = 0;
  bool flagged = false;
  std::vector<std::string> breaches;
};

ReducedTrajectory integrate_reduced(const ReducedState& s0, double duration,
                                    double step, double tol = 1e-8);

/// Quadrature evaluation of the closed-form solution
/// z_i(t) = (u_i(t)/u_i(0)) z_i(0) + u_i(t) e int_0^t ds/u_i(s)
/// over the stored trajectory grid. t must lie on the grid.
std::pair<std::complex<double>, std::complex<double>> zeta_closed_form(
    const ReducedTrajectory& traj, double t);

/// int_r^{u_target} dv / sqrt(v(v^3+4c)), adaptive to abs_tol; throws when
/// the integrand hits v(v^3+4c) <= 0.
double elliptic_time(double u_target, double r, double c,
                     double abs_tol = 1e-10);

/// (nu1dot, nu2dot, deltadot) = (delta nu1, -delta nu2, nu1^2 + 2 nu2);
/// the constraint delta^2 = nu1^2 - 4 nu2 is monitored by callers, not imposed.
std::array<double, 3> symmetric_reduction_rhs(double nu1, double nu2,
                                              double delta);

struct FuchsianState {
  double tau = 0;
  std::array<std::complex<double>, 2> psi{};
};

/// 3 dPsi/dtau = [M1/(tau-1) + M0/tau + M2/(1+tau)] Psi; poles {-1,0,1}.
std::array<std::complex<double>, 2> fuchsian_rhs(const FuchsianState& s);
std::array<std::array<Rational, 2>, 2> fuchsian_matrix(int pole);  // pole in {-1,0,1}

std::vector<FuchsianState> integrate_fuchsian(const FuchsianState& s0,
                                              double tau_end, double step);

struct FixedVertexReport {
  std::vector<double> times;
  std::vector<std::array<std::complex<double>, 3>> z;
  double max_fixed_vertex_motion = 0;
  double max_side_cross = 0;      // side z3 - z1 against its initial direction
  double max_area_drift = 0;
  double max_bisectrix_residual = 0;  // midpoint of z1 z3 against the fixed line
};

/// Full vertex system zdot_1 = u1(z2-z3), zdot_2 = u2(z3-z1),
/// zdot_3 = u3(z1-z2) on the u2 = 0 branch (u3 = -u1, udot_1 = u1^2).
FixedVertexReport fixed_vertex_trajectory(
    const std::array<std::complex<double>, 3>& z0, double u1_0,
    double duration, double step);

/// Header: t,x1,y1,x2,y2,x3,y3,l1,...,l6,u1,u2,u3,inv_sum,inv_prod,bary_x,bary_y
void write_trajectory_csv(std::ostream& os, const ExtremalTrajectory& traj);

}  // namespace ants
