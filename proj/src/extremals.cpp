#include "ants/extremals.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ants {

namespace {

// Re-key a base-chart polynomial on the doubled chart (same leading variables).
MultiPoly lift_poly(const MultiPoly& p, const ChartPtr& phase) {
  MultiPoly out(phase);
  for (const auto& [e, c] : p.terms()) {
    Exponents ext(phase->arity(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ext[i] = e[i];
    out.set_coeff(ext, c);
  }
  return out;
}

std::string fiber_name(std::size_t k) { return "l" + std::to_string(k + 1); }

double csv_num(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.17g", v);
  return v;
}

// Fourth-order one-step update for a flat double state.
template <typename Rhs>
void rk4_step(std::vector<double>& y, double h, const Rhs& rhs) {
  std::vector<double> k1 = rhs(y);
  std::vector<double> tmp(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  std::vector<double> k2 = rhs(tmp);
  for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  std::vector<double> k3 = rhs(tmp);
  for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * k3[i];
  std::vector<double> k4 = rhs(tmp);
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

// Cached numeric form of the extremal vector field.
struct ExtremalRhs {
  const HamiltonianLift& lift;
  // dh[i][k] = d h_i / d q_k on the phase chart.
  std::array<std::vector<MultiPoly>, 3> dh;

  explicit ExtremalRhs(const HamiltonianLift& l) : lift(l) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < lift.base_dim; ++k)
        dh[i].push_back(lift.h[i].derivative(k));
  }

  std::vector<double> operator()(const std::vector<double>& y) const {
    std::size_t n = lift.base_dim;
    std::vector<double> q(y.begin(), y.begin() + n);
    std::array<double, 3> u;
    for (std::size_t i = 0; i < 3; ++i) u[i] = lift.h_bracket[i].evaluate(y);
    std::vector<double> dy(2 * n, 0.0);
    // Orientation fixed so the induced control dynamics is the system (B)
    // d/dt h_jk = h_jk (h_kl - h_lj); the reverse orientation of the same
    // characteristic line field satisfies the time-reversed system.
    for (std::size_t i = 0; i < 3; ++i) {
      auto zi = lift.Z[i].evaluate(q);
      for (std::size_t k = 0; k < n; ++k) {
        dy[k] -= u[i] * zi[k];
        dy[n + k] += u[i] * dh[i][k].evaluate(y);
      }
    }
    return dy;
  }

  std::array<double, 3> controls(const std::vector<double>& y) const {
    return {lift.h_bracket[0].evaluate(y), lift.h_bracket[1].evaluate(y),
            lift.h_bracket[2].evaluate(y)};
  }
};

void note_breach(ExtremalTrajectory& tr, const std::string& what, double value,
                 double tol) {
  std::ostringstream os;
  os << what << " " << value << " exceeds " << tol;
  tr.flagged = true;
  tr.breaches.push_back(os.str());
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

using Cx = std::complex<double>;

}  // namespace

MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g,
                          std::size_t base_dim) {
  require_same_chart(f.chart(), g.chart(), "poisson_bracket");
  if (f.chart()->arity() != 2 * base_dim)
    throw std::invalid_argument("poisson_bracket: chart is not doubled");
  MultiPoly out(f.chart());
  for (std::size_t k = 0; k < base_dim; ++k)
    out += f.derivative(base_dim + k) * g.derivative(k) -
           f.derivative(k) * g.derivative(base_dim + k);
  return out;
}

HamiltonianLift hamiltonian_lift(const std::array<VectorField, 3>& fields) {
  const ChartPtr& base = fields[0].chart();
  require_same_chart(base, fields[1].chart(), "hamiltonian_lift");
  require_same_chart(base, fields[2].chart(), "hamiltonian_lift");
  std::size_t n = base->arity();
  std::vector<std::string> names = base->vars();
  for (std::size_t k = 0; k < n; ++k) names.push_back(fiber_name(k));
  HamiltonianLift lift;
  lift.phase_chart = make_chart(names);
  lift.base_dim = n;
  lift.Z = fields;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly h(lift.phase_chart);
    for (std::size_t m = 0; m < n; ++m) {
      const RationalFn& c = fields[i].component(m);
      if (!c.is_polynomial())
        throw std::invalid_argument("hamiltonian_lift: non-polynomial field");
      h += lift_poly(c.num(), lift.phase_chart) *
           MultiPoly::variable(lift.phase_chart, n + m) *
           (Rational(1) / c.den().constant_value());
    }
    lift.h[i] = h;
  }
  lift.h_bracket[0] = poisson_bracket(lift.h[1], lift.h[2], n);
  lift.h_bracket[1] = poisson_bracket(lift.h[2], lift.h[0], n);
  lift.h_bracket[2] = poisson_bracket(lift.h[0], lift.h[1], n);
  return lift;
}

bool symbolic_h_conservation(const HamiltonianLift& lift) {
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly dot(lift.phase_chart);
    for (std::size_t j = 0; j < 3; ++j)
      dot += lift.h_bracket[j] *
             poisson_bracket(lift.h[j], lift.h[i], lift.base_dim);
    if (!dot.is_zero()) return false;
  }
  return true;
}

std::pair<std::array<double, 6>, std::array<double, 6>> extremal_rhs(
    const HamiltonianLift& lift, const ExtremalState& state) {
  if (lift.base_dim != 6)
    throw std::invalid_argument("extremal_rhs: expected a 6-dimensional base");
  ExtremalRhs rhs(lift);
  std::vector<double> y(12);
  for (std::size_t k = 0; k < 6; ++k) {
    y[k] = state.q[k];
    y[6 + k] = state.lam[k];
  }
  auto dy = rhs(y);
  std::pair<std::array<double, 6>, std::array<double, 6>> out;
  for (std::size_t k = 0; k < 6; ++k) {
    out.first[k] = dy[k];
    out.second[k] = dy[6 + k];
  }
  return out;
}

std::optional<RatVector> initial_covector(
    const HamiltonianLift& lift, const RatVector& q0,
    const std::array<Rational, 3>& u_target) {
  std::size_t n = lift.base_dim;
  if (q0.size() != n)
    throw std::invalid_argument("initial_covector: point size mismatch");
  RatMatrix m;
  RatVector b;
  for (std::size_t i = 0; i < 3; ++i) {
    RatVector row(n);
    for (std::size_t k = 0; k < n; ++k)
      row[k] = lift.Z[i].component(k).evaluate(q0);
    m.push_back(std::move(row));
    b.push_back(0);
  }
  const std::size_t pair_of[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    VectorField br = lie_bracket(lift.Z[pair_of[i][0]], lift.Z[pair_of[i][1]]);
    RatVector row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = br.component(k).evaluate(q0);
    m.push_back(std::move(row));
    b.push_back(u_target[i]);
  }
  return solve(std::move(m), std::move(b));
}

ExtremalTrajectory integrate_extremal(const HamiltonianLift& lift,
                                      const std::array<double, 6>& q0,
                                      const std::array<double, 6>& lam0,
                                      double duration, double step,
                                      const MonitorConfig& cfg) {
  if (step <= 0) throw std::invalid_argument("integrate_extremal: step <= 0");
  if (lift.base_dim != 6)
    throw std::invalid_argument("integrate_extremal: expected 6-dim base");
  ExtremalRhs rhs(lift);
  std::vector<double> y(12);
  for (std::size_t k = 0; k < 6; ++k) {
    y[k] = q0[k];
    y[6 + k] = lam0[k];
  }
  ExtremalTrajectory tr;
  long n = std::lround(duration / step);
  double prod0 = 0;
  for (long i = 0; i <= n; ++i) {
    ExtremalPoint pt;
    pt.t = i * step;
    for (std::size_t k = 0; k < 6; ++k) {
      pt.q[k] = y[k];
      pt.lam[k] = y[6 + k];
    }
    pt.u = rhs.controls(y);
    if (i == 0) prod0 = pt.u[0] * pt.u[1] * pt.u[2];
    for (std::size_t j = 0; j < 3; ++j)
      tr.max_h_drift = std::max(tr.max_h_drift,
                                std::abs(lift.h[j].evaluate(y)));
    tr.max_sum_u =
        std::max(tr.max_sum_u, std::abs(pt.u[0] + pt.u[1] + pt.u[2]));
    tr.max_prod_drift =
        std::max(tr.max_prod_drift,
                 std::abs(pt.u[0] * pt.u[1] * pt.u[2] - prod0));
    tr.points.push_back(pt);
    if (i < n) rk4_step(y, step, rhs);
  }
  for (std::size_t i = 2; i < tr.points.size(); ++i) {
    const auto &a = tr.points[i - 2].q, &b = tr.points[i - 1].q,
               &c = tr.points[i].q;
    double bx = (c[0] + c[2] + c[4] - 2 * (b[0] + b[2] + b[4]) + a[0] + a[2] +
                 a[4]) / 3.0;
    double by = (c[1] + c[3] + c[5] - 2 * (b[1] + b[3] + b[5]) + a[1] + a[3] +
                 a[5]) / 3.0;
    tr.max_bary_dd = std::max(tr.max_bary_dd, std::hypot(bx, by));
  }
  if (tr.max_h_drift > cfg.tol_h) note_breach(tr, "h drift", tr.max_h_drift, cfg.tol_h);
  if (tr.max_sum_u > cfg.tol_sum) note_breach(tr, "u sum", tr.max_sum_u, cfg.tol_sum);
  if (tr.max_prod_drift > cfg.tol_prod)
    note_breach(tr, "u product drift", tr.max_prod_drift, cfg.tol_prod);
  if (tr.max_bary_dd > cfg.tol_bary)
    note_breach(tr, "barycenter second difference", tr.max_bary_dd, cfg.tol_bary);
  return tr;
}

std::array<double, 3> control_rhs(Rule rule, const std::array<double, 3>& u) {
  std::array<double, 3> d;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    d[i] = (rule == Rule::A) ? -u[i] * (u[i] + u[j]) : u[i] * (u[j] - u[k]);
  }
  return d;
}

ReducedTrajectory integrate_reduced(const ReducedState& s0, double duration,
                                    double step, double tol) {
  if (step <= 0) throw std::invalid_argument("integrate_reduced: step <= 0");
  if (s0.u1 < 0 || s0.u2 < 0)
    throw std::invalid_argument("integrate_reduced: u1, u2 must be >= 0");
  auto rhs = [](const std::vector<double>& y) {
    double u1 = y[0], u2 = y[1];
    return std::vector<double>{u1 * (u1 + 2 * u2),
                               -u2 * (2 * u1 + u2),
                               (u1 + u2) * y[2] + u1 * y[4],
                               (u1 + u2) * y[3] + u1 * y[5],
                               -u2 * y[2] - (u1 + u2) * y[4],
                               -u2 * y[3] - (u1 + u2) * y[5]};
  };
  std::vector<double> y{s0.u1,        s0.u2,        s0.z1.real(),
                        s0.z1.imag(), s0.z2.real(), s0.z2.imag()};
  ReducedTrajectory tr;
  tr.e0 = s0.u1 * s0.z2 - s0.u2 * s0.z1;
  tr.c0 = s0.u1 * s0.u2 * (s0.u1 + s0.u2);
  long n = std::lround(duration / step);
  for (long i = 0; i <= n; ++i) {
    ReducedState st;
    st.t = s0.t + i * step;
    st.u1 = y[0];
    st.u2 = y[1];
    st.z1 = {y[2], y[3]};
    st.z2 = {y[4], y[5]};
    tr.points.push_back(st);
    Cx e = st.u1 * st.z2 - st.u2 * st.z1;
    tr.max_e_drift = std::max(tr.max_e_drift, std::abs(e - tr.e0));
    tr.max_c_drift = std::max(
        tr.max_c_drift, std::abs(st.u1 * st.u2 * (st.u1 + st.u2) - tr.c0));
    if (i < n) rk4_step(y, step, rhs);
  }
  if (tr.max_e_drift > tol) {
    tr.flagged = true;
    std::ostringstream os;
    os << "e drift " << tr.max_e_drift << " exceeds " << tol;
    tr.breaches.push_back(os.str());
  }
  if (tr.max_c_drift > tol) {
    tr.flagged = true;
    std::ostringstream os;
    os << "u1 u2 (u1+u2) drift " << tr.max_c_drift << " exceeds " << tol;
    tr.breaches.push_back(os.str());
  }
  return tr;
}

std::pair<Cx, Cx> zeta_closed_form(const ReducedTrajectory& traj, double t) {
  if (traj.points.size() < 2)
    throw std::invalid_argument("zeta_closed_form: trajectory too short");
  double t0 = traj.points.front().t;
  double step = traj.points[1].t - t0;
  double pos = (t - t0) / step;
  auto k = static_cast<std::size_t>(std::llround(pos));
  if (k >= traj.points.size() || std::abs(pos - double(k)) > 1e-9)
    throw std::invalid_argument("zeta_closed_form: t is not on the grid");
  const auto& p0 = traj.points.front();
  const auto& pk = traj.points[k];
  if (p0.u1 == 0 || p0.u2 == 0 || pk.u1 == 0 || pk.u2 == 0)
    throw std::domain_error(
        "zeta_closed_form: vanishing u, use fixed_vertex_trajectory");
  // Composite Simpson of 1/u_i over the stored grid (3/8 tail on odd counts).
  auto quad = [&](auto get) {
    auto f = [&](std::size_t j) { return 1.0 / get(traj.points[j]); };
    double acc = 0;
    std::size_t m = k;
    std::size_t j = 0;
    if (m % 2 == 1) {
      if (m >= 3) {
        acc += 3.0 * step / 8.0 *
               (f(0) + 3 * f(1) + 3 * f(2) + f(3));
        j = 3;
      } else {
        acc += step / 2.0 * (f(0) + f(1));
        j = 1;
      }
    }
    for (; j + 2 <= m; j += 2)
      acc += step / 3.0 * (f(j) + 4 * f(j + 1) + f(j + 2));
    return acc;
  };
  Cx e = traj.e0;
  double i1 = quad([](const ReducedState& s) { return s.u1; });
  double i2 = quad([](const ReducedState& s) { return s.u2; });
  Cx z1 = pk.u1 / p0.u1 * p0.z1 + pk.u1 * e * i1;
  Cx z2 = pk.u2 / p0.u2 * p0.z2 + pk.u2 * e * i2;
  return {z1, z2};
}

double elliptic_time(double u_target, double r, double c, double abs_tol) {
  auto f = [&](double v) {
    double rad = v * (v * v * v + 4 * c);
    if (rad <= 0) {
      std::ostringstream os;
      os << "elliptic_time: integrand singular at v = " << v;
      throw std::domain_error(os.str());
    }
    return 1.0 / std::sqrt(rad);
  };
  return integrate_adaptive(f, r, u_target, abs_tol);
}

std::array<double, 3> symmetric_reduction_rhs(double nu1, double nu2,
                                              double delta) {
  return {delta * nu1, -delta * nu2, nu1 * nu1 + 2 * nu2};
}

std::array<std::array<Rational, 2>, 2> fuchsian_matrix(int pole) {
  switch (pole) {
    case 1:
      return {{{Rational(-1), Rational(-1)}, {Rational(0), Rational(1)}}};
    case 0:
      return {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
    case -1:
      return {{{Rational(1), Rational(0)}, {Rational(-1), Rational(-1)}}};
  }
  throw std::invalid_argument("fuchsian_matrix: pole must be -1, 0 or 1");
}

std::array<Cx, 2> fuchsian_rhs(const FuchsianState& s) {
  for (int pole : {-1, 0, 1})
    if (std::abs(s.tau - pole) < 1e-12)
      throw std::domain_error("fuchsian_rhs: tau at a pole");
  std::array<Cx, 2> out{};
  const int poles[3] = {1, 0, -1};
  for (int pole : poles) {
    auto m = fuchsian_matrix(pole);
    double w = 1.0 / (s.tau - pole);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out[i] += w * to_double(m[i][j]) * s.psi[j];
  }
  for (auto& v : out) v /= 3.0;
  return out;
}

std::vector<FuchsianState> integrate_fuchsian(const FuchsianState& s0,
                                              double tau_end, double step) {
  if (step <= 0) throw std::invalid_argument("integrate_fuchsian: step <= 0");
  double lo = std::min(s0.tau, tau_end), hi = std::max(s0.tau, tau_end);
  for (int pole : {-1, 0, 1})
    if (lo - 1e-12 <= pole && pole <= hi + 1e-12)
      throw std::domain_error(
          "integrate_fuchsian: integration interval touches a pole");
  auto rhs = [](const std::vector<double>& y) {
    FuchsianState s;
    s.tau = y[0];
    s.psi = {Cx{y[1], y[2]}, Cx{y[3], y[4]}};
    auto d = fuchsian_rhs(s);
    return std::vector<double>{1.0, d[0].real(), d[0].imag(), d[1].real(),
                               d[1].imag()};
  };
  double span = tau_end - s0.tau;
  long n = std::lround(std::abs(span) / step);
  if (n == 0) n = 1;
  double h = span / double(n);
  std::vector<double> y{s0.tau, s0.psi[0].real(), s0.psi[0].imag(),
                        s0.psi[1].real(), s0.psi[1].imag()};
  std::vector<FuchsianState> out;
  for (long i = 0; i <= n; ++i) {
    FuchsianState st;
    st.tau = y[0];
    st.psi = {Cx{y[1], y[2]}, Cx{y[3], y[4]}};
    out.push_back(st);
    if (i < n) rk4_step(y, h, rhs);
  }
  return out;
}

FixedVertexReport fixed_vertex_trajectory(
    const std::array<Cx, 3>& z0, double u1_0, double duration, double step) {
  if (step <= 0)
    throw std::invalid_argument("fixed_vertex_trajectory: step <= 0");
  // u2 = 0 and u3 = -u1 on this branch; udot1 = u1^2 by system (B).
  auto rhs = [](const std::vector<double>& y) {
    double u1 = y[0];
    Cx z1{y[1], y[2]}, z2{y[3], y[4]}, z3{y[5], y[6]};
    Cx d1 = u1 * (z2 - z3);
    Cx d2 = 0.0 * (z3 - z1);
    Cx d3 = -u1 * (z1 - z2);
    return std::vector<double>{u1 * u1,   d1.real(), d1.imag(), d2.real(),
                               d2.imag(), d3.real(), d3.imag()};
  };
  std::vector<double> y{u1_0,
                        z0[0].real(), z0[0].imag(),
                        z0[1].real(), z0[1].imag(),
                        z0[2].real(), z0[2].imag()};
  FixedVertexReport rep;
  Cx side0 = z0[2] - z0[0];
  Cx mid0 = 0.5 * (z0[0] + z0[2]);
  double area0 =
      0.5 * std::imag(std::conj(z0[1] - z0[0]) * (z0[2] - z0[0]));
  long n = std::lround(duration / step);
  for (long i = 0; i <= n; ++i) {
    Cx z1{y[1], y[2]}, z2{y[3], y[4]}, z3{y[5], y[6]};
    rep.times.push_back(i * step);
    rep.z.push_back({z1, z2, z3});
    rep.max_fixed_vertex_motion =
        std::max(rep.max_fixed_vertex_motion, std::abs(z2 - z0[1]));
    Cx side = z3 - z1;
    rep.max_side_cross = std::max(
        rep.max_side_cross,
        std::abs(std::imag(std::conj(side0) * side)) /
            (std::abs(side0) * std::abs(side)));
    double area = 0.5 * std::imag(std::conj(z2 - z1) * (z3 - z1));
    rep.max_area_drift = std::max(rep.max_area_drift, std::abs(area - area0));
    Cx m = 0.5 * (z1 + z3);
    if (std::abs(m - z2) > 1e-14)
      rep.max_bisectrix_residual = std::max(
          rep.max_bisectrix_residual,
          std::abs(std::imag(std::conj(mid0 - z0[1]) * (m - z2))) /
              (std::abs(mid0 - z0[1]) * std::abs(m - z2)));
    if (i < n) rk4_step(y, step, rhs);
  }
  return rep;
}

void write_trajectory_csv(std::ostream& os, const ExtremalTrajectory& traj) {
  os << "t,x1,y1,x2,y2,x3,y3,l1,l2,l3,l4,l5,l6,u1,u2,u3,inv_sum,inv_prod,"
        "bary_x,bary_y\n";
  char buf[40];
  auto put = [&](double v, char sep) {
    csv_num(buf, sizeof buf, v);
    os << buf << sep;
  };
  for (const auto& p : traj.points) {
    put(p.t, ',');
    for (double v : p.q) put(v, ',');
    for (double v : p.lam) put(v, ',');
    for (double v : p.u) put(v, ',');
    put(p.u[0] + p.u[1] + p.u[2], ',');
    put(p.u[0] * p.u[1] * p.u[2], ',');
    put((p.q[0] + p.q[2] + p.q[4]) / 3.0, ',');
    put((p.q[1] + p.q[3] + p.q[5]) / 3.0, '\n');
  }
}

}  // namespace ants
