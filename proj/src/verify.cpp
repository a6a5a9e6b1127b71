#include "ants/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>

#include <json.hpp>

#include "ants/extremals.hpp"
#include "ants/quartic.hpp"

namespace ants {

namespace {

std::string fmt_residual(double r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", r);
  return buf;
}

std::string fmt_tol(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::string fmt_ranks(const std::vector<std::size_t>& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

struct Outcome {
  bool pass = false;
  std::string value;
};

struct Check {
  std::string id;
  std::string group;
  std::string anchor;
  std::string tol_name;  // empty: exact identity, tolerance "0"
  double default_tol = 0;
  std::function<Outcome(double tol)> run;
};

// Shared expensive state, built once per run.
struct Context {
  VerifyConfig cfg;

  AntModel rule_a = build_rule_a();
  AntModel rule_b = build_rule_b();
  AffineModel affine = build_affine_model();

  std::array<VectorField, 3> ruleA_Zij() const {
    std::array<VectorField, 3> out{};
    for (int i = 0; i < 3; ++i)
      out[i] = lie_bracket(rule_a.Z[i], rule_a.Z[(i + 1) % 3]);
    return out;
  }

  // Extremal run, reused by the five extremal monitors.
  bool extremal_ready = false;
  ExtremalTrajectory extremal;
  void ensure_extremal(const MonitorConfig& mc) {
    if (extremal_ready) return;
    auto lift = hamiltonian_lift(rule_b.Z);
    RatVector q0{0, 0, 1, 0, 0, 1};
    auto lam = initial_covector(
        lift, q0, {Rational(1, 4), Rational(1, 4), Rational(-1, 2)});
    std::array<double, 6> q0d{0, 0, 1, 0, 0, 1}, l0d{};
    for (int k = 0; k < 6; ++k) l0d[k] = to_double((*lam)[k]);
    extremal = integrate_extremal(lift, q0d, l0d, cfg.duration, cfg.step, mc);
    extremal_ready = true;
  }

  bool reduced_ready = false;
  ReducedTrajectory reduced;   // from (1,1), c = 2
  ReducedTrajectory chain;     // from (2,1), for the substitution chain
  std::vector<double> chain_s; // cumulative s(t) along `chain`
  void ensure_reduced() {
    if (reduced_ready) return;
    ReducedState s0;
    s0.u1 = 1;
    s0.u2 = 1;
    s0.z1 = {1, 0};
    s0.z2 = {0, 1};
    // the solution from (1,1) escapes to infinity near t = 0.70
    reduced = integrate_reduced(s0, 0.5, 1e-4);
    ReducedState a0;
    a0.u1 = 2;
    a0.u2 = 1;
    a0.z1 = {1, 0};
    a0.z2 = {0, 1};
    chain = integrate_reduced(a0, 0.25, 1e-4);
    chain_s.assign(1, 0.0);
    for (std::size_t i = 1; i < chain.points.size(); ++i) {
      double d0 = chain.points[i - 1].u1 - chain.points[i - 1].u2;
      double d1 = chain.points[i].u1 - chain.points[i].u2;
      chain_s.push_back(chain_s.back() + 0.5e-4 * (d0 + d1));
    }
    reduced_ready = true;
  }
};

// Coefficients of a ^ b ^ c for fields on a 6-variable chart, keyed by the
// strictly increasing index triple.
std::map<std::array<int, 3>, RationalFn> wedge3(const VectorField& a,
                                                const VectorField& b,
                                                const VectorField& c) {
  std::map<std::array<int, 3>, RationalFn> out;
  const VectorField* f[3] = {&a, &b, &c};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) {
        RationalFn det = RationalFn::constant(a.chart(), 0);
        int idx[3] = {i, j, k};
        // cyclic 3x3 determinant expansion
        for (int col = 0; col < 3; ++col) {
          int c1 = idx[(col + 1) % 3], c2 = idx[(col + 2) % 3];
          RationalFn minor = f[1]->component(c1) * f[2]->component(c2) -
                             f[1]->component(c2) * f[2]->component(c1);
          det += f[0]->component(idx[col]) * minor;
        }
        if (!det.is_zero()) out[{i, j, k}] = det;
      }
  return out;
}

Outcome exact(bool ok) { return {ok, ok ? "0" : "nonzero"}; }

Outcome residual_check(double r, double tol) { return {r < tol, fmt_residual(r)}; }

std::vector<Check> build_registry(std::shared_ptr<Context> ctx) {
  std::vector<Check> reg;
  auto add = [&](std::string id, std::string group, std::string anchor,
                 std::function<Outcome(double)> fn, std::string tol_name = "",
                 double def_tol = 0) {
    reg.push_back({std::move(id), std::move(group), std::move(anchor),
                   std::move(tol_name), def_tol, std::move(fn)});
  };

  add("rule-a-bracket-formula", "algebra", "sec. 2, commutator display Z_{i,i+1}",
      [ctx](double) {
        auto& m = ctx->rule_a;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
          int j = (i + 1) % 3, k = (i + 2) % 3;
          VectorField expect(m.chart);
          expect.set_component(2 * i, RationalFn::variable(m.chart, "x" + std::to_string(j + 1)) -
                                          RationalFn::variable(m.chart, "x" + std::to_string(k + 1)));
          expect.set_component(2 * i + 1, RationalFn::variable(m.chart, "y" + std::to_string(j + 1)) -
                                              RationalFn::variable(m.chart, "y" + std::to_string(k + 1)));
          ok = ok && (lie_bracket(m.Z[i], m.Z[j]) == expect);
        }
        return exact(ok);
      });

  add("rule-a-top-wedge", "algebra", "sec. 2, wedge determinant (32A)^3",
      [ctx](double) {
        auto& m = ctx->rule_a;
        auto zij = ctx->ruleA_Zij();
        std::vector<VectorField> six{m.Z[0], m.Z[1], m.Z[2],
                                     zij[0], zij[2], zij[1]};  // Z12, Z31, Z23
        RationalFn det = top_wedge_determinant(six);
        RationalFn cube(m.area32 * m.area32 * m.area32);
        return exact(det == cube || det == -cube);
      });

  add("rule-b-top-wedge", "algebra", "sec. 3, vanishing top wedge",
      [ctx](double) {
        auto& m = ctx->rule_b;
        std::vector<VectorField> six{m.Z[0], m.Z[1], m.Z[2],
                                     lie_bracket(m.Z[0], m.Z[1]),
                                     lie_bracket(m.Z[2], m.Z[0]),
                                     lie_bracket(m.Z[1], m.Z[2])};
        return exact(top_wedge_determinant(six).is_zero());
      });

  add("eq5-linear-relation", "algebra", "sec. 3, Eq. (5)",
      [ctx](double) {
        auto& m = ctx->rule_b;
        auto lhs = lie_bracket(m.Z[0], m.Z[1]) + lie_bracket(m.Z[2], m.Z[0]) +
                   lie_bracket(m.Z[1], m.Z[2]);
        return exact(lhs == m.Z[0] + m.Z[1] + m.Z[2]);
      });

  add("rule-b-area-differential", "algebra", "sec. 3, dF = omega1+omega2+omega3",
      [ctx](double) {
        auto& m = ctx->rule_b;
        auto dF = exterior_derivative(RationalFn(m.area32));
        return exact(dF == m.omega[0] + m.omega[1] + m.omega[2]);
      });

  add("sqrt-bracket-identity", "algebra", "sec. 3, bracket of difference fields",
      [ctx](double) {
        auto& m = ctx->rule_b;
        auto br = lie_bracket(m.Z[0] - m.Z[1], m.Z[0] - m.Z[2]);
        return exact(br == m.Z[0] + m.Z[1] + m.Z[2]);
      });

  add("sqrt-triple-wedge", "algebra", "sec. 3, = 3 Z3 ^ Z2 ^ Z1",
      [ctx](double) {
        auto& m = ctx->rule_b;
        auto W1 = m.Z[0] - m.Z[1], W2 = m.Z[2] - m.Z[0];
        auto lhs = wedge3(lie_bracket(W1, -W2), W1, W2);
        auto rhs = wedge3(m.Z[2], m.Z[1], m.Z[0]);
        bool ok = lhs.size() == rhs.size();
        if (ok)
          for (auto& [k, v] : rhs)
            ok = ok && (lhs.count(k) && lhs.at(k) == v * RationalFn::constant(v.chart(), 3));
        return exact(ok);
      });

  add("sqrt-area-annihilation", "algebra", "sec. 3, tangent to A = const",
      [ctx](double) {
        auto& m = ctx->rule_b;
        return exact((m.Z[0] - m.Z[1]).apply(m.area32).is_zero() &&
                     (m.Z[2] - m.Z[0]).apply(m.area32).is_zero());
      });

  auto growth_check = [ctx](Distribution d, std::vector<std::size_t> expect,
                            std::size_t depth) {
    auto flag = derived_flag(d, depth, ctx->cfg.seed, 3);
    return Outcome{flag.ranks == expect, fmt_ranks(flag.ranks)};
  };

  add("growth-rule-a", "growth", "sec. 2, growth vector (3,6)",
      [ctx, growth_check](double) {
        return growth_check(ctx->rule_a.distribution(), {3, 6}, 3);
      });

  add("growth-rule-b", "growth", "sec. 3, growth (3,5), D^1 integrable",
      [ctx, growth_check](double) {
        auto& m = ctx->rule_b;
        auto out = growth_check(m.distribution(), {3, 5, 5}, 3);
        std::vector<VectorField> d1{m.Z[0], m.Z[1], m.Z[2],
                                    lie_bracket(m.Z[0], m.Z[1]),
                                    lie_bracket(m.Z[1], m.Z[2])};
        bool integ = is_integrable(Distribution(d1));
        out.pass = out.pass && integ;
        out.value += integ ? " D1 integrable" : " D1 not integrable";
        return out;
      });

  add("growth-sqrt-b", "growth", "sec. 3, square-root distribution (2,3,5)",
      [ctx, growth_check](double) {
        return growth_check(square_root_distribution(ctx->rule_b), {2, 3, 5}, 4);
      });

  add("growth-flat36", "growth", "sec. 2, flat model lambda_i",
      [growth_check](double) { return growth_check(build_flat36(), {3, 6}, 3); });

  add("growth-quadric235", "growth", "sec. 3, quadric model",
      [growth_check](double) {
        return growth_check(build_quadric235(), {2, 3, 5}, 4);
      });

  add("growth-rule-a-collinear", "growth", "sec. 2, singular locus A = 0",
      [ctx](double) {
        RatVector p{0, 0, 1, 0, 2, 0};
        auto gv = growth_vector(ctx->rule_a.distribution(), p);
        return Outcome{gv == std::vector<std::size_t>{3, 3}, fmt_ranks(gv)};
      });

  add("symmetry-rule-a-fields", "symmetries", "Theorem 1, eight symmetries",
      [ctx](double) {
        auto X = projective_symmetries(ctx->rule_a.chart);
        auto d = ctx->rule_a.distribution();
        bool ok = true;
        for (auto& x : X) ok = ok && is_symmetry(x, d).ok;
        return exact(ok);
      });

  add("symmetry-killing-signature", "symmetries", "Theorem 1, sl(3,R)",
      [ctx](double) {
        auto X = projective_symmetries(ctx->rule_a.chart);
        auto table = structure_constants({X.begin(), X.end()});
        auto& s = table.killing_signature;
        char buf[32];
        std::snprintf(buf, sizeof buf, "(%zu,%zu)", s.positives, s.negatives);
        return Outcome{table.jacobi_holds() && s == Signature{5, 3, 0}, buf};
      });

  add("symmetry-sqrt-s-fields", "symmetries", "sec. 3, S-field symmetries",
      [ctx](double) {
        auto X = projective_symmetries(ctx->rule_b.chart);
        std::array<VectorField, 5> S{X[0], X[1], X[2], X[3], X[4] - X[5]};
        auto d = square_root_distribution(ctx->rule_b);
        bool ok = true;
        for (auto& s : S)
          ok = ok && s.apply(ctx->rule_b.area32).is_zero() && is_symmetry(s, d).ok;
        return exact(ok);
      });

  add("affine-det-annihilation", "affine", "sec. 5, V_i(Det h) = 0",
      [ctx](double) {
        auto& m = ctx->affine;
        bool ok = true;
        for (auto& v : m.V) ok = ok && v.apply(m.det_h).is_zero();
        return exact(ok);
      });

  add("affine-maurer-cartan", "affine", "sec. 5, h^-1 dh = sum tau^i E_i",
      [ctx](double) {
        auto& m = ctx->affine;
        auto var = [&](const char* n) { return RationalFn::variable(m.chart, n); };
        RationalFn a = var("a"), b = var("b"), p = var("p"), q = var("q"),
                   x = var("x"), y = var("y");
        RationalFn del = a * q - b * p;
        RationalFn h[3][3] = {{a, b, x}, {p, q, y},
                              {RationalFn::constant(m.chart, 0),
                               RationalFn::constant(m.chart, 0),
                               RationalFn::constant(m.chart, 1)}};
        RationalFn inv[3][3] = {
            {q / del, -(b / del), (b * y - q * x) / del},
            {-(p / del), a / del, (p * x - a * y) / del},
            {RationalFn::constant(m.chart, 0), RationalFn::constant(m.chart, 0),
             RationalFn::constant(m.chart, 1)}};
        bool ok = true;
        for (int r = 0; r < 3 && ok; ++r)
          for (int c = 0; c < 3 && ok; ++c) {
            DifferentialForm lhs(m.chart, 1);
            for (int k = 0; k < 3; ++k)
              lhs += exterior_derivative(h[k][c]) * inv[r][k];
            DifferentialForm rhs(m.chart, 1);
            for (int i = 0; i < 6; ++i) rhs += m.tau[i] * Rational(m.E[i][r][c]);
            ok = lhs == rhs;
          }
        return exact(ok);
      });

  add("affine-tau6-leaf", "affine", "sec. 5, tau^6 pullback to N_s",
      [ctx](double) {
        auto& m = ctx->affine;
        return exact(pullback(m.tau[5], m.leaf_chart, m.leaf_bindings).is_zero());
      });

  add("eq15-structure-equations", "affine", "sec. 5, Eq. (15)",
      [ctx](double) {
        auto rep = verify_structure_equations(
            ctx->affine, ctx->cfg.mutate_structure_equations);
        return exact(rep.all_pass());
      });

  add("affine-coframe-annihilation", "affine",
      "sec. 5, theta^1..theta^3 annihilate the distribution",
      [ctx](double) {
        auto& m = ctx->affine;
        auto W1 = m.V[0] - m.V[2], W2 = m.V[1] - m.V[0];
        bool ok = true;
        for (int i = 0; i < 3; ++i)
          ok = ok && m.theta[i].apply({W1}).is_zero() &&
               m.theta[i].apply({W2}).is_zero();
        // theta^4, theta^5 complete the coframe: nondegenerate on the plane
        auto pairing_det = m.theta[3].apply({W1}) * m.theta[4].apply({W2}) -
                           m.theta[3].apply({W2}) * m.theta[4].apply({W1});
        return exact(ok && !pairing_det.is_zero());
      });

  add("extremals-h-drift", "extremals", "sec. 4, h_i = 0 along extremals",
      [ctx](double tol) {
        MonitorConfig mc;  // defaults match the documented tolerances
        ctx->ensure_extremal(mc);
        return residual_check(ctx->extremal.max_h_drift, tol);
      },
      "h", 1e-8);

  add("extremals-sum-u", "extremals", "sec. 4, u1+u2+u3 = 0",
      [ctx](double tol) {
        ctx->ensure_extremal({});
        return residual_check(ctx->extremal.max_sum_u, tol);
      },
      "sum", 1e-12);

  add("extremals-prod-drift", "extremals", "sec. 4, u1 u2 u3 constant",
      [ctx](double tol) {
        ctx->ensure_extremal({});
        return residual_check(ctx->extremal.max_prod_drift, tol);
      },
      "prod", 1e-8);

  add("extremals-barycenter", "extremals", "sec. 4, barycenter on a line",
      [ctx](double tol) {
        ctx->ensure_extremal({});
        return residual_check(ctx->extremal.max_bary_dd, tol);
      },
      "bary", 1e-8);

  add("extremals-system-b", "extremals", "sec. 4, system (B) for the controls",
      [ctx](double tol) {
        ctx->ensure_extremal({});
        auto& pts = ctx->extremal.points;
        double maxres = 0, st = ctx->cfg.step;
        for (std::size_t i = 1; i + 1 < pts.size(); i += 97) {
          auto rhs = control_rhs(Rule::B, pts[i].u);
          for (int j = 0; j < 3; ++j)
            maxres = std::max(maxres,
                              std::abs((pts[i + 1].u[j] - pts[i - 1].u[j]) /
                                           (2 * st) - rhs[j]));
        }
        return residual_check(maxres, tol);
      },
      "systemb", 1e-8);

  add("reduced-e-conservation", "reduced", "sec. 4, e = u1 z2 - u2 z1",
      [ctx](double tol) {
        ctx->ensure_reduced();
        return residual_check(ctx->reduced.max_e_drift, tol);
      },
      "reduced", 1e-8);

  add("reduced-c-conservation", "reduced", "sec. 4, c = u1 u2 (u1+u2)",
      [ctx](double tol) {
        ctx->ensure_reduced();
        return residual_check(ctx->reduced.max_c_drift, tol);
      },
      "reduced", 1e-8);

  add("reduced-zeta-closed-form", "reduced", "sec. 4, closed-form zeta",
      [ctx](double tol) {
        ctx->ensure_reduced();
        auto [z1, z2] = zeta_closed_form(ctx->reduced, 0.5);
        auto& last = ctx->reduced.points.back();
        double err = std::max(std::abs(z1 - last.z1), std::abs(z2 - last.z2));
        return residual_check(err, tol);
      },
      "zeta", 1e-6);

  add("reduced-udot-quartic", "reduced", "sec. 4, udot1^2 = u1(u1^3+4c)",
      [ctx](double tol) {
        ctx->ensure_reduced();
        auto& pts = ctx->reduced.points;
        double maxid = 0;
        for (std::size_t i = 0; i < pts.size(); i += 500) {
          double u1 = pts[i].u1, u2 = pts[i].u2;
          double ud = u1 * (u1 + 2 * u2);  // trajectory derivative of u1
          maxid = std::max(maxid, std::abs(ud * ud - u1 * (u1 * u1 * u1 + 8.0)));
        }
        return residual_check(maxid, tol);
      },
      "udot", 1e-6);

  add("reduced-elliptic-time", "reduced", "sec. 4, elliptic quadrature for t(u1)",
      [ctx](double tol) {
        ctx->ensure_reduced();
        auto& p = ctx->reduced.points.at(1000);  // t = 0.1
        double t_ell = elliptic_time(p.u1, 1.0, 2.0);
        return residual_check(std::abs(t_ell - p.t), tol);
      },
      "elliptic", 1e-6);

  add("fuchsian-nu-exponential", "fuchsian", "sec. 4, nu1, nu2 exponentials in s",
      [ctx](double tol) {
        ctx->ensure_reduced();
        auto& pts = ctx->chain.points;
        double maxnu = 0;
        for (std::size_t i = 0; i < pts.size(); i += 250) {
          double nu1 = pts[i].u1 + pts[i].u2, nu2 = pts[i].u1 * pts[i].u2;
          maxnu = std::max(maxnu, std::abs(nu1 - 3 * std::exp(ctx->chain_s[i])));
          maxnu = std::max(maxnu, std::abs(nu2 - 2 * std::exp(-ctx->chain_s[i])));
        }
        return residual_check(maxnu, tol);
      },
      "nu", 1e-6);

  add("fuchsian-traceless", "fuchsian", "sec. 4, residue matrices traceless",
      [](double) {
        bool ok = true;
        for (int pole : {-1, 0, 1}) {
          auto M = fuchsian_matrix(pole);
          ok = ok && (M[0][0] + M[1][1] == 0);
        }
        return exact(ok);
      });

  add("fuchsian-chain", "fuchsian", "sec. 4, Fuchsian system after time changes",
      [ctx](double tol) {
        ctx->ensure_reduced();
        auto& a0 = ctx->chain.points.front();
        auto& aN = ctx->chain.points.back();
        double tau0 = (a0.u1 + a0.u2) / (a0.u1 - a0.u2);
        double tauN = (aN.u1 + aN.u2) / (aN.u1 - aN.u2);
        FuchsianState f0;
        f0.tau = tau0;
        f0.psi = {a0.z1, a0.z2};
        auto ft = integrate_fuchsian(f0, tauN, 1e-4);
        auto& fend = ft.back();
        double err = std::max(std::abs(fend.psi[0] - aN.z1),
                              std::abs(fend.psi[1] - aN.z2));
        return residual_check(err, tol);
      },
      "fuchsian", 1e-6);

  using Cx = std::complex<double>;
  auto vertex_report = [ctx]() {
    return fixed_vertex_trajectory({Cx{0, 0}, Cx{1, 0}, Cx{0, 1}}, 0.5, 1.0,
                                   1e-4);
  };

  add("fixed-vertex-stationary", "vertex", "sec. 4, one ant stands still",
      [vertex_report](double tol) {
        return residual_check(vertex_report().max_fixed_vertex_motion, tol);
      },
      "vertex", 1e-9);

  add("fixed-vertex-parallel-side", "vertex",
      "sec. 4, side remains parallel to itself",
      [vertex_report](double tol) {
        return residual_check(vertex_report().max_side_cross, tol);
      },
      "side", 1e-8);

  add("fixed-vertex-area", "vertex", "sec. 4, area constant",
      [vertex_report](double tol) {
        return residual_check(vertex_report().max_area_drift, tol);
      },
      "area", 1e-8);

  add("fixed-vertex-bisectrix", "vertex", "sec. 4, midpoint on the bisectrix",
      [vertex_report](double tol) {
        return residual_check(vertex_report().max_bisectrix_residual, tol);
      },
      "bisectrix", 1e-6);

  add("quartic-cartan-no-real", "quartic", "sec. 5, Proposition (type D)",
      [](double) {
        bool ok = true;
        for (Rational c : {Rational(1), Rational(-1), Rational(7, 3), Rational(-7, 3)})
          ok = ok && classify_quartic(cartan_quartic(c)).tag == "no_real";
        return exact(ok);
      });

  add("steiner-ellipse-exact", "quartic", "sec. 5, Lemma (circumellipse)",
      [](double) {
        Triangle ts[2] = {
            {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}},
            {{{Rational(1), Rational(2)}, {Rational(4), Rational(3)}, {Rational(2), Rational(7)}}}};
        bool ok = true;
        for (auto& t : ts) {
          auto e = steiner_circumellipse(t);
          for (int i = 0; i < 3 && ok; ++i) {
            PlanarPoint r{t[i][0] - e.center[0], t[i][1] - e.center[1]};
            ok = ok && ellipse_norm_sq(e, r) == 1;
            int j = (i + 1) % 3, k = (i + 2) % 3;
            PlanarPoint side{t[j][0] - t[k][0], t[j][1] - t[k][1]};
            Rational pairing = 0;
            for (int u = 0; u < 2; ++u)
              for (int v = 0; v < 2; ++v) pairing += r[u] * e.gram[u][v] * side[v];
            ok = ok && pairing == 0;
          }
        }
        // equivariance under z -> Mz + w, M = [[2,1],[1,1]], w = (3,-2)
        Triangle img;
        for (int i = 0; i < 3; ++i) {
          img[i][0] = 2 * ts[1][i][0] + ts[1][i][1] + 3;
          img[i][1] = ts[1][i][0] + ts[1][i][1] - 2;
        }
        auto e1 = steiner_circumellipse(ts[1]);
        auto e2 = steiner_circumellipse(img);
        ok = ok && e2.center[0] == 2 * e1.center[0] + e1.center[1] + 3 &&
             e2.center[1] == e1.center[0] + e1.center[1] - 2;
        // M^{-1} = [[1,-1],[-1,2]]; expect gram2 = M^{-T} gram1 M^{-1}
        Rational mi[2][2] = {{1, -1}, {-1, 2}};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            Rational s = 0;
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l) s += mi[k][i] * e1.gram[k][l] * mi[l][j];
            ok = ok && e2.gram[i][j] == s;
          }
        return exact(ok);
      });

  add("speed-constant", "quartic", "sec. 5, speed proportional to sum u_i^2",
      [](double) {
        Triangle ts[2] = {
            {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}},
            {{{Rational(1), Rational(2)}, {Rational(4), Rational(3)}, {Rational(2), Rational(7)}}}};
        std::array<Rational, 3> us[3] = {{Rational(1), Rational(2), Rational(-3)},
                                         {Rational(5), Rational(-1), Rational(-4)},
                                         {Rational(1), Rational(1), Rational(-2)}};
        bool ok = true;
        for (auto& t : ts)
          for (auto& u : us) {
            Rational s2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
            ok = ok && subriemannian_speed_sq(t, u) == Rational(3) * s2;
          }
        return Outcome{ok, "3"};
      });

  add("metric-eq16-signature", "quartic", "sec. 5, Eq. (16) signature",
      [ctx](double) {
        auto metric = conformal_metric(ctx->affine);
        auto unordered_23 = [](std::pair<std::size_t, std::size_t> s) {
          return (s.first == 2 && s.second == 3) ||
                 (s.first == 3 && s.second == 2);
        };
        auto sig = metric_signature(metric.coframe_matrix);
        bool ok = unordered_23(sig);
        std::mt19937_64 rng(ctx->cfg.seed);
        auto small = [&rng]() { return Rational(int(rng() % 7) - 3); };
        for (int trial = 0; trial < 10 && ok; ++trial) {
          RatVector pt{0, small(), small(), small(), small()};
          while (pt[0] == 0) pt[0] = small();  // chart requires a != 0
          ok = unordered_23(metric_signature(metric.coordinate_gram(pt)));
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "(%zu,%zu)", sig.first, sig.second);
        return Outcome{ok, buf};
      });

  return reg;
}

bool keep_check(const Check& c, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  for (const auto& f : only)
    if (c.group == f || c.id.rfind(f, 0) == 0) return true;
  return false;
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status != "pass") return false;
  return true;
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json out;
  out["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["check_id"] = c.check_id;
    e["paper_anchor"] = c.paper_anchor;
    e["status"] = c.status;
    e["residual_or_value"] = c.residual_or_value;
    e["tolerance"] = c.tolerance;
    e["runtime_ms"] = c.runtime_ms;
    out["checks"].push_back(std::move(e));
  }
  out["all_pass"] = all_pass();
  return out.dump(2) + "\n";
}

VerifyReport run_verification(const VerifyConfig& cfg) {
  auto ctx = std::make_shared<Context>();
  ctx->cfg = cfg;
  if (ctx->cfg.step <= 0) ctx->cfg.step = 1e-4;
  if (ctx->cfg.duration <= 0) ctx->cfg.duration = 1.0;

  auto reg = build_registry(ctx);
  std::sort(reg.begin(), reg.end(),
            [](const Check& a, const Check& b) { return a.id < b.id; });

  VerifyReport report;
  for (const auto& c : reg) {
    if (!keep_check(c, cfg.only)) continue;
    double tol = c.default_tol;
    if (!c.tol_name.empty()) {
      auto it = cfg.tolerances.find(c.tol_name);
      if (it != cfg.tolerances.end()) tol = it->second;
    }
    auto t0 = std::chrono::steady_clock::now();
    Outcome out = c.run(tol);
    auto t1 = std::chrono::steady_clock::now();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    CheckResult r;
    r.check_id = c.id;
    r.paper_anchor = c.anchor;
    r.status = out.pass ? "pass" : "fail";
    r.residual_or_value = out.value;
    r.tolerance = c.tol_name.empty() ? "0" : fmt_tol(tol);
    // 10 s reporting resolution keeps equal-seed reports byte-identical.
    r.runtime_ms = (ms / 10000) * 10000;
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace ants
