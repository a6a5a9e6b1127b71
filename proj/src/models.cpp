#include "ants/models.hpp"

#include <stdexcept>

namespace ants {

namespace {

// Variable indices on the chart (x1,y1,x2,y2,x3,y3), ant index i in 0..2.
std::size_t xi(std::size_t i) { return 2 * (i % 3); }
std::size_t yi(std::size_t i) { return 2 * (i % 3) + 1; }

MultiPoly triangle_area32(const ChartPtr& ch) {
  MultiPoly f(ch);
  for (std::size_t i = 0; i < 3; ++i) {
    auto x0 = MultiPoly::variable(ch, xi(i));
    auto y0 = MultiPoly::variable(ch, yi(i));
    auto x1 = MultiPoly::variable(ch, xi(i + 1));
    auto y1 = MultiPoly::variable(ch, yi(i + 1));
    f += y0 * x1 - x0 * y1;
  }
  return f;
}

AntModel build_ant_model(Rule rule) {
  auto ch = make_chart({"x1", "y1", "x2", "y2", "x3", "y3"});
  AntModel m{rule, ch, {}, {}, triangle_area32(ch)};
  for (std::size_t i = 0; i < 3; ++i) {
    // Rule A: vertex i chases vertex i+1. Rule B: vertex i moves parallel to
    // the opposite side, from vertex i+2 toward vertex i+1.
    std::size_t hd = (rule == Rule::A) ? i + 1 : i + 1;
    std::size_t tl = (rule == Rule::A) ? i : i + 2;
    auto dx = MultiPoly::variable(ch, xi(hd)) - MultiPoly::variable(ch, xi(tl));
    auto dy = MultiPoly::variable(ch, yi(hd)) - MultiPoly::variable(ch, yi(tl));
    VectorField z(ch);
    z.set_component(xi(i), RationalFn(dx));
    z.set_component(yi(i), RationalFn(dy));
    m.Z[i] = z;
    // omega_i(Z_i) = 0 by construction; for rule B, omega1+omega2+omega3 is
    // exactly d(area32).
    DifferentialForm w(ch, 1);
    Rational sgn = (rule == Rule::A) ? 1 : -1;
    w.set_coeff({std::uint32_t(xi(i))}, RationalFn(dy * sgn));
    w.set_coeff({std::uint32_t(yi(i))}, RationalFn(-(dx * sgn)));
    m.omega[i] = w;
  }
  return m;
}

RatMatrix mat3(std::initializer_list<std::initializer_list<int>> rows) {
  RatMatrix m;
  for (auto& r : rows) {
    RatVector v;
    for (int c : r) v.push_back(c);
    m.push_back(std::move(v));
  }
  return m;
}

}  // namespace

Distribution AntModel::distribution() const {
  return Distribution({Z[0], Z[1], Z[2]}, std::nullopt, area32);
}

AntModel build_rule_a() { return build_ant_model(Rule::A); }
AntModel build_rule_b() { return build_ant_model(Rule::B); }

Distribution square_root_distribution(const AntModel& m, const Rational& level) {
  if (m.rule != Rule::B)
    throw std::invalid_argument(
        "square_root_distribution: area is a first integral only for rule B");
  return Distribution({m.Z[0] - m.Z[1], m.Z[2] - m.Z[0]},
                      LeafConstraint{m.area32, level}, m.area32);
}

std::array<VectorField, 8> projective_symmetries(const ChartPtr& ch) {
  if (ch->arity() != 6)
    throw std::invalid_argument("projective_symmetries: expected a 6-variable chart");
  auto diag = [&](auto fx, auto fy) {
    VectorField v(ch);
    for (std::size_t i = 0; i < 3; ++i) {
      auto x = MultiPoly::variable(ch, xi(i));
      auto y = MultiPoly::variable(ch, yi(i));
      v.set_component(xi(i), RationalFn(fx(x, y)));
      v.set_component(yi(i), RationalFn(fy(x, y)));
    }
    return v;
  };
  auto zero = [&](const MultiPoly&, const MultiPoly&) { return MultiPoly(ch); };
  std::array<VectorField, 8> out = {
      diag([&](auto, auto) { return MultiPoly::constant(ch, 1); }, zero),
      diag(zero, [&](auto, auto) { return MultiPoly::constant(ch, 1); }),
      diag([](auto, auto y) { return y; }, zero),
      diag(zero, [](auto x, auto) { return x; }),
      diag([](auto x, auto) { return x; }, zero),
      diag(zero, [](auto, auto y) { return y; }),
      diag([](auto x, auto y) { return x * y; },
           [](auto, auto y) { return y * y; }),
      diag([](auto x, auto) { return x * x; },
           [](auto x, auto y) { return x * y; })};
  return out;
}

Distribution AffineModel::rank2_distribution() const {
  auto a = MultiPoly::variable(chart, std::size_t(0));
  auto b = MultiPoly::variable(chart, 1);
  auto p = MultiPoly::variable(chart, 2);
  auto q = MultiPoly::variable(chart, 3);
  return Distribution({V[0] - V[2], V[1] - V[0]}, LeafConstraint{det_h, s},
                      a * (a - b) * (p - q));
}

Distribution AffineModel::rank3_distribution() const {
  return Distribution({V[0], V[1], V[2]}, std::nullopt, det_h);
}

AffineModel build_affine_model(const Rational& s) {
  if (s == 0) throw std::invalid_argument("build_affine_model: s must be nonzero");
  AffineModel m;
  m.s = s;
  auto ch = make_chart({"a", "b", "p", "q", "x", "y"});
  m.chart = ch;
  enum { A, B, P, Q, X, Y };
  auto a = MultiPoly::variable(ch, std::size_t(A));
  auto b = MultiPoly::variable(ch, std::size_t(B));
  auto p = MultiPoly::variable(ch, std::size_t(P));
  auto q = MultiPoly::variable(ch, std::size_t(Q));
  m.det_h = a * q - b * p;

  // Single-vertex moves of the triangle h.(0,0), h.(1,0), h.(0,1) along the
  // opposite side direction.
  {
    VectorField v1(ch);
    v1.set_component(X, RationalFn(a - b));
    v1.set_component(A, RationalFn(-(a - b)));
    v1.set_component(B, RationalFn(-(a - b)));
    v1.set_component(Y, RationalFn(p - q));
    v1.set_component(P, RationalFn(-(p - q)));
    v1.set_component(Q, RationalFn(-(p - q)));
    VectorField v2(ch);
    v2.set_component(A, RationalFn(b));
    v2.set_component(P, RationalFn(q));
    VectorField v3(ch);
    v3.set_component(B, RationalFn(-a));
    v3.set_component(Q, RationalFn(-p));
    m.V = {v1, v2, v3};
  }

  // Maurer-Cartan coframe of h^{-1} dh in the basis E.
  auto da = DifferentialForm::d_variable(ch, A);
  auto db = DifferentialForm::d_variable(ch, B);
  auto dp = DifferentialForm::d_variable(ch, P);
  auto dq = DifferentialForm::d_variable(ch, Q);
  auto dx = DifferentialForm::d_variable(ch, X);
  auto dy = DifferentialForm::d_variable(ch, Y);
  auto over = [&](const DifferentialForm& w, const MultiPoly& den) {
    return w * RationalFn(MultiPoly::constant(ch, 1), den);
  };
  auto fa = RationalFn(a), fb = RationalFn(b), fp = RationalFn(p), fq = RationalFn(q);
  auto delta = m.det_h;
  m.tau[0] = over(db * fq - dq * fb, delta);
  m.tau[1] = over(dp * fa - da * fp, delta);
  m.tau[2] = over(da * fq - dq * fa + db * fp - dp * fb, delta * Rational(2));
  m.tau[3] = over(dx * fq - dy * fb, delta);
  m.tau[4] = over(dy * fa - dx * fp, delta);
  m.tau[5] = over(exterior_derivative(RationalFn(delta)), delta * Rational(2));
  m.E = {mat3({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}),
         mat3({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}),
         mat3({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}),
         mat3({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}),
         mat3({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}),
         mat3({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})};

  m.theta[0] = m.tau[2] - m.tau[4];
  m.theta[1] = m.tau[3] + m.tau[4];
  m.theta[2] = m.tau[0] - m.tau[1] - m.tau[2];
  m.theta[3] = -m.tau[1];
  m.theta[4] = m.tau[1] - m.tau[0];

  // Leaf {det_h = s}, solved for q. Requires a != 0 on the leaf chart.
  m.leaf_chart = make_chart({"a", "b", "p", "x", "y"});
  auto la = RationalFn::variable(m.leaf_chart, "a");
  auto lb = RationalFn::variable(m.leaf_chart, "b");
  auto lp = RationalFn::variable(m.leaf_chart, "p");
  auto lx = RationalFn::variable(m.leaf_chart, "x");
  auto ly = RationalFn::variable(m.leaf_chart, "y");
  auto lq = (RationalFn::constant(m.leaf_chart, s) + lb * lp) / la;
  m.leaf_bindings = {la, lb, lp, lq, lx, ly};
  for (std::size_t i = 0; i < 5; ++i)
    m.theta_leaf[i] = pullback(m.theta[i], m.leaf_chart, m.leaf_bindings);
  return m;
}

bool CoframeReport::all_pass() const {
  for (std::size_t i = 0; i < 5; ++i)
    if (!ideal_membership[i] || !leaf_residual_zero[i]) return false;
  return true;
}

CoframeReport verify_structure_equations(const AffineModel& m, bool mutate) {
  const auto& t = m.theta;
  auto w = [](const DifferentialForm& a, const DifferentialForm& b) {
    return wedge(a, b);
  };
  Rational c34 = mutate ? Rational(2) : Rational(3);
  std::array<DifferentialForm, 5> rhs = {
      w(t[0], t[2] + t[3] + t[4]) + w(t[1], t[3]) + w(t[2], t[3]),
      -w(t[0], t[2] * Rational(2) + t[4]) - w(t[1], t[2] + t[3] + t[4]) +
          w(t[2], t[4]),
      -w(t[2], t[3] * Rational(4) + t[4] * Rational(2)) + w(t[3], t[4]) * c34,
      -w(t[2], t[3]) * Rational(2) + w(t[3], t[4]) * Rational(2),
      w(t[2], t[3] * Rational(4) + t[4] * Rational(2)) -
          w(t[3], t[4]) * Rational(4)};
  CoframeReport rep;
  for (std::size_t i = 0; i < 5; ++i) {
    rep.residual[i] = exterior_derivative(t[i]) - rhs[i];
    rep.ideal_membership[i] = wedge(rep.residual[i], m.tau[5]).is_zero();
    rep.leaf_residual_zero[i] =
        pullback(rep.residual[i], m.leaf_chart, m.leaf_bindings).is_zero();
  }
  return rep;
}

ConformalMetric conformal_metric(const AffineModel& m) {
  RatMatrix g(5, RatVector(5, 0));
  g[0][0] = 27;
  g[0][1] = g[1][0] = Rational(27, 2);
  g[0][2] = g[2][0] = 30;
  g[0][4] = g[4][0] = Rational(45, 2);
  g[1][1] = 27;
  g[1][2] = g[2][1] = 15;
  g[1][3] = g[3][1] = Rational(-45, 2);
  g[2][2] = 10;
  return ConformalMetric{std::move(g), &m};
}

RatMatrix ConformalMetric::coordinate_gram(
    const std::vector<Rational>& leaf_point) const {
  // Row i: coefficients of theta_leaf[i] in the coordinate coframe at the point.
  RatMatrix c(5, RatVector(5, 0));
  for (std::size_t i = 0; i < 5; ++i) {
    auto vals = model->theta_leaf[i].evaluate(leaf_point);
    for (const auto& [idx, v] : vals) c[i][idx[0]] = v;
  }
  RatMatrix out(5, RatVector(5, 0));
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t l = 0; l < 5; ++l) {
      Rational acc = 0;
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
          acc += coframe_matrix[i][j] * c[i][k] * c[j][l];
      out[k][l] = acc;
    }
  return out;
}

Distribution build_flat36() {
  auto ch = make_chart({"q1", "q2", "q3", "p1", "p2", "p3"});
  std::vector<VectorField> gens;
  // Y_k = d/dq_k - eps_ijk q^j d/dp_i, the annihilator of dp_i + eps_ijk q^j dq^k.
  for (std::size_t k = 0; k < 3; ++k) {
    VectorField v = VectorField::coordinate(ch, k);
    std::size_t j1 = (k + 1) % 3, j2 = (k + 2) % 3;
    // eps with i = k+2, j = k+1 is -1; with i = k+1, j = k+2 is +1.
    v.set_component(3 + j2, RationalFn(-MultiPoly::variable(ch, j1)));
    v.set_component(3 + j1, RationalFn(MultiPoly::variable(ch, j2)));
    gens.push_back(std::move(v));
  }
  return Distribution(std::move(gens));
}

Distribution build_quadric235() {
  auto flat = build_flat36();
  auto ch = flat.chart();
  const auto& y = flat.generators();
  auto pv = [&](std::size_t i) {
    return RationalFn(MultiPoly::variable(ch, 3 + i));
  };
  MultiPoly constraint(ch);
  for (std::size_t i = 0; i < 3; ++i)
    constraint += MultiPoly::variable(ch, i) * MultiPoly::variable(ch, 3 + i);
  VectorField g1 = y[0] * pv(1) - y[1] * pv(0);
  VectorField g2 = y[0] * pv(2) - y[2] * pv(0);
  return Distribution({g1, g2}, LeafConstraint{constraint, 1},
                      MultiPoly::variable(ch, 3));
}

}  // namespace ants
