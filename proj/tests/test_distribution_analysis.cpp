#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ants/distribution.hpp"
#include "ants/models.hpp"

using namespace ants;

namespace {

// True iff every field of `extra` lies in the Q-span of `base` (coefficient
// vectors over the shared monomial layout of degree <= deg).
bool fields_in_span(const std::vector<VectorField>& base,
                    const std::vector<VectorField>& extra, unsigned deg) {
  RatMatrix m;
  for (const auto& v : base) m.push_back(field_coefficients(v, deg));
  std::size_t r = rank(m);
  for (const auto& v : extra) {
    RatMatrix m2 = m;
    m2.push_back(field_coefficients(v, deg));
    if (rank(m2) != r) return false;
  }
  return true;
}

std::vector<VectorField> rule_b_d1(const AntModel& b) {
  return {b.Z[0], b.Z[1], b.Z[2], lie_bracket(b.Z[0], b.Z[1]),
          lie_bracket(b.Z[1], b.Z[2])};
}

}  // namespace

TEST_CASE("derived flags of the five models") {
  auto a = build_rule_a();
  auto b = build_rule_b();

  auto fa = derived_flag(a.distribution(), 3);
  CHECK(fa.ranks == std::vector<std::size_t>{3, 6});
  CHECK(fa.stabilized);
  CHECK(fa.witness_points.size() >= 3);

  auto fb = derived_flag(b.distribution(), 3);
  CHECK(fb.ranks == std::vector<std::size_t>{3, 5, 5});
  CHECK(fb.stabilized);
  // rank 5 is reached and never exceeded
  for (auto r : fb.ranks) CHECK(r <= 5);

  auto fs = derived_flag(square_root_distribution(b), 4);
  CHECK(fs.ranks == std::vector<std::size_t>{2, 3, 5});

  CHECK(derived_flag(build_flat36(), 3).ranks ==
        std::vector<std::size_t>{3, 6});
  CHECK(derived_flag(build_quadric235(), 4).ranks ==
        std::vector<std::size_t>{2, 3, 5});
}

TEST_CASE("pointwise growth vectors") {
  auto a = build_rule_a();
  CHECK(growth_vector(a.distribution(), RatVector{0, 0, 1, 0, 0, 1}) ==
        std::vector<std::size_t>{3, 6});
  CHECK(growth_vector(a.distribution(), RatVector{0, 0, 1, 0, 2, 0}) ==
        std::vector<std::size_t>{3, 3});
  CHECK(growth_vector(build_flat36(), RatVector{1, 2, -1, 3, 0, 1}) ==
        std::vector<std::size_t>{3, 6});
}

TEST_CASE("symmetry verification") {
  auto a = build_rule_a();
  auto b = build_rule_b();
  auto X = projective_symmetries(a.chart);

  CHECK(is_symmetry(X[6], a.distribution()).ok);

  auto sq = square_root_distribution(b);
  auto S = X[0] + X[2];
  CHECK(S.apply(b.area32).is_zero());
  CHECK(is_symmetry(S, sq).ok);

  auto bad = is_symmetry(VectorField::coordinate(b.chart, 0), b.distribution());
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.residual.empty());
}

TEST_CASE("degree-2 symmetry solve recovers the eight fields") {
  auto a = build_rule_a();
  auto X = projective_symmetries(a.chart);
  auto basis = solve_symmetries(a.distribution(), 2);
  CHECK(basis.size() == 8);
  for (const auto& v : basis) CHECK(is_symmetry(v, a.distribution()).ok);
  std::vector<VectorField> known(X.begin(), X.end());
  CHECK(fields_in_span(basis, known, 2));
  CHECK(fields_in_span(known, basis, 2));
}

TEST_CASE("degree-1 symmetries of the rule-B ambient distribution") {
  auto b = build_rule_b();
  auto X = projective_symmetries(b.chart);
  auto basis = solve_symmetries(b.distribution(), 1);
  for (const auto& v : basis) CHECK(is_symmetry(v, b.distribution()).ok);
  std::vector<VectorField> expected{X[0], X[1], X[2], X[3], X[4] - X[5]};
  CHECK(fields_in_span(basis, expected, 1));
}

TEST_CASE("degree-0 symmetries of rule A are the translations") {
  auto a = build_rule_a();
  auto X = projective_symmetries(a.chart);
  auto basis = solve_symmetries(a.distribution(), 0);
  CHECK(basis.size() == 2);
  CHECK(fields_in_span(basis, {X[0], X[1]}, 0));
  CHECK(fields_in_span({X[0], X[1]}, basis, 0));
}

TEST_CASE("first integrals") {
  auto a = build_rule_a();
  auto b = build_rule_b();
  CHECK(check_first_integral(b.distribution(), b.area32));
  CHECK_FALSE(check_first_integral(a.distribution(), a.area32));
  auto aff = build_affine_model();
  CHECK(check_first_integral(aff.rank3_distribution(), aff.det_h));
}

TEST_CASE("structure constants of the full symmetry algebra") {
  auto a = build_rule_a();
  auto X = projective_symmetries(a.chart);
  auto table = structure_constants({X.begin(), X.end()});
  CHECK(table.basis.size() == 8);
  CHECK(table.jacobi_holds());
  CHECK(table.killing_signature == Signature{5, 3, 0});
}

TEST_CASE("five-dimensional subalgebra with abelian translation ideal") {
  auto a = build_rule_a();
  auto X = projective_symmetries(a.chart);
  std::vector<VectorField> gens{X[0], X[1], X[2], X[3], X[4] - X[5]};
  auto table = structure_constants(gens);
  CHECK(table.basis.size() == 5);
  CHECK(table.jacobi_holds());
  // [X1, X2] = 0
  for (const auto& c : table.structure_constants[0][1]) CHECK(c == 0);
  // brackets with X1, X2 stay inside span(X1, X2)
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j : {std::size_t(0), std::size_t(1)})
      for (std::size_t k = 2; k < 5; ++k)
        CHECK(table.structure_constants[i][j][k] == 0);
}

TEST_CASE("structure constants of the affine line algebra") {
  auto ch = make_chart({"x"});
  auto dx = VectorField::coordinate(ch, 0);
  VectorField xdx(ch);
  xdx.set_component(0, RationalFn::variable(ch, "x"));
  auto table = structure_constants({dx, xdx});
  CHECK(table.structure_constants[0][1] == RatVector{1, 0});
  CHECK(table.structure_constants[1][0] == RatVector{-1, 0});
}

TEST_CASE("structure constants reject a non-closed span") {
  auto ch = make_chart({"x"});
  VectorField x2dx(ch);
  auto x = MultiPoly::variable(ch, std::size_t(0));
  x2dx.set_component(0, RationalFn(x * x));
  CHECK_THROWS(structure_constants({VectorField::coordinate(ch, 0), x2dx}));
}

TEST_CASE("integrability") {
  auto b = build_rule_b();
  CHECK(is_integrable(Distribution(rule_b_d1(b))));
  CHECK_FALSE(is_integrable(square_root_distribution(b)));
  auto ch = make_chart({"x", "y"});
  CHECK(is_integrable(Distribution(
      {VectorField::coordinate(ch, 0), VectorField::coordinate(ch, 1)})));
}

TEST_CASE("leaf-aware point sampling") {
  auto b = build_rule_b();
  auto sq = square_root_distribution(b, Rational(-1));
  std::mt19937_64 rng(12345);
  auto pt = sample_point(sq, rng);
  CHECK(b.area32.evaluate(pt) == -1);
}
