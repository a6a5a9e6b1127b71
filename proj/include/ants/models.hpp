#pragma once

#include <array>

#include "ants/distribution.hpp"

namespace ants {

enum class Rule { A, B };

/// The two velocity-constraint models on the planar three-point
/// configuration space, chart (x1,y1,x2,y2,x3,y3). Indices are cyclic mod 3.
struct AntModel {
  Rule rule;
  ChartPtr chart;
  std::array<VectorField, 3> Z;        // spanning fields
  std::array<DifferentialForm, 3> omega;  // annihilator 1-forms
  MultiPoly area32;  // 32 * signed triangle area

  Distribution distribution() const;
};

AntModel build_rule_a();
AntModel build_rule_b();

/// Rank-2 distribution span(Z1-Z2, Z3-Z1) of a rule-B model, restricted to a
/// leaf {area32 = level}. Throws for rule A.
Distribution square_root_distribution(const AntModel& m,
                                      const Rational& level = Rational(-1));

/// Rule-A symmetry basis X1..X8 (projective transformations of the plane).
std::array<VectorField, 8> projective_symmetries(const ChartPtr& ant_chart);

/// Configuration space modeled as the affine group of the plane, chart
/// (a,b,p,q,x,y), acting on the standard triangle (0,0),(1,0),(0,1).
struct AffineModel {
  ChartPtr chart;                       // ambient (a,b,p,q,x,y)
  std::array<VectorField, 3> V;         // single-vertex moves
  std::array<DifferentialForm, 6> tau;  // left-invariant coframe, h^-1 dh
  std::array<RatMatrix, 6> E;           // matching gl(2)+R^2 basis
  MultiPoly det_h;                      // aq - bp
  std::array<DifferentialForm, 5> theta;  // adapted coframe, ambient form

  Rational s;              // leaf level det(h) = s
  ChartPtr leaf_chart;     // (a,b,p,x,y)
  std::vector<RationalFn> leaf_bindings;  // ambient vars on the leaf chart
  std::array<DifferentialForm, 5> theta_leaf;  // theta pulled back to the leaf

  /// Rank-2 distribution span(V1-V3, V2-V1) with leaf {det_h = s}.
  Distribution rank2_distribution() const;
  /// Rank-3 distribution span(V1, V2, V3).
  Distribution rank3_distribution() const;
};

AffineModel build_affine_model(const Rational& s = Rational(1));

struct CoframeReport {
  std::array<DifferentialForm, 5> residual;   // d(theta_i) - rhs_i, ambient
  std::array<bool, 5> ideal_membership;       // residual ^ tau6 == 0
  std::array<bool, 5> leaf_residual_zero;     // pullback of residual == 0
  bool all_pass() const;
};

/// Certifies the constant-coefficient structure equations of the adapted
/// coframe by two independent routes (membership in the ideal of tau6, and
/// pullback to the leaf). `mutate` perturbs one structure constant and is a
/// test hook: it must make the report fail.
CoframeReport verify_structure_equations(const AffineModel& m,
                                         bool mutate = false);

struct ConformalMetric {
  RatMatrix coframe_matrix;  // 5x5, symmetric, in the theta coframe
  const AffineModel* model;

  /// Gram matrix of the metric in leaf coordinates at a leaf point.
  RatMatrix coordinate_gram(const std::vector<Rational>& leaf_point) const;
};

ConformalMetric conformal_metric(const AffineModel& m);

/// Maximally symmetric rank-3 model on (q1,q2,q3,p1,p2,p3): annihilator of
/// dp_i + eps_ijk q^j dq^k.
Distribution build_flat36();
/// Rank-2 model on the quadric p_i q^i = 1 inside the same annihilator.
Distribution build_quadric235();

}  // namespace ants
