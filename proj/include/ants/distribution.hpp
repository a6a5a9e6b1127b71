#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ants/diffform.hpp"
#include "ants/linalg.hpp"

namespace ants {

/// Restriction to a level set {function = level}. Every generator of a
/// constrained distribution must annihilate `function` exactly.
struct LeafConstraint {
  MultiPoly function;
  Rational level;
};

/// A span of vector fields, optionally restricted to a leaf, with an optional
/// polynomial whose zero locus is the known singular set (used to steer the
/// rational point sampler away from rank-drop points).
class Distribution {
 public:
  Distribution(std::vector<VectorField> generators,
               std::optional<LeafConstraint> leaf = std::nullopt,
               std::optional<MultiPoly> nondegeneracy = std::nullopt);

  const std::vector<VectorField>& generators() const { return gens_; }
  const ChartPtr& chart() const { return chart_; }
  const std::optional<LeafConstraint>& leaf() const { return leaf_; }
  const std::optional<MultiPoly>& nondegeneracy() const { return nondeg_; }

 private:
  std::vector<VectorField> gens_;
  ChartPtr chart_;
  std::optional<LeafConstraint> leaf_;
  std::optional<MultiPoly> nondeg_;
};

struct DerivedFlag {
  std::vector<std::size_t> ranks;  // generic rank of D ⊂ D^1 ⊂ ...
  bool stabilized = false;         // last two entries agree
  std::vector<std::vector<Rational>> witness_points;
};

/// Generic ranks of the derived flag, certified symbolically over the
/// rational-function field and cross-checked at `samples` seeded rational
/// points off the singular locus.
DerivedFlag derived_flag(const Distribution& d, std::size_t max_depth,
                         std::uint64_t seed = 12345, std::size_t samples = 3);

/// Pointwise flag ranks at one point (point must lie on the leaf when a
/// constraint is present).
std::vector<std::size_t> growth_vector(const Distribution& d,
                                       const std::vector<Rational>& point,
                                       std::size_t max_depth = 4);

struct SymmetryCheck {
  bool ok = false;
  std::string residual;  // empty when ok
};

/// [x, D] ⊂ D over the rational-function field (exact); with a leaf
/// constraint, also requires x(constraint) = 0.
SymmetryCheck is_symmetry(const VectorField& x, const Distribution& d);

/// Basis of the space of polynomial vector fields of coefficient degree
/// <= degree with [X, D] ⊂ D (plus leaf tangency when constrained).
std::vector<VectorField> solve_symmetries(const Distribution& d,
                                          unsigned degree);

/// True iff g(f) = 0 exactly for every generator g.
bool check_first_integral(const Distribution& d, const RationalFn& f);
bool check_first_integral(const Distribution& d, const MultiPoly& f);

struct LieAlgebraTable {
  std::vector<VectorField> basis;
  // structure_constants[i][j][k]: coefficient of basis[k] in [basis[i], basis[j]]
  std::vector<std::vector<RatVector>> structure_constants;
  Signature killing_signature;

  RatMatrix killing_form() const;
  bool jacobi_holds() const;
};

/// Expands all pairwise brackets in the given basis; throws if the fields are
/// dependent or the span is not closed under bracket.
LieAlgebraTable structure_constants(const std::vector<VectorField>& fields);

/// True iff every pairwise bracket of generators lies in the generator span.
bool is_integrable(const Distribution& d);

/// Seeded rational point on the (optional) leaf with nondegeneracy != 0.
std::vector<Rational> sample_point(const Distribution& d, std::mt19937_64& rng);

/// Flattens a polynomial vector field into a rational coefficient vector over
/// the monomial basis of degree <= degree (shared layout for span tests).
RatVector field_coefficients(const VectorField& v, unsigned degree);

}  // namespace ants
