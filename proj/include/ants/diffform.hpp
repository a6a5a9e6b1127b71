#pragma once

#include <map>
#include <vector>

#include "ants/vectorfield.hpp"

namespace ants {

// Strictly increasing tuple of variable indices (canonical antisymmetric
// representation of a basis k-vector dx_{i1} ^ ... ^ dx_{ik}).
using FormIndices = std::vector<std::uint32_t>;

/// Differential k-form with rational-function coefficients.
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(ChartPtr chart, std::size_t degree);

  /// dx_i
  static DifferentialForm d_variable(ChartPtr chart, std::size_t index);
  static DifferentialForm from_function(const RationalFn& f);  // 0-form

  const ChartPtr& chart() const { return chart_; }
  std::size_t degree() const { return degree_; }
  const std::map<FormIndices, RationalFn>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  void set_coeff(FormIndices idx, RationalFn f);  // idx strictly increasing
  RationalFn coeff(const FormIndices& idx) const;

  DifferentialForm operator-() const;
  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator*(const Rational& c) const;
  DifferentialForm operator*(const RationalFn& f) const;
  DifferentialForm& operator+=(const DifferentialForm& o) { return *this = *this + o; }
  DifferentialForm& operator-=(const DifferentialForm& o) { return *this = *this - o; }
  bool operator==(const DifferentialForm& o) const;
  bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

  /// Interior product with a vector field (degree k-1).
  DifferentialForm contract(const VectorField& v) const;

  /// Full pairing with k vector fields.
  RationalFn apply(const std::vector<VectorField>& vs) const;

  /// Coefficient values at a point, keyed by index tuple.
  std::map<FormIndices, Rational> evaluate(const std::vector<Rational>& point) const;
  std::map<FormIndices, double> evaluate(const std::vector<double>& point) const;

  /// Canonical text form, e.g. "(x1)*dx1∧dy2 + ...", sorted by index tuple.
  std::string str() const;

 private:
  ChartPtr chart_;
  std::size_t degree_ = 0;
  std::map<FormIndices, RationalFn> terms_;
};

/// Exterior derivative; d(d(w)) == 0 identically.
DifferentialForm exterior_derivative(const DifferentialForm& w);
DifferentialForm exterior_derivative(const RationalFn& f);

/// Graded-antisymmetric product.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// Pullback along the map whose component functions are `bindings` (one
/// rational function on the target chart per source variable): coefficients
/// are composed and each dx_i is replaced by d(bindings[i]) (chain rule).
DifferentialForm pullback(const DifferentialForm& w, const ChartPtr& target,
                          const std::vector<RationalFn>& bindings);

}  // namespace ants
