#pragma once

#include <vector>

#include "ants/rationalfn.hpp"

namespace ants {

/// A vector field with rational-function components on a chart.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ChartPtr chart);
  VectorField(ChartPtr chart, std::vector<RationalFn> components);

  static VectorField coordinate(ChartPtr chart, std::size_t index);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<RationalFn>& components() const { return comps_; }
  const RationalFn& component(std::size_t i) const { return comps_.at(i); }
  void set_component(std::size_t i, RationalFn f) { comps_.at(i) = std::move(f); }

  bool is_zero() const;

  VectorField operator-() const;
  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator*(const Rational& c) const;
  VectorField operator*(const RationalFn& f) const;
  bool operator==(const VectorField& o) const;
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  /// Directional derivative v(f).
  RationalFn apply(const RationalFn& f) const;
  RationalFn apply(const MultiPoly& f) const;

  std::vector<Rational> evaluate(const std::vector<Rational>& point) const;
  std::vector<double> evaluate(const std::vector<double>& point) const;

  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<RationalFn> comps_;
};

/// Commutator [v,w], components v(w^k) - w(v^k). Exact.
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// Determinant of the n x n component matrix of n fields on an n-variable
/// chart. Sign convention: rows are the fields in the given order, columns
/// the chart variables in chart order.
RationalFn top_wedge_determinant(const std::vector<VectorField>& fields);

}  // namespace ants
