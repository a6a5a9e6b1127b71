#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ants/chart.hpp"
#include "ants/rational.hpp"

namespace ants {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order in chart order: compare total degree first,
// then exponents left to right.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients on a chart.
/// No zero coefficient is ever stored; terms are kept in graded-lex order.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(ChartPtr chart) : chart_(std::move(chart)) {}
  MultiPoly(ChartPtr chart, const Rational& c);

  static MultiPoly constant(ChartPtr chart, const Rational& c);
  static MultiPoly variable(ChartPtr chart, std::size_t index);
  static MultiPoly variable(ChartPtr chart, const std::string& name);

  const ChartPtr& chart() const { return chart_; }
  const std::map<Exponents, Rational, GradedLexLess>& terms() const {
    return terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  std::uint32_t degree() const;     // total degree, 0 for the zero polynomial
  std::uint32_t degree_in(std::size_t var) const;

  void set_coeff(const Exponents& e, const Rational& c);
  Rational coeff(const Exponents& e) const;
  // Leading term in graded-lex order.
  const Exponents& leading_exponents() const;
  const Rational& leading_coeff() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(std::size_t var) const;

  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;

  /// Exact quotient; throws if the division is not exact.
  MultiPoly divide_exact(const MultiPoly& d) const;

  /// Canonical text form: terms in descending graded-lex order, e.g.
  /// "3*x1^2*y2 - 1/2*y3 + 1".
  std::string str() const;

  friend MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

 private:
  ChartPtr chart_;
  std::map<Exponents, Rational, GradedLexLess> terms_;
};

/// Multivariate gcd via content/primitive-part recursion (primitive PRS).
/// Result is integer-primitive with positive leading coefficient.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace ants
