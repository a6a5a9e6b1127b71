#pragma once

#include <string>

#include "ants/multipoly.hpp"

namespace ants {

/// Thrown when evaluation or substitution hits a vanishing denominator.
struct SingularPointError : std::runtime_error {
  explicit SingularPointError(const std::string& what) : std::runtime_error(what) {}
};

/// Quotient of two MultiPoly, kept reduced: gcd(num, den) = 1, den nonzero,
/// den integer-primitive with positive leading coefficient (graded-lex).
/// Equality is decidable and the canonical form is unique.
class RationalFn {
 public:
  RationalFn() = default;
  explicit RationalFn(MultiPoly num);
  RationalFn(MultiPoly num, MultiPoly den);

  static RationalFn constant(ChartPtr chart, const Rational& c) {
    return RationalFn(MultiPoly::constant(std::move(chart), c));
  }
  static RationalFn variable(ChartPtr chart, const std::string& name) {
    return RationalFn(MultiPoly::variable(std::move(chart), name));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const ChartPtr& chart() const { return num_.chart(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFn operator-() const;
  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  RationalFn operator*(const Rational& c) const;
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  bool operator==(const RationalFn& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  RationalFn derivative(std::size_t var) const;

  Rational evaluate(const std::vector<Rational>& point) const;
  double evaluate(const std::vector<double>& point) const;

  /// Canonical text form "num / den" (no denominator printed when it is 1).
  std::string str() const;

 private:
  void reduce();

  MultiPoly num_, den_;
};

/// Composition: replace every source-chart variable by the corresponding
/// binding (a rational function on the target chart). Exact.
RationalFn substitute(const MultiPoly& p, const ChartPtr& target,
                      const std::vector<RationalFn>& bindings);
RationalFn substitute(const RationalFn& f, const ChartPtr& target,
                      const std::vector<RationalFn>& bindings);

}  // namespace ants
