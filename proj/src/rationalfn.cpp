#include "ants/rationalfn.hpp"

#include <sstream>

namespace ants {

RationalFn::RationalFn(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.chart(), 1)) {}

RationalFn::RationalFn(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  require_same_chart(num_.chart(), den_.chart(), "RationalFn");
  if (den_.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
  reduce();
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(den_.chart(), 1);
    return;
  }
  MultiPoly g = gcd(num_, den_);
  if (!g.is_constant() || g.constant_value() != 1) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  // Make den integer-primitive with positive leading coefficient.
  Rational c = 0;
  for (const auto& [e, k] : den_.terms()) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (c == 0)
      c = abs(k);
    else
      c = Rational(gcd(abs(numerator(c)), abs(numerator(k))),
                   lcm(denominator(c), denominator(k)));
  }
  if (den_.leading_coeff() < 0) c = -c;
  Rational inv = Rational(1) / c;
  num_ = num_ * inv;
  den_ = den_ * inv;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.num_.is_zero()) throw std::invalid_argument("RationalFn: division by zero");
  return RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::operator*(const Rational& c) const {
  return RationalFn(num_ * c, den_);
}

RationalFn RationalFn::derivative(std::size_t var) const {
  // (n/d)' = (n'd - nd') / d^2
  return RationalFn(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                    den_ * den_);
}

Rational RationalFn::evaluate(const std::vector<Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0)
    throw SingularPointError("RationalFn: denominator " + den_.str() +
                             " vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

double RationalFn::evaluate(const std::vector<double>& point) const {
  double d = den_.evaluate(point);
  if (d == 0.0)
    throw SingularPointError("RationalFn: denominator " + den_.str() +
                             " vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

std::string RationalFn::str() const {
  if (is_polynomial() && den_.constant_value() == 1) return num_.str();
  std::ostringstream out;
  out << "(" << num_.str() << ") / (" << den_.str() << ")";
  return out.str();
}

RationalFn substitute(const MultiPoly& p, const ChartPtr& target,
                      const std::vector<RationalFn>& bindings) {
  if (bindings.size() != p.chart()->arity())
    throw std::invalid_argument("substitute: binding count mismatch");
  for (const auto& b : bindings)
    require_same_chart(target, b.chart(), "substitute");
  RationalFn acc = RationalFn::constant(target, 0);
  for (const auto& [e, c] : p.terms()) {
    RationalFn t = RationalFn::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= bindings[i];
    acc += t;
  }
  return acc;
}

RationalFn substitute(const RationalFn& f, const ChartPtr& target,
                      const std::vector<RationalFn>& bindings) {
  RationalFn d = substitute(f.den(), target, bindings);
  if (d.is_zero())
    throw SingularPointError("substitute: denominator " + f.den().str() +
                             " maps to the zero function");
  return substitute(f.num(), target, bindings) / d;
}

}  // namespace ants
