#include "ants/vectorfield.hpp"

#include <sstream>

namespace ants {

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)) {
  comps_.assign(chart_->arity(), RationalFn(MultiPoly(chart_)));
}

VectorField::VectorField(ChartPtr chart, std::vector<RationalFn> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
  if (comps_.size() != chart_->arity())
    throw std::invalid_argument("VectorField: component count mismatch");
  for (const auto& c : comps_)
    require_same_chart(chart_, c.chart(), "VectorField");
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t index) {
  VectorField v(chart);
  v.comps_[index] = RationalFn::constant(v.chart_, 1);
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_chart(chart_, o.chart_, "VectorField::operator+");
  VectorField r = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] += o.comps_[i];
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  return *this + (-o);
}

VectorField VectorField::operator*(const Rational& c) const {
  VectorField r = *this;
  for (auto& x : r.comps_) x = x * c;
  return r;
}

VectorField VectorField::operator*(const RationalFn& f) const {
  VectorField r = *this;
  for (auto& x : r.comps_) x = x * f;
  return r;
}

bool VectorField::operator==(const VectorField& o) const {
  require_same_chart(chart_, o.chart_, "VectorField::operator==");
  return comps_ == o.comps_;
}

RationalFn VectorField::apply(const RationalFn& f) const {
  require_same_chart(chart_, f.chart(), "VectorField::apply");
  RationalFn acc = RationalFn::constant(chart_, 0);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    acc += comps_[i] * f.derivative(i);
  }
  return acc;
}

RationalFn VectorField::apply(const MultiPoly& f) const {
  return apply(RationalFn(f));
}

std::vector<Rational> VectorField::evaluate(
    const std::vector<Rational>& point) const {
  std::vector<Rational> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point));
  return out;
}

std::vector<double> VectorField::evaluate(const std::vector<double>& point) const {
  std::vector<double> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point));
  return out;
}

std::string VectorField::str() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << comps_[i].str() << ")*d/d" << chart_->var(i);
  }
  if (first) out << "0";
  return out.str();
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  require_same_chart(v.chart(), w.chart(), "lie_bracket");
  VectorField r(v.chart());
  for (std::size_t k = 0; k < v.chart()->arity(); ++k)
    r.set_component(k, v.apply(w.component(k)) - w.apply(v.component(k)));
  return r;
}

namespace {

RationalFn det_recursive(const std::vector<std::vector<RationalFn>>& m,
                         std::vector<std::size_t> cols, std::size_t row,
                         const ChartPtr& chart) {
  if (cols.empty()) return RationalFn::constant(chart, 1);
  RationalFn acc = RationalFn::constant(chart, 0);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const RationalFn& a = m[row][cols[j]];
    if (a.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != j) rest.push_back(cols[k]);
    RationalFn sub = det_recursive(m, rest, row + 1, chart);
    if (j % 2 == 0)
      acc += a * sub;
    else
      acc -= a * sub;
  }
  return acc;
}

}  // namespace

RationalFn top_wedge_determinant(const std::vector<VectorField>& fields) {
  if (fields.empty())
    throw std::invalid_argument("top_wedge_determinant: no fields");
  const ChartPtr& chart = fields[0].chart();
  std::size_t n = chart->arity();
  if (fields.size() != n)
    throw std::invalid_argument(
        "top_wedge_determinant: need exactly one field per chart variable");
  std::vector<std::vector<RationalFn>> m;
  for (const auto& f : fields) {
    require_same_chart(chart, f.chart(), "top_wedge_determinant");
    m.push_back(f.components());
  }
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return det_recursive(m, cols, 0, chart);
}

}  // namespace ants
