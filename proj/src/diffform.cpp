#include "ants/diffform.hpp"

#include <algorithm>
#include <sstream>

namespace ants {

namespace {

// Sorts idx in place, returns the permutation sign, or 0 on a repeat.
int sort_sign(FormIndices& idx) {
  int sign = 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

}  // namespace

DifferentialForm::DifferentialForm(ChartPtr chart, std::size_t degree)
    : chart_(std::move(chart)), degree_(degree) {
  // degree > arity is allowed; such a form is identically zero.
}

DifferentialForm DifferentialForm::d_variable(ChartPtr chart, std::size_t index) {
  DifferentialForm w(chart, 1);
  w.terms_[{static_cast<std::uint32_t>(index)}] = RationalFn::constant(w.chart_, 1);
  return w;
}

DifferentialForm DifferentialForm::from_function(const RationalFn& f) {
  DifferentialForm w(f.chart(), 0);
  if (!f.is_zero()) w.terms_[{}] = f;
  return w;
}

void DifferentialForm::set_coeff(FormIndices idx, RationalFn f) {
  if (idx.size() != degree_)
    throw std::invalid_argument("DifferentialForm::set_coeff: wrong arity");
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] >= idx[i + 1])
      throw std::invalid_argument(
          "DifferentialForm::set_coeff: indices must strictly increase");
  for (auto i : idx)
    if (i >= chart_->arity())
      throw std::out_of_range("DifferentialForm::set_coeff: index out of range");
  require_same_chart(chart_, f.chart(), "DifferentialForm::set_coeff");
  if (f.is_zero())
    terms_.erase(idx);
  else
    terms_[std::move(idx)] = std::move(f);
}

RationalFn DifferentialForm::coeff(const FormIndices& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? RationalFn::constant(chart_, 0) : it->second;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r = *this;
  for (auto& [i, f] : r.terms_) f = -f;
  return r;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  require_same_chart(chart_, o.chart_, "DifferentialForm::operator+");
  if (degree_ != o.degree_)
    throw std::invalid_argument("DifferentialForm: degree mismatch in sum");
  DifferentialForm r = *this;
  for (const auto& [i, f] : o.terms_) {
    auto it = r.terms_.find(i);
    if (it == r.terms_.end()) {
      r.terms_[i] = f;
    } else {
      it->second += f;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const {
  return *this + (-o);
}

DifferentialForm DifferentialForm::operator*(const Rational& c) const {
  DifferentialForm r(chart_, degree_);
  if (c == 0) return r;
  for (const auto& [i, f] : terms_) r.terms_[i] = f * c;
  return r;
}

DifferentialForm DifferentialForm::operator*(const RationalFn& f) const {
  DifferentialForm r(chart_, degree_);
  if (f.is_zero()) return r;
  for (const auto& [i, g] : terms_) {
    RationalFn p = g * f;
    if (!p.is_zero()) r.terms_[i] = std::move(p);
  }
  return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const {
  require_same_chart(chart_, o.chart_, "DifferentialForm::operator==");
  return degree_ == o.degree_ && terms_ == o.terms_;
}

DifferentialForm DifferentialForm::contract(const VectorField& v) const {
  require_same_chart(chart_, v.chart(), "DifferentialForm::contract");
  if (degree_ == 0)
    throw std::invalid_argument("DifferentialForm::contract: 0-form");
  DifferentialForm r(chart_, degree_ - 1);
  for (const auto& [idx, f] : terms_) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const RationalFn& vj = v.component(idx[j]);
      if (vj.is_zero()) continue;
      FormIndices rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (k != j) rest.push_back(idx[k]);
      RationalFn c = f * vj;
      if (j % 2 == 1) c = -c;
      auto it = r.terms_.find(rest);
      if (it == r.terms_.end()) {
        if (!c.is_zero()) r.terms_[rest] = std::move(c);
      } else {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

RationalFn DifferentialForm::apply(const std::vector<VectorField>& vs) const {
  if (vs.size() != degree_)
    throw std::invalid_argument("DifferentialForm::apply: arity mismatch");
  DifferentialForm w = *this;
  // Successive interior products: contracting with v1 first yields w(v1,...,vk).
  for (const auto& v : vs) w = w.contract(v);
  return w.coeff({});
}

std::map<FormIndices, Rational> DifferentialForm::evaluate(
    const std::vector<Rational>& point) const {
  std::map<FormIndices, Rational> out;
  for (const auto& [i, f] : terms_) out[i] = f.evaluate(point);
  return out;
}

std::map<FormIndices, double> DifferentialForm::evaluate(
    const std::vector<double>& point) const {
  std::map<FormIndices, double> out;
  for (const auto& [i, f] : terms_) out[i] = f.evaluate(point);
  return out;
}

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, f] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << f.str() << ")";
    for (std::size_t k = 0; k < idx.size(); ++k)
      out << (k == 0 ? "*" : "∧") << "d" << chart_->var(idx[k]);
  }
  return out.str();
}

DifferentialForm exterior_derivative(const DifferentialForm& w) {
  const ChartPtr& chart = w.chart();
  DifferentialForm r(chart, w.degree() + 1);
  for (const auto& [idx, f] : w.terms()) {
    for (std::size_t m = 0; m < chart->arity(); ++m) {
      RationalFn df = f.derivative(m);
      if (df.is_zero()) continue;
      FormIndices full;
      full.push_back(static_cast<std::uint32_t>(m));
      full.insert(full.end(), idx.begin(), idx.end());
      int s = sort_sign(full);
      if (s == 0) continue;
      DifferentialForm t(chart, w.degree() + 1);
      t.set_coeff(full, s > 0 ? df : -df);
      r += t;
    }
  }
  return r;
}

DifferentialForm exterior_derivative(const RationalFn& f) {
  return exterior_derivative(DifferentialForm::from_function(f));
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  DifferentialForm r(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [ib, fb] : b.terms()) {
      FormIndices idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      int s = sort_sign(idx);
      if (s == 0) continue;
      RationalFn c = fa * fb;
      if (s < 0) c = -c;
      DifferentialForm t(a.chart(), r.degree());
      t.set_coeff(idx, std::move(c));
      r += t;
    }
  }
  return r;
}

DifferentialForm pullback(const DifferentialForm& w, const ChartPtr& target,
                          const std::vector<RationalFn>& bindings) {
  if (bindings.size() != w.chart()->arity())
    throw std::invalid_argument("pullback: binding count mismatch");
  // d(bindings[i]) once per source variable.
  std::vector<DifferentialForm> dx;
  dx.reserve(bindings.size());
  for (const auto& b : bindings) {
    require_same_chart(target, b.chart(), "pullback");
    dx.push_back(exterior_derivative(b));
  }
  DifferentialForm r(target, w.degree());
  for (const auto& [idx, f] : w.terms()) {
    DifferentialForm t = DifferentialForm::from_function(
        substitute(f, target, bindings));
    for (auto i : idx) t = wedge(t, dx[i]);
    r += t;
  }
  return r;
}

}  // namespace ants
