#include "ants/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ants {

namespace {

Rational rational_gcd(const Rational& a, const Rational& b) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Integer num = gcd(abs(numerator(a)), abs(numerator(b)));
  Integer den = lcm(denominator(a), denominator(b));
  return Rational(num, den);
}

}  // namespace

MultiPoly::MultiPoly(ChartPtr chart, const Rational& c) : chart_(std::move(chart)) {
  if (c != 0) terms_[Exponents(chart_->arity(), 0)] = c;
}

MultiPoly MultiPoly::constant(ChartPtr chart, const Rational& c) {
  return MultiPoly(std::move(chart), c);
}

MultiPoly MultiPoly::variable(ChartPtr chart, std::size_t index) {
  if (index >= chart->arity())
    throw std::out_of_range("MultiPoly::variable: index out of range");
  MultiPoly p(chart);
  Exponents e(chart->arity(), 0);
  e[index] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::variable(ChartPtr chart, const std::string& name) {
  int i = chart->index_of(name);
  if (i < 0) throw std::invalid_argument("MultiPoly::variable: no variable " + name);
  return variable(chart, static_cast<std::size_t>(i));
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("MultiPoly: not a constant");
  return terms_.begin()->second;
}

std::uint32_t MultiPoly::degree() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = 0;
  const auto& e = terms_.rbegin()->first;  // graded order: last has max degree
  for (auto x : e) d += x;
  return d;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void MultiPoly::set_coeff(const Exponents& e, const Rational& c) {
  if (e.size() != chart_->arity())
    throw std::invalid_argument("MultiPoly::set_coeff: exponent arity mismatch");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

Rational MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw std::logic_error("MultiPoly: zero has no leading term");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("MultiPoly: zero has no leading term");
  return terms_.rbegin()->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(chart_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_same_chart(chart_, o.chart_, "MultiPoly::operator+");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_same_chart(chart_, o.chart_, "MultiPoly::operator*");
  MultiPoly r(chart_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        r.terms_[e] = ca * cb;
        if (r.terms_[e] == 0) r.terms_.erase(e);
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r(chart_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  require_same_chart(chart_, o.chart_, "MultiPoly::operator==");
  return terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.terms_[d] = c * e[var];
  }
  return r;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != chart_->arity())
    throw std::invalid_argument("MultiPoly::evaluate: point arity mismatch");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

double MultiPoly::evaluate(const std::vector<double>& point) const {
  if (point.size() != chart_->arity())
    throw std::invalid_argument("MultiPoly::evaluate: point arity mismatch");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& d) const {
  require_same_chart(chart_, d.chart_, "MultiPoly::divide_exact");
  if (d.is_zero()) throw std::invalid_argument("MultiPoly: division by zero");
  MultiPoly q(chart_);
  MultiPoly r = *this;
  const Exponents& de = d.leading_exponents();
  while (!r.is_zero()) {
    const Exponents& re = r.leading_exponents();
    Exponents qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < de[i]) throw std::domain_error("MultiPoly: inexact division");
      qe[i] = re[i] - de[i];
    }
    Rational qc = r.leading_coeff() / d.leading_coeff();
    MultiPoly t(chart_);
    t.terms_[qe] = qc;
    q += t;
    r -= t * d;
  }
  return q;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Descending graded-lex.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool has_var = std::any_of(e.begin(), e.end(), [](auto x) { return x > 0; });
    if (a != 1 || !has_var) {
      out << a.str();
      if (has_var) out << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << chart_->var(i);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

namespace {

// Rational content: c > 0 such that p/c has coprime integer coefficients.
Rational rational_content(const MultiPoly& p) {
  Rational c = 0;
  for (const auto& [e, k] : p.terms()) c = rational_gcd(c, k);
  return c;
}

MultiPoly normalize_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (p.leading_coeff() < 0) c = -c;
  return p * (Rational(1) / c);
}

int highest_var(const MultiPoly& p) {
  int v = -1;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) v = std::max(v, static_cast<int>(i));
  return v;
}

// Coefficients of p viewed as univariate in var v (entries live on the same
// chart with zero exponent in v).
std::vector<MultiPoly> univariate_coeffs(const MultiPoly& p, std::size_t v) {
  std::uint32_t d = p.degree_in(v);
  std::vector<MultiPoly> cs(d + 1, MultiPoly(p.chart()));
  for (const auto& [e, c] : p.terms()) {
    Exponents r = e;
    std::uint32_t k = r[v];
    r[v] = 0;
    cs[k].set_coeff(r, c);
  }
  return cs;
}

MultiPoly from_univariate(const std::vector<MultiPoly>& cs, std::size_t v,
                          const ChartPtr& chart) {
  MultiPoly p(chart);
  MultiPoly x = MultiPoly::variable(chart, v);
  MultiPoly xe = MultiPoly::constant(chart, 1);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    p += cs[k] * xe;
    xe *= x;
  }
  return p;
}

// Content of p with respect to variable v (gcd of univariate coefficients).
MultiPoly content_in(const MultiPoly& p, std::size_t v) {
  MultiPoly c(p.chart());
  for (const auto& q : univariate_coeffs(p, v)) c = gcd(c, q);
  return c;
}

// Pseudo-remainder of f by g in variable v (deg_v(g) >= 1).
MultiPoly prem(MultiPoly f, const MultiPoly& g, std::size_t v) {
  std::uint32_t dg = g.degree_in(v);
  auto gc = univariate_coeffs(g, v);
  const MultiPoly& glc = gc[dg];
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    std::uint32_t df = f.degree_in(v);
    auto fc = univariate_coeffs(f, v);
    MultiPoly shift = MultiPoly::constant(f.chart(), 1);
    MultiPoly x = MultiPoly::variable(f.chart(), v);
    for (std::uint32_t k = 0; k < df - dg; ++k) shift *= x;
    f = f * glc - g * (fc[df] * shift);
  }
  return f;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  require_same_chart(a.chart(), b.chart(), "gcd");
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.chart(), 1);
  int va = highest_var(a), vb = highest_var(b);
  std::size_t v = static_cast<std::size_t>(std::max(va, vb));
  if (va != vb && (va < 0 || vb < 0 || a.degree_in(v) == 0 || b.degree_in(v) == 0)) {
    // v occurs in only one operand: recurse into its content.
    if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
    return gcd(content_in(a, v), b);
  }
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly f = a.divide_exact(ca), g = b.divide_exact(cb);
  if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
  // Primitive PRS.
  while (true) {
    MultiPoly r = prem(f, g, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return normalize_primitive(c);
    f = g;
    g = r.divide_exact(content_in(r, v));
  }
  return normalize_primitive(c * g.divide_exact(content_in(g, v)));
}

}  // namespace ants
