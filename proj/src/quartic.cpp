#include "ants/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ants {

namespace {

// Dense univariate polynomials, coefficients by ascending degree, no trailing
// zeros.
using Uni = std::vector<Rational>;

void trim(Uni& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Uni& p) { return int(p.size()) - 1; }  // -1 for zero

Uni derivative(const Uni& p) {
  Uni d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(i));
  trim(d);
  return d;
}

// Remainder of a by b, b != 0.
Uni rem(Uni a, const Uni& b) {
  trim(a);
  while (deg(a) >= deg(b)) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Uni quot(Uni a, const Uni& b) {
  trim(a);
  Uni q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (deg(a) >= deg(b)) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

Uni monic(Uni p) {
  trim(p);
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

Uni gcd_uni(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

// Square-free factors: returns (factor, multiplicity), multiplicities
// ascending, each factor square-free; product of factor^mult is monic(p).
std::vector<std::pair<Uni, unsigned>> squarefree(const Uni& p) {
  std::vector<std::pair<Uni, unsigned>> out;
  Uni f = monic(p);
  if (deg(f) < 1) return out;
  // Yun's algorithm.
  Uni fp = derivative(f);
  Uni a = gcd_uni(f, fp);
  Uni b = quot(f, a);
  Uni c = quot(fp, a);
  unsigned m = 1;
  while (deg(b) > 0) {
    Uni d = c;
    Uni bp = derivative(b);
    for (std::size_t i = 0; i < bp.size(); ++i) {
      if (i >= d.size()) d.push_back(-bp[i]);
      else d[i] -= bp[i];
    }
    trim(d);
    Uni g = gcd_uni(b, d);
    if (deg(g) > 0) out.emplace_back(monic(g), m);
    b = quot(b, g.empty() ? Uni{Rational(1)} : g);
    if (!d.empty())
      c = quot(d, g.empty() ? Uni{Rational(1)} : g);
    else
      c = Uni{};
    ++m;
  }
  return out;
}

int sign_at_pinf(const Uni& p) { return p.empty() ? 0 : sign(p.back()); }
int sign_at_minf(const Uni& p) {
  if (p.empty()) return 0;
  int s = sign(p.back());
  return (deg(p) % 2 == 0) ? s : -s;
}

// Number of distinct real roots of a square-free polynomial.
unsigned sturm_real_roots(const Uni& p) {
  if (deg(p) < 1) return 0;
  std::vector<Uni> chain{p, derivative(p)};
  while (deg(chain.back()) > 0) {
    Uni r = rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    trim(r);
    if (r.empty()) break;  // square-free input keeps the chain nonvanishing
    chain.push_back(std::move(r));
  }
  auto changes = [&](auto at) {
    int last = 0, n = 0;
    for (const auto& q : chain) {
      int s = at(q);
      if (s == 0) continue;
      if (last != 0 && s != last) ++n;
      last = s;
    }
    return n;
  };
  int lo = changes([](const Uni& q) { return sign_at_minf(q); });
  int hi = changes([](const Uni& q) { return sign_at_pinf(q); });
  return unsigned(lo - hi);
}

RatMatrix mat2(const Rational& a, const Rational& b, const Rational& c,
               const Rational& d) {
  return RatMatrix{{a, b}, {c, d}};
}

Rational tri_det(const Triangle& t) {
  Rational ux = t[1][0] - t[0][0], uy = t[1][1] - t[0][1];
  Rational vx = t[2][0] - t[0][0], vy = t[2][1] - t[0][1];
  return ux * vy - uy * vx;
}

}  // namespace

Ellipse steiner_circumellipse(const Triangle& t) {
  Rational det = tri_det(t);
  if (det == 0)
    throw std::invalid_argument("steiner_circumellipse: degenerate triangle");
  // Gram of the ellipse of the triangle (0,0),(1,0),(0,1), center (1/3,1/3).
  RatMatrix g0 = mat2(3, Rational(3, 2), Rational(3, 2), 3);
  // phi(e) = v0 + M e with M columns the edge vectors.
  Rational m00 = t[1][0] - t[0][0], m01 = t[2][0] - t[0][0];
  Rational m10 = t[1][1] - t[0][1], m11 = t[2][1] - t[0][1];
  // gram = M^{-T} g0 M^{-1}
  RatMatrix inv = mat2(m11 / det, -m01 / det, -m10 / det, m00 / det);
  RatMatrix out = mat2(0, 0, 0, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out[i][j] += inv[k][i] * g0[k][l] * inv[l][j];
  Ellipse e;
  e.center = {(t[0][0] + t[1][0] + t[2][0]) / 3,
              (t[0][1] + t[1][1] + t[2][1]) / 3};
  e.gram = std::move(out);
  return e;
}

Rational ellipse_norm_sq(const Ellipse& e, const PlanarPoint& v) {
  Rational s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += v[i] * e.gram[i][j] * v[j];
  return s;
}

double ellipse_norm(const Ellipse& e, const std::array<double, 2>& v) {
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += v[i] * to_double(e.gram[i][j]) * v[j];
  return std::sqrt(s);
}

Rational subriemannian_speed_sq(const Triangle& t,
                                const std::array<Rational, 3>& u) {
  if (u[0] + u[1] + u[2] != 0)
    throw std::invalid_argument("subriemannian_speed: u1+u2+u3 != 0");
  Ellipse e = steiner_circumellipse(t);
  Rational s = 0;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    PlanarPoint vel{u[i] * (t[j][0] - t[k][0]), u[i] * (t[j][1] - t[k][1])};
    s += ellipse_norm_sq(e, vel);
  }
  return s;
}

double subriemannian_speed(const Triangle& t, const std::array<double, 3>& u,
                           double sum_tol) {
  if (std::abs(u[0] + u[1] + u[2]) > sum_tol)
    throw std::invalid_argument("subriemannian_speed: u1+u2+u3 != 0");
  Ellipse e = steiner_circumellipse(t);
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    std::array<double, 2> vel{
        u[i] * to_double(t[j][0] - t[k][0]),
        u[i] * to_double(t[j][1] - t[k][1])};
    double n = ellipse_norm(e, vel);
    s += n * n;
  }
  return s;
}

bool BinaryQuartic::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

BinaryQuartic cartan_quartic(const Rational& c) {
  if (c == 0) throw std::invalid_argument("cartan_quartic: c must be nonzero");
  // c (u1^2+u2^2+u3^2)^2 with u3 = -u1-u2 equals 4c (u1^2+u1 u2+u2^2)^2.
  return BinaryQuartic{{4 * c, 8 * c, 12 * c, 8 * c, 4 * c}};
}

unsigned RootType::real_count_with_multiplicity() const {
  unsigned n = 0;
  for (unsigned m : real_multiplicities) n += m;
  return n;
}

RootType classify_quartic(const BinaryQuartic& q) {
  if (q.is_zero())
    throw std::invalid_argument("classify_quartic: zero quartic");
  RootType out;
  // Dehomogenize at u2 = 1: f(x) = c0 x^4 + c1 x^3 + c2 x^2 + c3 x + c4.
  Uni f{q.c[4], q.c[3], q.c[2], q.c[1], q.c[0]};
  trim(f);
  out.infinity_multiplicity = unsigned(4 - deg(f));
  if (out.infinity_multiplicity > 0)
    out.real_multiplicities.push_back(out.infinity_multiplicity);
  for (auto& [fac, mult] : squarefree(f)) {
    RootType::Factor rec;
    rec.coeffs.assign(fac.rbegin(), fac.rend());
    rec.multiplicity = mult;
    rec.real_roots = sturm_real_roots(fac);
    for (unsigned r = 0; r < rec.real_roots; ++r)
      out.real_multiplicities.push_back(mult);
    out.factors.push_back(std::move(rec));
  }
  std::sort(out.real_multiplicities.rbegin(), out.real_multiplicities.rend());
  unsigned total = out.real_count_with_multiplicity();
  bool all_simple = out.real_multiplicities.empty() ||
                    out.real_multiplicities.front() == 1;
  if (total == 0)
    out.tag = "no_real";
  else if (total == 4 && all_simple)
    out.tag = "four_distinct_real";
  else if (total == 2 && all_simple)
    out.tag = "two_real_two_complex";
  else {
    std::ostringstream os;
    os << "real_roots_mult";
    for (unsigned m : out.real_multiplicities) os << "_" << m;
    out.tag = os.str();
  }
  return out;
}

std::pair<std::size_t, std::size_t> metric_signature(const RatMatrix& gram) {
  Signature s = symmetric_signature(gram);
  if (s.zeros != 0) {
    std::ostringstream os;
    os << "metric_signature: degenerate matrix, rank "
       << (s.positives + s.negatives) << " of " << gram.size();
    throw std::domain_error(os.str());
  }
  return {s.positives, s.negatives};
}

}  // namespace ants
