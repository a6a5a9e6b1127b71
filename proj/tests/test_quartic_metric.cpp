#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "ants/quartic.hpp"

using namespace ants;

namespace {

Triangle tri(long ax, long ay, long bx, long by, long cx, long cy) {
  return Triangle{PlanarPoint{Rational(ax), Rational(ay)},
                  PlanarPoint{Rational(bx), Rational(by)},
                  PlanarPoint{Rational(cx), Rational(cy)}};
}

// Conic A x^2 + B xy + C y^2 + D x + E y + F evaluated at a point.
Rational conic_at(const RatVector& c, const PlanarPoint& p) {
  const Rational &x = p[0], &y = p[1];
  return c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y +
         c[5];
}

// Distinct real roots of a quartic with no repeated complex roots, by
// Durand-Kerner iteration; returns -1 when the verdict is ill-conditioned.
int float_real_roots(const std::array<Rational, 5>& c) {
  double a[5];
  for (int i = 0; i < 5; ++i) a[i] = to_double(c[i]);
  // dehomogenize at u2 = 1 (descending coefficients a0..a4); drop leading
  // zeros, infinity roots are counted by the caller via the exact path.
  int lead = 0;
  while (lead < 4 && a[lead] == 0) ++lead;
  int deg = 4 - lead;
  if (deg == 0) return 0;
  std::vector<std::complex<double>> p(a + lead, a + 5);
  const std::complex<double> lc = p.front();
  for (auto& x : p) x /= lc;
  std::vector<std::complex<double>> r(deg);
  for (int i = 0; i < deg; ++i)
    r[i] = std::pow(std::complex<double>(0.4, 0.9), i + 1);
  for (int it = 0; it < 400; ++it) {
    double move = 0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> val = 0;
      for (const auto& coef : p) val = val * r[i] + coef;
      std::complex<double> den = 1;
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= r[i] - r[j];
      auto delta = val / den;
      r[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-13) break;
  }
  int real = 0;
  for (const auto& root : r) {
    double im = std::abs(root.imag()) / (1 + std::abs(root));
    if (im < 1e-8)
      ++real;
    else if (im < 1e-4)
      return -1;  // too close to the real axis to trust
  }
  return real;
}

}  // namespace

TEST_CASE("steiner circumellipse of the standard triangle") {
  auto t = tri(0, 0, 1, 0, 0, 1);
  auto e = steiner_circumellipse(t);
  CHECK(e.center[0] == Rational(1, 3));
  CHECK(e.center[1] == Rational(1, 3));
  // matches the conic x^2 + xy + y^2 - x - y = 0 (vertices on the curve)
  RatVector conic{1, 1, 1, -1, -1, 0};
  for (const auto& v : t) {
    CHECK(conic_at(conic, v) == 0);
    PlanarPoint r{v[0] - e.center[0], v[1] - e.center[1]};
    CHECK(ellipse_norm_sq(e, r) == 1);
  }
  // positive definite gram
  CHECK(e.gram[0][0] > 0);
  CHECK(e.gram[0][0] * e.gram[1][1] - e.gram[0][1] * e.gram[1][0] > 0);
  CHECK(e.gram[0][1] == e.gram[1][0]);
}

TEST_CASE("degenerate triangles are rejected") {
  CHECK_THROWS_AS(steiner_circumellipse(tri(0, 0, 1, 1, 2, 2)),
                  std::invalid_argument);
}

TEST_CASE("vertex tangents are parallel to the opposite sides") {
  for (auto& t : {tri(0, 0, 1, 0, 0, 1), tri(1, 2, 4, 3, 2, 7),
                  tri(-3, 1, 0, -2, 5, 4)}) {
    auto e = steiner_circumellipse(t);
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      PlanarPoint r{t[i][0] - e.center[0], t[i][1] - e.center[1]};
      PlanarPoint side{t[j][0] - t[k][0], t[j][1] - t[k][1]};
      Rational pairing = 0;
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) pairing += r[u] * e.gram[u][v] * side[v];
      CHECK(pairing == 0);
    }
  }
}

TEST_CASE("ellipse agrees with the five conic constraints") {
  // Independent route: solve for the conic through the vertices with vertex
  // tangents parallel to the opposite sides, then compare with the
  // affine-transport ellipse.
  auto t = tri(1, 2, 4, 3, 2, 7);
  RatMatrix m;
  auto row_point = [](const PlanarPoint& p) {
    const Rational &x = p[0], &y = p[1];
    return RatVector{x * x, x * y, y * y, x, y, 1};
  };
  for (const auto& v : t) m.push_back(row_point(v));
  // gradient (2Ax+By+D, Bx+2Cy+E) dotted with the opposite side direction
  for (int i = 0; i < 2; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    const Rational &x = t[i][0], &y = t[i][1];
    Rational sx = t[j][0] - t[k][0], sy = t[j][1] - t[k][1];
    m.push_back(RatVector{2 * x * sx, y * sx + x * sy, 2 * y * sy, sx, sy, 0});
  }
  auto basis = nullspace(m, 6);
  REQUIRE(basis.size() == 1);
  RatVector conic = basis[0];

  auto e = steiner_circumellipse(t);
  // expand (r - c)^T G (r - c) - 1 into conic coefficients
  const Rational &g00 = e.gram[0][0], &g01 = e.gram[0][1], &g11 = e.gram[1][1];
  const Rational &cx = e.center[0], &cy = e.center[1];
  RatVector mine{g00,
                 2 * g01,
                 g11,
                 -2 * (g00 * cx + g01 * cy),
                 -2 * (g01 * cx + g11 * cy),
                 g00 * cx * cx + 2 * g01 * cx * cy + g11 * cy * cy - 1};
  // proportional nonzero vectors describe the same conic
  Rational ratio = 0;
  for (int i = 0; i < 6; ++i)
    if (conic[i] != 0) {
      ratio = mine[i] / conic[i];
      break;
    }
  REQUIRE(ratio != 0);
  for (int i = 0; i < 6; ++i) CHECK(mine[i] == conic[i] * ratio);
}

TEST_CASE("equivariance under affine maps") {
  auto t = tri(1, 2, 4, 3, 2, 7);
  auto e1 = steiner_circumellipse(t);
  // z -> Mz + w with M = [[2,1],[1,1]] (area preserving), w = (3,-2)
  Triangle img;
  for (int i = 0; i < 3; ++i) {
    img[i][0] = 2 * t[i][0] + t[i][1] + 3;
    img[i][1] = t[i][0] + t[i][1] - 2;
  }
  auto e2 = steiner_circumellipse(img);
  CHECK(e2.center[0] == 2 * e1.center[0] + e1.center[1] + 3);
  CHECK(e2.center[1] == e1.center[0] + e1.center[1] - 2);
  Rational mi[2][2] = {{1, -1}, {-1, 2}};  // M^{-1}
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rational s = 0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s += mi[k][i] * e1.gram[k][l] * mi[l][j];
      CHECK(e2.gram[i][j] == s);
    }
}

TEST_CASE("ellipse norms on the unit circle") {
  Ellipse circle{{Rational(0), Rational(0)},
                 RatMatrix{{Rational(1), Rational(0)},
                           {Rational(0), Rational(1)}}};
  CHECK(ellipse_norm_sq(circle, {Rational(1), Rational(0)}) == 1);
  CHECK(ellipse_norm_sq(circle, {Rational(3), Rational(4)}) == 25);
  CHECK(ellipse_norm(circle, {3.0, 4.0}) == doctest::Approx(5).epsilon(1e-15));
}

TEST_CASE("sub-riemannian speed") {
  auto t = tri(0, 0, 1, 0, 0, 1);
  CHECK(subriemannian_speed_sq(t, {Rational(0), Rational(0), Rational(0)}) ==
        0);
  CHECK_THROWS_AS(
      subriemannian_speed_sq(t, {Rational(1), Rational(1), Rational(1)}),
      std::invalid_argument);

  // speed^2 = 3 (u1^2 + u2^2 + u3^2) for every triangle and admissible u
  std::mt19937_64 rng(31337);
  auto coord = [&]() { return Rational(int(rng() % 19) - 9); };
  for (int trial = 0; trial < 12; ++trial) {
    Triangle tt;
    do {
      for (auto& v : tt)
        for (auto& c : v) c = coord();
    } while ((tt[1][0] - tt[0][0]) * (tt[2][1] - tt[0][1]) ==
             (tt[1][1] - tt[0][1]) * (tt[2][0] - tt[0][0]));
    Rational u1 = coord(), u2 = coord();
    std::array<Rational, 3> u{u1, u2, -u1 - u2};
    Rational s2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    CHECK(subriemannian_speed_sq(tt, u) == Rational(3) * s2);
  }

  // float entry point: relative spread of speed / sum u_i^2 below 1e-9
  double lo = 1e300, hi = 0;
  for (auto& tt : {tri(0, 0, 1, 0, 0, 1), tri(1, 2, 4, 3, 2, 7)}) {
    for (auto u1 : {0.3, -1.7}) {
      std::array<double, 3> u{u1, 0.9, -u1 - 0.9};
      double k = subriemannian_speed(tt, u) /
                 (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  CHECK((hi - lo) / hi < 1e-9);
  CHECK(hi == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("cartan quartic restriction") {
  CHECK_THROWS_AS(cartan_quartic(Rational(0)), std::invalid_argument);
  auto q = cartan_quartic(Rational(1));
  CHECK(q.c == std::array<Rational, 5>{4, 8, 12, 8, 4});
  auto qn = cartan_quartic(Rational(-1));
  for (int i = 0; i < 5; ++i) CHECK(qn.c[i] == -q.c[i]);

  // cyclic invariance on the constraint line: value at (u1, u2) equals the
  // value at (u2, u3) = (u2, -u1-u2)
  auto eval = [](const BinaryQuartic& b, const Rational& x, const Rational& y) {
    return b.c[0] * x * x * x * x + b.c[1] * x * x * x * y +
           b.c[2] * x * x * y * y + b.c[3] * x * y * y * y +
           b.c[4] * y * y * y * y;
  };
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      CHECK(eval(q, Rational(x), Rational(y)) ==
            eval(q, Rational(y), Rational(-x - y)));
}

TEST_CASE("quartic classification tags") {
  CHECK_THROWS_AS(classify_quartic(BinaryQuartic{}), std::invalid_argument);

  for (Rational c : {Rational(1), Rational(-1), Rational(7, 3),
                     Rational(-7, 3), Rational(5)})
    CHECK(classify_quartic(cartan_quartic(c)).tag == "no_real");

  // u1^4: one real projective root of multiplicity 4
  auto r1 = classify_quartic(BinaryQuartic{{1, 0, 0, 0, 0}});
  CHECK(r1.tag == "real_roots_mult_4");
  CHECK(r1.real_multiplicities == std::vector<unsigned>{4});
  CHECK(r1.infinity_multiplicity == 0);

  // u2^4: the same pattern at infinity
  auto r2 = classify_quartic(BinaryQuartic{{0, 0, 0, 0, 1}});
  CHECK(r2.tag == "real_roots_mult_4");
  CHECK(r2.infinity_multiplicity == 4);

  // u1 u2 (u1 - u2)(u1 + u2) = u1^3 u2 - u1 u2^3
  auto r3 = classify_quartic(BinaryQuartic{{0, 1, 0, -1, 0}});
  CHECK(r3.tag == "four_distinct_real");
  CHECK(r3.infinity_multiplicity == 1);
  CHECK(r3.real_count_with_multiplicity() == 4);

  // (u1^2 + u2^2)(u1 - u2)(u1 + u2) = u1^4 - u2^4
  auto r4 = classify_quartic(BinaryQuartic{{1, 0, 0, 0, -1}});
  CHECK(r4.tag == "two_real_two_complex");

  // (u1 - u2)^2 (u1^2 + u2^2)
  // = u1^4 - 2 u1^3 u2 + 2 u1^2 u2^2 - 2 u1 u2^3 + u2^4
  auto r5 = classify_quartic(BinaryQuartic{{1, -2, 2, -2, 1}});
  CHECK(r5.tag == "real_roots_mult_2");
}

TEST_CASE("classification agrees with a float root oracle") {
  std::mt19937_64 rng(424242);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    BinaryQuartic q;
    for (auto& c : q.c) c = Rational(int(rng() % 19) - 9);
    if (q.is_zero()) continue;
    auto rt = classify_quartic(q);
    bool simple = true;
    for (unsigned m : rt.real_multiplicities) simple = simple && m == 1;
    if (!simple) continue;  // float oracle only counts simple roots
    int oracle = float_real_roots(q.c);
    if (oracle < 0) continue;
    ++compared;
    unsigned finite = rt.real_count_with_multiplicity() -
                      rt.infinity_multiplicity;
    CHECK(finite == unsigned(oracle));
  }
  CHECK(compared > 700);
}

TEST_CASE("signature of exact symmetric matrices") {
  RatMatrix d{{1, 0, 0, 0, 0},
              {0, 1, 0, 0, 0},
              {0, 0, -1, 0, 0},
              {0, 0, 0, -1, 0},
              {0, 0, 0, 0, -1}};
  auto s = metric_signature(d);
  CHECK(s.first == 2);
  CHECK(s.second == 3);

  RatMatrix sing{{1, 0}, {0, 0}};
  CHECK_THROWS_AS(metric_signature(sing), std::domain_error);
}
