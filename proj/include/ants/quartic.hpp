#pragma once

#include <array>
#include <string>
#include <vector>

#include "ants/linalg.hpp"

namespace ants {

using PlanarPoint = std::array<Rational, 2>;
using Triangle = std::array<PlanarPoint, 3>;

/// {r : (r-center)^T gram (r-center) = 1}, gram symmetric positive definite.
struct Ellipse {
  PlanarPoint center;
  RatMatrix gram;  // 2x2
};

/// The conic through the three vertices, centered at the centroid, with
/// vertex tangents parallel to the opposite sides; built by affine transport
/// from the triangle (0,0),(1,0),(0,1).
Ellipse steiner_circumellipse(const Triangle& t);

Rational ellipse_norm_sq(const Ellipse& e, const PlanarPoint& v);
double ellipse_norm(const Ellipse& e, const std::array<double, 2>& v);

/// Sum over vertices of the squared circumellipse norm of the velocity
/// u_i (z_{i+1} - z_{i+2}); requires u1+u2+u3 = 0.
Rational subriemannian_speed_sq(const Triangle& t,
                                const std::array<Rational, 3>& u);
double subriemannian_speed(const Triangle& t, const std::array<double, 3>& u,
                           double sum_tol = 1e-12);

/// c0 u1^4 + c1 u1^3 u2 + c2 u1^2 u2^2 + c3 u1 u2^3 + c4 u2^4
struct BinaryQuartic {
  std::array<Rational, 5> c{};
  bool is_zero() const;
};

/// c (u1^2 + u2^2 + u3^2)^2 on the line u3 = -u1 - u2.
BinaryQuartic cartan_quartic(const Rational& c);

struct RootType {
  std::string tag;  // no_real | four_distinct_real | two_real_two_complex |
                    // real_roots_mult_<m...> (descending multiplicities)
  // One entry per real projective root, its multiplicity; includes the root
  // at infinity (u2 = 0) when present.
  std::vector<unsigned> real_multiplicities;
  unsigned infinity_multiplicity = 0;
  // Square-free finite factors (coefficients, descending degree) with their
  // multiplicity and exact real-root count.
  struct Factor {
    std::vector<Rational> coeffs;
    unsigned multiplicity;
    unsigned real_roots;
  };
  std::vector<Factor> factors;
  unsigned real_count_with_multiplicity() const;
};

/// Exact projective real-root classification: square-free decomposition of
/// the dehomogenization at u2 = 1 plus Sturm counting, u2 = 0 handled apart.
RootType classify_quartic(const BinaryQuartic& q);

/// (positives, negatives) of an exact symmetric matrix; throws when singular.
std::pair<std::size_t, std::size_t> metric_signature(const RatMatrix& gram);

}  // namespace ants
