#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace ants {

// Exact rational coefficient type (GMP-backed, always reduced, den > 0).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline int sign(const Rational& r) { return r.sign(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational(long num, long den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace ants
