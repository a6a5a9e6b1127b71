#pragma once

#include <optional>
#include <vector>

#include "ants/rationalfn.hpp"

namespace ants {

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;
using FnMatrix = std::vector<std::vector<RationalFn>>;

std::size_t rank(RatMatrix m);

/// Reduced row echelon form, in place; returns pivot column indices.
std::vector<std::size_t> rref(RatMatrix& m);

/// Basis of the right nullspace of m (n-dimensional column vectors).
std::vector<RatVector> nullspace(const RatMatrix& m, std::size_t cols);

/// One exact solution of m x = b with free variables set to zero, or nullopt
/// if the system is inconsistent.
std::optional<RatVector> solve(RatMatrix m, RatVector b);

struct Signature {
  std::size_t positives = 0, negatives = 0, zeros = 0;
  bool operator==(const Signature&) const = default;
};

/// Exact signature of a symmetric matrix via congruence diagonalization.
Signature symmetric_signature(RatMatrix a);

/// Rank over the rational-function field.
std::size_t rank(FnMatrix m);

/// True iff every row of `extra` lies in the row span of `base` over the
/// rational-function field.
bool rows_in_span(const FnMatrix& base, const FnMatrix& extra);

/// Basis of the right nullspace of m over the rational-function field.
std::vector<std::vector<RationalFn>> fn_nullspace(FnMatrix m, std::size_t cols,
                                                  const ChartPtr& chart);

}  // namespace ants
