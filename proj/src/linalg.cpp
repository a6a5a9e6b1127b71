#include "ants/linalg.hpp"

#include <stdexcept>

namespace ants {

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<RatVector> nullspace(const RatMatrix& m, std::size_t cols) {
  RatMatrix a = m;
  if (a.empty()) a.push_back(RatVector(cols, 0));
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(RatMatrix m, RatVector b) {
  std::size_t rows = m.size();
  if (b.size() != rows) throw std::invalid_argument("solve: size mismatch");
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  auto pivots = rref(m);
  RatVector x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
    x[pivots[r]] = m[r][cols];
  }
  return x;
}

Signature symmetric_signature(RatMatrix a) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a[i].size() != n)
      throw std::invalid_argument("symmetric_signature: not square");
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      // Look below/right for a usable entry.
      std::size_t j = k + 1;
      std::size_t d = k;
      bool found = false;
      for (d = k; d < n && !found; ++d)
        if (a[d][d] != 0) found = true;
      if (found) {
        --d;
        std::swap(a[k], a[d]);
        for (std::size_t i = 0; i < n; ++i) std::swap(a[i][k], a[i][d]);
      } else {
        for (j = k + 1; j < n && a[k][j] == 0; ++j) {}
        if (j == n) {
          ++sig.zeros;
          continue;
        }
        // a[k][j] != 0, both diagonals zero: row/col addition makes the
        // diagonal entry 2*a[k][j] != 0.
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    Rational p = a[k][k];
    if (p > 0)
      ++sig.positives;
    else
      ++sig.negatives;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k] / p;
      for (std::size_t c = 0; c < n; ++c) a[i][c] -= f * a[k][c];
      for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k];
    }
  }
  return sig;
}

std::size_t rank(FnMatrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      RationalFn f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

bool rows_in_span(const FnMatrix& base, const FnMatrix& extra) {
  std::size_t base_rank = rank(base);
  FnMatrix all = base;
  for (const auto& row : extra) {
    all.push_back(row);
    if (rank(all) != base_rank) return false;
    all.pop_back();
  }
  return true;
}

std::vector<std::vector<RationalFn>> fn_nullspace(FnMatrix m, std::size_t cols,
                                                  const ChartPtr& chart) {
  const RationalFn zero = RationalFn::constant(chart, 0);
  const RationalFn one = RationalFn::constant(chart, 1);
  if (m.empty()) m.push_back(std::vector<RationalFn>(cols, zero));
  std::size_t rows = m.size();
  // Reduced row echelon form over the function field.
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    RationalFn inv = one / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      RationalFn f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<RationalFn>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<RationalFn> v(cols, zero);
    v[f] = one;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ants
