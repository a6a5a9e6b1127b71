#include "ants/distribution.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ants {

namespace {

FnMatrix component_matrix(const std::vector<VectorField>& gens) {
  FnMatrix m;
  m.reserve(gens.size());
  for (const auto& g : gens) m.push_back(g.components());
  return m;
}

std::vector<VectorField> with_pairwise_brackets(
    const std::vector<VectorField>& gens) {
  std::vector<VectorField> out = gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      VectorField b = lie_bracket(gens[i], gens[j]);
      if (!b.is_zero()) out.push_back(std::move(b));
    }
  return out;
}

// Greedy maximal function-field-independent subset.
std::vector<VectorField> prune_to_basis(const std::vector<VectorField>& gens) {
  std::vector<VectorField> kept;
  FnMatrix m;
  std::size_t r = 0;
  for (const auto& g : gens) {
    m.push_back(g.components());
    std::size_t nr = rank(m);
    if (nr > r) {
      r = nr;
      kept.push_back(g);
    } else {
      m.pop_back();
    }
  }
  return kept;
}

std::size_t pointwise_rank(const std::vector<VectorField>& gens,
                           const std::vector<Rational>& point) {
  RatMatrix m;
  m.reserve(gens.size());
  for (const auto& g : gens) m.push_back(g.evaluate(point));
  return rank(std::move(m));
}

Rational sample_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den_dist(1, 8);
  int den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(-10L * den, 10L * den);
  return Rational(num_dist(rng), den);
}

}  // namespace

Distribution::Distribution(std::vector<VectorField> generators,
                           std::optional<LeafConstraint> leaf,
                           std::optional<MultiPoly> nondegeneracy)
    : gens_(std::move(generators)),
      leaf_(std::move(leaf)),
      nondeg_(std::move(nondegeneracy)) {
  if (gens_.empty()) throw std::invalid_argument("Distribution: no generators");
  chart_ = gens_[0].chart();
  for (const auto& g : gens_)
    require_same_chart(chart_, g.chart(), "Distribution");
  if (leaf_) {
    require_same_chart(chart_, leaf_->function.chart(), "Distribution leaf");
    for (const auto& g : gens_)
      if (!g.apply(leaf_->function).is_zero())
        throw std::invalid_argument(
            "Distribution: generator does not annihilate the leaf constraint");
  }
  if (nondeg_) require_same_chart(chart_, nondeg_->chart(), "Distribution");
}

std::vector<Rational> sample_point(const Distribution& d, std::mt19937_64& rng) {
  const ChartPtr& chart = d.chart();
  std::size_t n = chart->arity();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Rational> pt(n);
    for (auto& x : pt) x = sample_rational(rng);
    if (d.leaf()) {
      // Solve the constraint for a variable in which it is linear.
      const MultiPoly& f = d.leaf()->function;
      int v = -1;
      for (std::size_t i = 0; i < n; ++i)
        if (f.degree_in(i) == 1) v = static_cast<int>(i);
      if (v < 0)
        throw std::runtime_error(
            "sample_point: leaf constraint is not linear in any variable");
      MultiPoly slope = f.derivative(static_cast<std::size_t>(v));
      pt[v] = 0;
      Rational s = slope.evaluate(pt);
      if (s == 0) continue;
      pt[v] = (d.leaf()->level - f.evaluate(pt)) / s;
    }
    if (d.nondegeneracy() && d.nondegeneracy()->evaluate(pt) == 0) continue;
    return pt;
  }
  throw std::runtime_error(
      "sample_point: could not find a nonsingular sample point");
}

DerivedFlag derived_flag(const Distribution& d, std::size_t max_depth,
                         std::uint64_t seed, std::size_t samples) {
  if (max_depth < 1) throw std::invalid_argument("derived_flag: max_depth < 1");
  std::size_t max_rank = d.chart()->arity() - (d.leaf() ? 1 : 0);

  std::vector<std::vector<VectorField>> levels;
  levels.push_back(prune_to_basis(d.generators()));
  DerivedFlag flag;
  flag.ranks.push_back(levels.back().size());
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    std::size_t prev = flag.ranks.back();
    if (prev == max_rank) {
      flag.stabilized = true;
      break;
    }
    levels.push_back(prune_to_basis(with_pairwise_brackets(levels.back())));
    flag.ranks.push_back(levels.back().size());
    if (flag.ranks.back() == prev) {
      flag.stabilized = true;
      break;
    }
  }

  // Cross-check generic ranks at seeded nonsingular rational points.
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      std::vector<Rational> pt = sample_point(d, rng);
      bool ok = true;
      try {
        for (std::size_t l = 0; l < levels.size(); ++l)
          if (pointwise_rank(levels[l], pt) != flag.ranks[l]) ok = false;
      } catch (const SingularPointError&) {
        ok = false;  // pole of a bracket coefficient; resample
      }
      if (ok) {
        flag.witness_points.push_back(std::move(pt));
        break;
      }
      if (attempt >= 50)
        throw std::runtime_error(
            "derived_flag: sampled ranks keep disagreeing with the symbolic "
            "ranks");
    }
  }
  return flag;
}

std::vector<std::size_t> growth_vector(const Distribution& d,
                                       const std::vector<Rational>& point,
                                       std::size_t max_depth) {
  if (d.leaf() && d.leaf()->function.evaluate(point) != d.leaf()->level)
    throw std::invalid_argument("growth_vector: point is not on the leaf");
  // Generators tangent to a leaf can never exceed the leaf dimension.
  std::size_t max_rank = d.chart()->arity() - (d.leaf() ? 1 : 0);
  std::vector<VectorField> cur = d.generators();
  std::vector<std::size_t> ranks{pointwise_rank(cur, point)};
  for (std::size_t depth = 1; depth <= max_depth; ++depth) {
    if (ranks.back() == max_rank) break;
    // No pruning here: pointwise ranks must not depend on generic selection.
    cur = with_pairwise_brackets(cur);
    std::size_t r = pointwise_rank(cur, point);
    ranks.push_back(r);
    if (r == ranks[ranks.size() - 2]) break;  // stabilized at this point
  }
  return ranks;
}

SymmetryCheck is_symmetry(const VectorField& x, const Distribution& d) {
  require_same_chart(x.chart(), d.chart(), "is_symmetry");
  SymmetryCheck out;
  FnMatrix base = component_matrix(d.generators());
  for (std::size_t i = 0; i < d.generators().size(); ++i) {
    VectorField b = lie_bracket(x, d.generators()[i]);
    if (!rows_in_span(base, {b.components()})) {
      std::ostringstream msg;
      msg << "bracket with generator " << i
          << " leaves the span: " << b.str();
      out.residual = msg.str();
      return out;
    }
  }
  if (d.leaf()) {
    RationalFn t = x.apply(d.leaf()->function);
    if (!t.is_zero()) {
      out.residual = "field is not tangent to the leaves: X(constraint) = " +
                     t.str();
      return out;
    }
  }
  out.ok = true;
  return out;
}

namespace {

std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  // Lexicographic enumeration of exponent vectors with |e| <= degree.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i,
                                                       unsigned left) {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, degree);
  return out;
}

// Generators with cleared denominators (same span over the function field).
std::vector<VectorField> polynomial_generators(const Distribution& d) {
  std::vector<VectorField> out;
  for (const auto& g : d.generators()) {
    MultiPoly den = MultiPoly::constant(d.chart(), 1);
    for (const auto& c : g.components())
      if (!c.is_polynomial()) den = den.divide_exact(gcd(den, c.den())) * c.den();
    out.push_back(g * RationalFn(den));
  }
  return out;
}

}  // namespace

std::vector<VectorField> solve_symmetries(const Distribution& d,
                                          unsigned degree) {
  if (degree > 3)
    throw std::invalid_argument("solve_symmetries: ansatz degree > 3");
  const ChartPtr& chart = d.chart();
  std::size_t n = chart->arity();
  std::vector<Exponents> mons = monomials_up_to(n, degree);
  std::size_t unknowns = n * mons.size();
  if (unknowns > 2000)
    throw std::invalid_argument("solve_symmetries: ansatz too large");

  std::vector<VectorField> gens = polynomial_generators(d);

  // Polynomial covectors spanning the annihilator of the generator span.
  std::vector<std::vector<MultiPoly>> covectors;
  for (const auto& eta : fn_nullspace(component_matrix(gens), n, chart)) {
    MultiPoly den = MultiPoly::constant(chart, 1);
    for (const auto& e : eta)
      if (!e.is_polynomial()) den = den.divide_exact(gcd(den, e.den())) * e.den();
    std::vector<MultiPoly> row;
    for (const auto& e : eta) {
      RationalFn cleared = e * RationalFn(den);
      row.push_back(cleared.num() * (Rational(1) / cleared.den().constant_value()));
    }
    covectors.push_back(std::move(row));
  }

  // Linear system rows: for each (covector, generator) pair, the coefficients
  // of eta([X, g]) as a polynomial must all vanish; for a constrained
  // distribution likewise the coefficients of X(constraint).
  std::map<std::pair<std::size_t, Exponents>, RatVector> equations;
  auto add_equation_terms = [&](std::size_t block, const MultiPoly& poly,
                                std::size_t unknown) {
    for (const auto& [e, c] : poly.terms()) {
      auto key = std::make_pair(block, e);
      auto it = equations.find(key);
      if (it == equations.end())
        it = equations.emplace(key, RatVector(unknowns, 0)).first;
      it->second[unknown] += c;
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t mi = 0; mi < mons.size(); ++mi) {
      std::size_t unknown = k * mons.size() + mi;
      MultiPoly m(chart);
      m.set_coeff(mons[mi], 1);
      std::size_t block = 0;
      for (const auto& g : gens) {
        // [m*d_k, g]^c = m * d(g^c)/dx_k - g(m) * delta_{ck}
        std::vector<MultiPoly> bracket(n, MultiPoly(chart));
        for (std::size_t c = 0; c < n; ++c)
          bracket[c] = m * g.component(c).num().derivative(k);
        bracket[k] -= g.apply(m).num();
        for (const auto& eta : covectors) {
          MultiPoly e(chart);
          for (std::size_t c = 0; c < n; ++c) e += eta[c] * bracket[c];
          add_equation_terms(block++, e, unknown);
        }
      }
      if (d.leaf())
        add_equation_terms(block, m * d.leaf()->function.derivative(k), unknown);
    }
  }

  RatMatrix system;
  system.reserve(equations.size());
  for (auto& [key, row] : equations) system.push_back(std::move(row));
  std::vector<RatVector> sol = nullspace(system, unknowns);

  std::vector<VectorField> basis;
  for (const auto& v : sol) {
    VectorField f(chart);
    for (std::size_t k = 0; k < n; ++k) {
      MultiPoly comp(chart);
      for (std::size_t mi = 0; mi < mons.size(); ++mi) {
        const Rational& c = v[k * mons.size() + mi];
        if (c != 0) comp.set_coeff(mons[mi], c);
      }
      f.set_component(k, RationalFn(comp));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

bool check_first_integral(const Distribution& d, const RationalFn& f) {
  for (const auto& g : d.generators())
    if (!g.apply(f).is_zero()) return false;
  return true;
}

bool check_first_integral(const Distribution& d, const MultiPoly& f) {
  return check_first_integral(d, RationalFn(f));
}

RatMatrix LieAlgebraTable::killing_form() const {
  std::size_t n = basis.size();
  RatMatrix k(n, RatVector(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e)
          k[a][b] += structure_constants[a][c][e] * structure_constants[b][e][c];
  return k;
}

bool LieAlgebraTable::jacobi_holds() const {
  std::size_t n = basis.size();
  const auto& c = structure_constants;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Rational acc = 0;
          for (std::size_t m = 0; m < n; ++m)
            acc += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] +
                   c[k][i][m] * c[m][j][l];
          if (acc != 0) return false;
        }
  return true;
}

RatVector field_coefficients(const VectorField& v, unsigned degree) {
  const ChartPtr& chart = v.chart();
  std::size_t n = chart->arity();
  std::vector<Exponents> mons = monomials_up_to(n, degree);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  RatVector out(n * mons.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    const RationalFn& c = v.component(k);
    if (!c.is_polynomial())
      throw std::invalid_argument("field_coefficients: non-polynomial field");
    MultiPoly p = c.num() * (Rational(1) / c.den().constant_value());
    for (const auto& [e, coef] : p.terms()) {
      auto it = index.find(e);
      if (it == index.end())
        throw std::invalid_argument("field_coefficients: degree too high");
      out[k * mons.size() + it->second] = coef;
    }
  }
  return out;
}

LieAlgebraTable structure_constants(const std::vector<VectorField>& fields) {
  if (fields.empty())
    throw std::invalid_argument("structure_constants: empty basis");
  unsigned deg = 0;
  for (const auto& f : fields)
    for (const auto& c : f.components()) {
      if (!c.is_polynomial())
        throw std::invalid_argument("structure_constants: non-polynomial field");
      deg = std::max(deg, c.num().degree());
    }
  // Brackets can reach twice the component degree.
  unsigned full_deg = 2 * deg;
  std::size_t n = fields.size();
  RatMatrix basis_cols;  // rows = coefficient index, cols = basis element
  std::vector<RatVector> vecs;
  for (const auto& f : fields) vecs.push_back(field_coefficients(f, full_deg));
  std::size_t len = vecs[0].size();
  basis_cols.assign(len, RatVector(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < len; ++i) basis_cols[i][j] = vecs[j][i];
  {
    RatMatrix check = basis_cols;
    if (rank(std::move(check)) != n)
      throw std::invalid_argument(
          "structure_constants: fields are linearly dependent");
  }

  LieAlgebraTable table;
  table.basis = fields;
  table.structure_constants.assign(n, std::vector<RatVector>(n, RatVector(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatVector b = field_coefficients(lie_bracket(fields[i], fields[j]), full_deg);
      auto x = solve(basis_cols, b);
      if (!x)
        throw std::runtime_error(
            "structure_constants: span not closed under bracket for pair (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      table.structure_constants[i][j] = *x;
      for (std::size_t k = 0; k < n; ++k)
        table.structure_constants[j][i][k] = -(*x)[k];
    }
  table.killing_signature = symmetric_signature(table.killing_form());
  return table;
}

bool is_integrable(const Distribution& d) {
  FnMatrix base = component_matrix(d.generators());
  for (std::size_t i = 0; i < d.generators().size(); ++i)
    for (std::size_t j = i + 1; j < d.generators().size(); ++j) {
      VectorField b = lie_bracket(d.generators()[i], d.generators()[j]);
      if (!rows_in_span(base, {b.components()})) return false;
    }
  return true;
}

}  // namespace ants
