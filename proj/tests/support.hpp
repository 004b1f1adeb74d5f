#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "hirota/differential_form.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/poly_io.hpp"
#include "hirota/poly_matrix.hpp"
#include "hirota/rational_function.hpp"

namespace testing_support {

using hirota::DifferentialForm;
using hirota::Monomial;
using hirota::MultiPoly;
using hirota::PolyMatrix;
using hirota::Rational;
using hirota::RationalFunction;

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Sparse polynomial with up to `max_terms` terms, each of total degree <= max_degree,
/// small integer coefficients, in the first `active` variables of a ring of `n_vars`.
inline MultiPoly random_poly(std::mt19937_64& rng, std::size_t n_vars, std::size_t max_terms = 4, unsigned max_degree = 2,
                             long coeff_bound = 5, std::size_t active = 0) {
  if (active == 0) active = n_vars;
  MultiPoly p(n_vars);
  std::size_t terms = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(uniform(rng, 0, max_degree));
    for (unsigned d = 0; d < budget; ++d) {
      std::size_t v = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(active) - 1));
      m.set(v, m[v] + 1);
    }
    long c = uniform(rng, -coeff_bound, coeff_bound);
    if (c != 0) p += MultiPoly::monomial(n_vars, m, Rational(c));
  }
  return p;
}

inline MultiPoly random_nonzero_poly(std::mt19937_64& rng, std::size_t n_vars, std::size_t max_terms = 4,
                                     unsigned max_degree = 2) {
  while (true) {
    MultiPoly p = random_poly(rng, n_vars, max_terms, max_degree);
    if (!p.is_zero()) return p;
  }
}

inline PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t size, std::size_t n_vars) {
  PolyMatrix m(size, size, n_vars);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) m.set(r, c, random_poly(rng, n_vars, 3, 1, 4));
  return m;
}

/// Leibniz formula: sum over permutations of sign * product of entries.
inline MultiPoly leibniz_determinant(const PolyMatrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly total(m.n_vars());
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    MultiPoly term = MultiPoly::constant(m.n_vars(), inversions % 2 == 0 ? 1 : -1);
    for (std::size_t r = 0; r < perm.size() && !term.is_zero(); ++r) term *= m(r, perm[r]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline RationalFunction random_rf(std::mt19937_64& rng, std::size_t n_vars) {
  return RationalFunction(random_poly(rng, n_vars, 3, 2), random_nonzero_poly(rng, n_vars, 2, 1));
}

/// Random g-form on `dim` coordinates with polynomial coefficients.
inline DifferentialForm random_form(std::mt19937_64& rng, std::size_t degree, std::size_t dim, bool rational = false) {
  DifferentialForm form(degree, dim, dim);
  std::vector<std::size_t> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  // All increasing subsets of the given size, each with probability 1/2.
  std::vector<bool> pick(dim, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(degree, dim)), true);
  if (degree > dim) return form;
  do {
    if (uniform(rng, 0, 1) == 0) continue;
    hirota::IndexSet set;
    for (std::size_t i = 0; i < dim; ++i)
      if (pick[i]) set.push_back(i);
    RationalFunction c = rational ? random_rf(rng, dim) : RationalFunction(random_poly(rng, dim, 3, 2));
    form.add(set, c);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return form;
}

/// Polynomial coefficient of the coordinate monomial `x_mono` (first `dim`
/// variables) as a polynomial in the remaining variables.
inline MultiPoly coefficient_of(const MultiPoly& p, const Monomial& x_mono, std::size_t dim) {
  std::vector<hirota::Term> out;
  for (const auto& t : p.terms()) {
    bool match = true;
    for (std::size_t v = 0; v < dim; ++v) match = match && t.monomial[v] == x_mono[v];
    if (!match) continue;
    Monomial rest;
    for (std::size_t v = dim; v < p.n_vars(); ++v) rest.set(v, t.monomial[v]);
    out.push_back({rest, t.coeff});
  }
  return MultiPoly::from_terms(p.n_vars(), std::move(out));
}

/// Distinct coordinate monomials occurring in p.
inline std::vector<Monomial> coordinate_monomials(const MultiPoly& p, std::size_t dim) {
  std::vector<Monomial> out;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < dim; ++v) m.set(v, t.monomial[v]);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace testing_support
