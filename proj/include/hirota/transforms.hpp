#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/hirota.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/rational.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// f with x_var = value, moved to a ring without x_var (later variables shift down by one).
inline RationalFunction restrict(const RationalFunction& f, std::size_t var, const Rational& value) {
  if (var >= f.n_vars()) throw DimensionError("restriction variable out of range");
  if (f.n_vars() < 2) throw DimensionError("cannot restrict a one-variable function");
  std::map<std::size_t, Rational> assignment{{var, value}};
  MultiPoly num = substitute(f.num(), assignment), den = substitute(f.den(), assignment);
  if (den.is_zero()) throw DegenerateRestrictionError("denominator vanishes identically on x" + std::to_string(var + 1) + " = " + to_string(value));
  std::vector<std::optional<std::size_t>> mapping(f.n_vars());
  for (std::size_t v = 0; v < f.n_vars(); ++v) {
    if (v < var) mapping[v] = v;
    else if (v > var) mapping[v] = v - 1;
  }
  return RationalFunction(reindex(num, f.n_vars() - 1, mapping), reindex(den, f.n_vars() - 1, mapping));
}

/// Restriction of a numeric-node solution to the leaf x_var = value.
inline RationalFunction restrict(const HirotaSolution& sol, std::size_t var, const Rational& value) {
  if (sol.spec.symbolic_nodes()) throw SpecError("restriction needs numeric nodes");
  if (var >= sol.spec.n()) throw IndexError("restriction variable out of range");
  return restrict(sol.f, var, value);
}

/// The node list of the restricted system: node `var` removed.
inline std::vector<Rational> restricted_nodes(const WebSpec& spec, std::size_t var) {
  std::vector<Rational> nodes = spec.numeric_nodes();
  if (var >= nodes.size()) throw IndexError("restriction variable out of range");
  nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(var));
  return nodes;
}

/// t -> (a t + b) / (c t + d).
struct Mobius {
  Rational a = 1, b = 0, c = 0, d = 1;

  static Mobius identity() { return {}; }
  static Mobius reciprocal() { return {0, 1, 1, 0}; }
  Rational determinant() const { return a * d - b * c; }
  bool degenerate() const { return determinant() == 0; }
};

inline std::string to_string(const Mobius& m) {
  return "(" + to_string(m.a) + " t + " + to_string(m.b) + ") / (" + to_string(m.c) + " t + " + to_string(m.d) + ")";
}

namespace detail {

// Homogenized image of p under x_i -> (a_i x_i + b_i)/(c_i x_i + d_i):
// sum_terms c * prod_i (a_i x_i + b_i)^{e_i} (c_i x_i + d_i)^{M_i - e_i}.
inline MultiPoly homogenized_image(const MultiPoly& p, std::span<const Mobius> maps, std::span<const unsigned> max_deg) {
  const std::size_t ring = p.n_vars();
  std::vector<std::vector<MultiPoly>> num_pow(maps.size()), den_pow(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    MultiPoly x = MultiPoly::variable(ring, i);
    MultiPoly top = x * maps[i].a + MultiPoly::constant(ring, maps[i].b);
    MultiPoly bottom = x * maps[i].c + MultiPoly::constant(ring, maps[i].d);
    num_pow[i].push_back(MultiPoly::constant(ring, 1));
    den_pow[i].push_back(MultiPoly::constant(ring, 1));
    for (unsigned e = 1; e <= max_deg[i]; ++e) {
      num_pow[i].push_back(num_pow[i].back() * top);
      den_pow[i].push_back(den_pow[i].back() * bottom);
    }
  }
  MultiPoly out(ring);
  for (const auto& t : p.terms()) {
    Monomial rest;
    for (std::size_t v = maps.size(); v < ring; ++v) rest.set(v, t.monomial[v]);
    MultiPoly prod = MultiPoly::monomial(ring, rest, t.coeff);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      unsigned e = t.monomial[i];
      prod *= num_pow[i][e] * den_pow[i][max_deg[i] - e];
    }
    out += prod;
  }
  return out;
}

}  // namespace detail

/// outer(f(inner_1(x_1), ..., inner_n(x_n))) computed exactly; the first
/// inner.size() variables are the transformed coordinates.
inline RationalFunction transform(const RationalFunction& f, const Mobius& outer, std::span<const Mobius> inner) {
  if (inner.size() > f.n_vars()) throw DimensionError("more coordinate maps than variables");
  if (outer.degenerate()) throw SpecError("outer Mobius map is degenerate (ad - bc = 0)");
  for (const auto& m : inner)
    if (m.degenerate()) throw SpecError("coordinate Mobius map is degenerate (ad - bc = 0)");
  std::vector<unsigned> max_deg(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) max_deg[i] = std::max(f.num().degree_in(i), f.den().degree_in(i));
  // The common factor prod_i (c_i x_i + d_i)^{M_i} cancels between numerator and denominator.
  MultiPoly num = detail::homogenized_image(f.num(), inner, max_deg);
  MultiPoly den = detail::homogenized_image(f.den(), inner, max_deg);
  MultiPoly out_num = num * outer.a + den * outer.b;
  MultiPoly out_den = num * outer.c + den * outer.d;
  if (out_den.is_zero()) throw DivisionError("transformed function has a pole everywhere");
  return RationalFunction(std::move(out_num), std::move(out_den));
}

}  // namespace hirota
