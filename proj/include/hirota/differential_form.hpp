#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hirota/errors.hpp"
#include "hirota/poly_io.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// Strictly increasing list of coordinate indices naming dx_{i1} ^ ... ^ dx_{ig}.
using IndexSet = std::vector<std::size_t>;

/// Alternating g-form on a `dim`-dimensional coordinate space with
/// rational-function coefficients.
///
/// Coefficients live in a ring with n_vars >= dim variables; only the first
/// dim variables are coordinates, the rest (symbolic nodes) are parameters
/// and are never differentiated.
class DifferentialForm {
 public:
  DifferentialForm(std::size_t degree, std::size_t dim, std::size_t n_vars)
      : degree_(degree), dim_(dim), n_vars_(n_vars) {
    if (dim > n_vars) throw DimensionError("form dimension exceeds the coefficient ring");
  }

  /// The 0-form f.
  static DifferentialForm function(const RationalFunction& f, std::size_t dim) {
    DifferentialForm form(0, dim, f.n_vars());
    form.add(IndexSet{}, f);
    return form;
  }

  /// coeff * dx_I.
  static DifferentialForm basis(const IndexSet& idx, const RationalFunction& coeff, std::size_t dim) {
    DifferentialForm form(idx.size(), dim, coeff.n_vars());
    form.add(idx, coeff);
    return form;
  }

  /// dx_var with unit coefficient.
  static DifferentialForm coordinate(std::size_t var, std::size_t dim, std::size_t n_vars) {
    return basis({var}, RationalFunction::constant(n_vars, 1), dim);
  }

  /// df = sum_i (d f / d x_i) dx_i.
  static DifferentialForm differential(const RationalFunction& f, std::size_t dim);

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  std::size_t n_vars() const { return n_vars_; }
  const std::map<IndexSet, RationalFunction>& components() const { return components_; }

  RationalFunction component(const IndexSet& idx) const {
    auto it = components_.find(idx);
    return it == components_.end() ? RationalFunction::constant(n_vars_, 0) : it->second;
  }

  /// Adds coeff * dx_idx; idx must be strictly increasing and of length degree().
  void add(const IndexSet& idx, const RationalFunction& coeff) {
    if (idx.size() != degree_) throw DimensionError("component index has the wrong length");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= dim_) throw DimensionError("component index outside the coordinate range");
      if (i > 0 && idx[i - 1] >= idx[i]) throw DimensionError("component index not strictly increasing");
    }
    if (coeff.n_vars() != n_vars_) throw DimensionError("form coefficient in the wrong ring");
    if (coeff.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(idx, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) components_.erase(it);
    }
  }

  DifferentialForm operator-() const {
    DifferentialForm r = *this;
    for (auto& [idx, c] : r.components_) c = -c;
    return r;
  }

  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
    a.require_compatible(b);
    for (const auto& [idx, c] : b.components_) a.add(idx, c);
    return a;
  }
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

  friend DifferentialForm operator*(const RationalFunction& f, const DifferentialForm& a) {
    DifferentialForm r(a.degree_, a.dim_, a.n_vars_);
    for (const auto& [idx, c] : a.components_) r.add(idx, f * c);
    return r;
  }
  friend DifferentialForm operator*(const DifferentialForm& a, const Rational& c) {
    DifferentialForm r(a.degree_, a.dim_, a.n_vars_);
    if (c == 0) return r;
    for (const auto& [idx, coeff] : a.components_) r.add(idx, coeff * c);
    return r;
  }

  /// Numeric value of every component at a point of the coefficient ring.
  std::map<IndexSet, Rational> evaluate(std::span<const Rational> point) const {
    std::map<IndexSet, Rational> out;
    for (const auto& [idx, c] : components_) {
      Rational v = c.evaluate(point);
      if (v != 0) out.emplace(idx, std::move(v));
    }
    return out;
  }

  void require_compatible(const DifferentialForm& b) const {
    if (degree_ != b.degree_ || dim_ != b.dim_ || n_vars_ != b.n_vars_)
      throw DimensionError("forms of different degree or space");
  }

 private:
  std::size_t degree_;
  std::size_t dim_;
  std::size_t n_vars_;
  std::map<IndexSet, RationalFunction> components_;
};

inline DifferentialForm DifferentialForm::differential(const RationalFunction& f, std::size_t dim) {
  DifferentialForm form(1, dim, f.n_vars());
  for (std::size_t i = 0; i < dim; ++i) form.add({i}, rf_derivative(f, i));
  return form;
}

namespace detail {

// Sign of dx_I ^ dx_J relative to dx_{I u J}; 0 when the sets intersect.
inline int shuffle_sign(const IndexSet& a, const IndexSet& b) {
  std::size_t inversions = 0;
  for (auto i : a) {
    for (auto j : b) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.dim() != b.dim() || a.n_vars() != b.n_vars()) throw DimensionError("wedge of forms on different spaces");
  DifferentialForm r(a.degree() + b.degree(), a.dim(), a.n_vars());
  if (r.degree() > r.dim()) return r;
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      int sign = detail::shuffle_sign(ia, ib);
      if (sign == 0) continue;
      IndexSet merged;
      std::merge(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(merged));
      RationalFunction product = ca * cb;
      r.add(merged, sign > 0 ? product : -product);
    }
  }
  return r;
}

/// d(f dx_I) = sum_v (d f / d x_v) dx_v ^ dx_I.
inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm r(a.degree() + 1, a.dim(), a.n_vars());
  if (r.degree() > r.dim()) return r;
  for (const auto& [idx, c] : a.components()) {
    for (std::size_t v = 0; v < a.dim(); ++v) {
      if (std::find(idx.begin(), idx.end(), v) != idx.end()) continue;
      RationalFunction dc = rf_derivative(c, v);
      if (dc.is_zero()) continue;
      auto pos = std::lower_bound(idx.begin(), idx.end(), v);
      IndexSet merged(idx.begin(), pos);
      merged.push_back(v);
      merged.insert(merged.end(), pos, idx.end());
      bool odd = (pos - idx.begin()) % 2 != 0;
      r.add(merged, odd ? -dc : dc);
    }
  }
  return r;
}

inline bool form_is_zero(const DifferentialForm& a) {
  for (const auto& [idx, c] : a.components())
    if (!c.is_zero()) return false;
  return true;
}

/// Componentwise rf_equal.
inline bool form_equal(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.degree() != b.degree() || a.dim() != b.dim() || a.n_vars() != b.n_vars()) return false;
  for (const auto& [idx, c] : a.components())
    if (!rf_equal(c, b.component(idx))) return false;
  for (const auto& [idx, c] : b.components())
    if (!a.components().contains(idx) && !c.is_zero()) return false;
  return true;
}

/// "coeff dx1^dx3 + ..." with index sets ascending.
inline std::string to_string(const DifferentialForm& a, const VariableNames& names) {
  if (form_is_zero(a)) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : a.components()) {
    if (!first) out += " + ";
    first = false;
    std::string basis;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0) basis += "^";
      basis += "d" + names.at(idx[i]);
    }
    std::string coeff = c.num().is_constant() && c.den().is_constant()
                            ? to_string(Rational(c.num().constant_value() / c.den().constant_value()))
                            : to_string(c, names);
    bool compound = c.num().size() > 1 || !c.is_polynomial();
    if (basis.empty()) {
      out += coeff;
    } else {
      out += (compound ? "(" + coeff + ")" : coeff) + " " + basis;
    }
  }
  return out;
}

inline nlohmann::json to_json(const DifferentialForm& a) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [idx, c] : a.components()) {
    std::vector<std::size_t> one_based;
    for (auto i : idx) one_based.push_back(i + 1);
    comps.push_back({{"idx", one_based}, {"num", to_json(c.num())}, {"den", to_json(c.den())}});
  }
  return {{"degree", a.degree()}, {"components", comps}};
}

}  // namespace hirota
