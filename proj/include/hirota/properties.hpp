#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hirota/hirota.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// Structural checks on a numerator/denominator pair in `dim` coordinates.
struct PropertyReport {
  std::optional<Homogeneity> num_homogeneity;
  std::optional<Homogeneity> den_homogeneity;
  /// Numerator and denominator homogeneous in the coordinates.
  bool homogeneous = false;
  /// deg num = deg den + 1 in the coordinates (total degree when not homogeneous).
  bool degree_gap_one = false;
  /// Value at x = (1, ..., 1); a polynomial in the remaining variables (symbolic nodes).
  MultiPoly num_sum;
  MultiPoly den_sum;
  bool num_sum_zero = false;
  bool den_sum_zero = false;
  bool sums_zero() const { return num_sum_zero && den_sum_zero; }
};

namespace detail {

inline unsigned coordinate_degree(const MultiPoly& p, std::size_t dim) {
  unsigned best = 0;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    for (std::size_t v = 0; v < dim; ++v) d += t.monomial[v];
    best = std::max(best, d);
  }
  return best;
}

inline MultiPoly at_all_ones(const MultiPoly& p, std::size_t dim) {
  std::map<std::size_t, Rational> ones;
  for (std::size_t v = 0; v < dim; ++v) ones.emplace(v, Rational(1));
  return substitute(p, ones);
}

}  // namespace detail

inline PropertyReport check_properties(const MultiPoly& num, const MultiPoly& den, std::size_t dim) {
  PropertyReport r;
  r.num_homogeneity = homogeneity_in_first(num, dim);
  r.den_homogeneity = homogeneity_in_first(den, dim);
  r.homogeneous = r.num_homogeneity && r.den_homogeneity;
  r.degree_gap_one = detail::coordinate_degree(num, dim) == detail::coordinate_degree(den, dim) + 1;
  r.num_sum = detail::at_all_ones(num, dim);
  r.den_sum = detail::at_all_ones(den, dim);
  r.num_sum_zero = r.num_sum.is_zero();
  r.den_sum_zero = r.den_sum.is_zero();
  return r;
}

inline PropertyReport check_properties(const RationalFunction& f, std::size_t dim) {
  return check_properties(f.num(), f.den(), dim);
}

inline PropertyReport check_properties(const HirotaSolution& sol) {
  return check_properties(sol.pk, sol.ql, sol.spec.n());
}

/// Whether the all-ones substitution forces each highest coefficient to vanish:
/// P_k needs its "1" column (k >= 1), Q_l its "-x" column (l >= 1). Otherwise
/// P_0 = +-x_1...x_n V and Q_0 = V with V the node Vandermonde determinant.
struct SumExpectation {
  bool num_zero;
  bool den_zero;
};

inline SumExpectation expected_sums(const WebSpec& spec) { return {spec.k() >= 1, spec.l() >= 1}; }

}  // namespace hirota
