#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/poly_io.hpp"
#include "hirota/poly_matrix.hpp"
#include "hirota/rational.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// Order [k/l] Cauchy problem with n = k + l + 1 nodes. Nodes are either
/// exact rationals or symbolic; in the symbolic case the polynomial ring has
/// 2n variables (x1..xn, l1..ln), otherwise n.
class WebSpec {
 public:
  WebSpec(std::size_t n, std::size_t k, std::size_t l, std::optional<std::vector<Rational>> nodes)
      : n_(n), k_(k), l_(l), nodes_(std::move(nodes)) {
    if (n < 2) throw SpecError("dimension n must be at least 2");
    if (k + l + 1 != n) throw SpecError("order [k/l] must satisfy k + l + 1 = n");
    if (2 * n + 1 > kMaxVars) throw SpecError("dimension too large for the polynomial ring");
    if (nodes_) {
      if (nodes_->size() != n) throw SpecError("expected " + std::to_string(n) + " nodes");
      std::set<Rational> seen(nodes_->begin(), nodes_->end());
      if (seen.size() != n) throw SpecError("interpolation nodes must be pairwise distinct");
    }
  }

  static WebSpec symbolic(std::size_t k, std::size_t l) { return WebSpec(k + l + 1, k, l, std::nullopt); }

  static WebSpec numeric(std::size_t k, std::size_t l, std::vector<Rational> nodes) {
    return WebSpec(k + l + 1, k, l, std::move(nodes));
  }

  /// Nodes 1, 2, ..., n.
  static WebSpec standard(std::size_t k, std::size_t l) {
    std::vector<Rational> nodes;
    for (std::size_t i = 1; i <= k + l + 1; ++i) nodes.emplace_back(static_cast<unsigned long>(i));
    return numeric(k, l, std::move(nodes));
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t l() const { return l_; }
  bool symbolic_nodes() const { return !nodes_.has_value(); }
  const std::vector<Rational>& numeric_nodes() const {
    if (!nodes_) throw SpecError("nodes are symbolic");
    return *nodes_;
  }

  std::size_t ring_vars() const { return nodes_ ? n_ : 2 * n_; }

  MultiPoly x(std::size_t i) const { return MultiPoly::variable(ring_vars(), i); }

  /// Node i as a ring element: a constant, or the parameter l_{i+1}.
  MultiPoly node(std::size_t i) const {
    if (nodes_) return MultiPoly::constant(ring_vars(), (*nodes_)[i]);
    return MultiPoly::variable(ring_vars(), n_ + i);
  }

  std::vector<MultiPoly> node_polys() const {
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(node(i));
    return out;
  }

  VariableNames names() const { return coordinate_names(n_, symbolic_nodes()); }

  std::string describe() const {
    std::string s = "n=" + std::to_string(n_) + " k=" + std::to_string(k_) + " l=" + std::to_string(l_) + " nodes=";
    if (!nodes_) return s + "symbolic";
    for (std::size_t i = 0; i < n_; ++i) s += (i ? "," : "") + to_string((*nodes_)[i]);
    return s;
  }

 private:
  std::size_t n_, k_, l_;
  std::optional<std::vector<Rational>> nodes_;
};

enum class SystemMatrix { kPFull, kQFull, kPTop, kQTop };

namespace detail {

// Row [1, t, ..., t^c, -x, -x t, ..., -x t^d] in the given ring.
inline std::vector<MultiPoly> cauchy_row(const MultiPoly& node, const MultiPoly& value, std::ptrdiff_t c,
                                         std::ptrdiff_t d, std::size_t ring) {
  std::vector<MultiPoly> row;
  MultiPoly power = MultiPoly::constant(ring, 1);
  for (std::ptrdiff_t j = 0; j <= c; ++j, power *= node) row.push_back(power);
  power = -value;
  for (std::ptrdiff_t j = 0; j <= d; ++j, power *= node) row.push_back(power);
  return row;
}

}  // namespace detail

/// The matrices whose determinants define P(lambda), Q(lambda) and their
/// highest coefficients. Full variants are (n+1) x (n+1) and live in a ring
/// with one extra variable (index spec.ring_vars(), named "l") for the free
/// interpolation variable; top variants are n x n in the WebSpec ring.
inline PolyMatrix build_system_matrix(const WebSpec& spec, SystemMatrix which) {
  const auto n = static_cast<std::ptrdiff_t>(spec.n());
  const auto k = static_cast<std::ptrdiff_t>(spec.k());
  const auto l = static_cast<std::ptrdiff_t>(spec.l());
  const bool full = which == SystemMatrix::kPFull || which == SystemMatrix::kQFull;
  const std::size_t ring = spec.ring_vars() + (full ? 1 : 0);
  std::ptrdiff_t c = k, d = l;
  if (which == SystemMatrix::kPTop) c = k - 1;
  if (which == SystemMatrix::kQTop) d = l - 1;

  const std::size_t size = static_cast<std::size_t>(n) + (full ? 1 : 0);
  PolyMatrix m(size, size, ring);
  for (std::size_t i = 0; i < spec.n(); ++i) {
    MultiPoly node = full ? extend(spec.node(i), ring) : spec.node(i);
    MultiPoly value = MultiPoly::variable(ring, i);
    auto row = detail::cauchy_row(node, value, c, d, ring);
    for (std::size_t col = 0; col < size; ++col) m.set(i, col, std::move(row[col]));
  }
  if (full) {
    MultiPoly lambda = MultiPoly::variable(ring, spec.ring_vars());
    MultiPoly power = MultiPoly::constant(ring, 1);
    const std::size_t offset = which == SystemMatrix::kPFull ? 0 : static_cast<std::size_t>(k + 1);
    const std::ptrdiff_t count = which == SystemMatrix::kPFull ? k : l;
    for (std::ptrdiff_t j = 0; j <= count; ++j, power *= lambda)
      m.set(spec.n(), offset + static_cast<std::size_t>(j), power);
  }
  return m;
}

/// Variable names for matrices built with build_system_matrix (full variants
/// append the interpolation variable "l").
inline VariableNames system_matrix_names(const WebSpec& spec, SystemMatrix which) {
  VariableNames names = spec.names();
  if (which == SystemMatrix::kPFull || which == SystemMatrix::kQFull) names.push_back("l");
  return names;
}

/// The n x (n+1) block of interpolation rows shared by all four matrices.
inline PolyMatrix interpolation_block(const WebSpec& spec) {
  PolyMatrix m(spec.n(), spec.n() + 1, spec.ring_vars());
  for (std::size_t i = 0; i < spec.n(); ++i) {
    auto row = detail::cauchy_row(spec.node(i), spec.x(i), static_cast<std::ptrdiff_t>(spec.k()),
                                  static_cast<std::ptrdiff_t>(spec.l()), spec.ring_vars());
    for (std::size_t col = 0; col <= spec.n(); ++col) m.set(i, col, std::move(row[col]));
  }
  return m;
}

struct HighestCoefficients {
  MultiPoly pk;
  MultiPoly ql;
};

/// P_k = (-1)^{n+k} det(P-top), Q_l = (-1)^{n+k+l+1} det(Q-top).
inline HighestCoefficients highest_coefficients(const WebSpec& spec) {
  MultiPoly pk = determinant(build_system_matrix(spec, SystemMatrix::kPTop));
  MultiPoly ql = determinant(build_system_matrix(spec, SystemMatrix::kQTop));
  if ((spec.n() + spec.k()) % 2 != 0) pk = -pk;
  if ((spec.n() + spec.k() + spec.l() + 1) % 2 != 0) ql = -ql;
  return {std::move(pk), std::move(ql)};
}

/// Coefficients of p(lambda) = p_0 + ... + p_k lambda^k and
/// q(lambda) = q_0 + ... + q_l lambda^l. Unnormalized: (P, Q) as defined by
/// the determinants. Normalized: divided by Q(0) at a numeric point, so
/// q_0 = 1 and all coefficients are constants.
struct CauchyInterpolant {
  std::vector<MultiPoly> p;
  std::vector<MultiPoly> q;
  bool normalized = false;
};

/// Unnormalized interpolant; coefficients are signed maximal minors of the
/// interpolation block along the lambda row, from one memoized expansion.
inline CauchyInterpolant cauchy_interpolant(const WebSpec& spec) {
  auto minors = maximal_minors(interpolation_block(spec));
  // Cofactor of entry (n+1, j+1) carries the sign (-1)^{n+j}.
  CauchyInterpolant out;
  for (std::size_t j = 0; j <= spec.n(); ++j) {
    MultiPoly c = (spec.n() + j) % 2 == 0 ? std::move(minors[j]) : -minors[j];
    if (j <= spec.k()) {
      out.p.push_back(std::move(c));
    } else {
      out.q.push_back(std::move(c));
    }
  }
  return out;
}

/// Normalized interpolant at numeric data x (numeric nodes required).
inline CauchyInterpolant cauchy_interpolant(const WebSpec& spec, std::span<const Rational> x_values) {
  if (spec.symbolic_nodes()) throw SpecError("normalization needs numeric nodes");
  if (x_values.size() != spec.n()) throw DimensionError("expected one value per node");
  CauchyInterpolant raw = cauchy_interpolant(spec);
  Rational q0 = evaluate(raw.q.front(), x_values);
  if (q0 == 0) throw DegenerateInterpolantError("Q(0) vanishes: the normalized interpolant does not exist");
  CauchyInterpolant out;
  out.normalized = true;
  for (const auto& c : raw.p) out.p.push_back(MultiPoly::constant(0, evaluate(c, x_values) / q0));
  for (const auto& c : raw.q) out.q.push_back(MultiPoly::constant(0, evaluate(c, x_values) / q0));
  // q(t_i) = 0 forces p(t_i) = 0: the common root cancels and F misses x_i.
  const auto& nodes = spec.numeric_nodes();
  for (std::size_t i = 0; i < spec.n(); ++i) {
    Rational q_at = 0, power = 1;
    for (const auto& c : out.q) {
      q_at += c.constant_value() * power;
      power *= nodes[i];
    }
    if (q_at == 0)
      throw DegenerateInterpolantError("unattainable node " + to_string(nodes[i]) +
                                       ": p and q share a root there, so F(node) != x");
  }
  return out;
}

namespace detail {

inline MultiPoly horner(const std::vector<MultiPoly>& coeffs, const MultiPoly& at) {
  MultiPoly acc = coeffs.back();
  for (std::size_t m = coeffs.size() - 1; m-- > 0;) acc = acc * at + coeffs[m];
  return acc;
}

}  // namespace detail

/// F(at) as a rational function of the data (unnormalized interpolant).
inline RationalFunction evaluate_interpolant(const CauchyInterpolant& f, const Rational& at) {
  const std::size_t ring = f.p.front().n_vars();
  MultiPoly point = MultiPoly::constant(ring, at);
  MultiPoly den = detail::horner(f.q, point);
  if (den.is_zero()) throw EvaluationPoleError("q vanishes identically at lambda = " + to_string(at));
  return RationalFunction(detail::horner(f.p, point), std::move(den));
}

/// F(at) at numeric data x (for a normalized interpolant x may be empty).
inline Rational evaluate_interpolant(const CauchyInterpolant& f, const Rational& at, std::span<const Rational> x_values) {
  auto value_of = [&](const MultiPoly& c) { return f.normalized ? c.constant_value() : evaluate(c, x_values); };
  Rational num = 0, den = 0, power = 1;
  for (const auto& c : f.p) {
    num += value_of(c) * power;
    power *= at;
  }
  power = 1;
  for (const auto& c : f.q) {
    den += value_of(c) * power;
    power *= at;
  }
  if (den == 0) throw EvaluationPoleError("q(" + to_string(at) + ") = 0");
  return num / den;
}

/// P(lambda_i) - x_i Q(lambda_i) vanishes identically for every node.
inline bool interpolation_check(const WebSpec& spec) {
  CauchyInterpolant f = cauchy_interpolant(spec);
  for (std::size_t i = 0; i < spec.n(); ++i) {
    MultiPoly node = spec.node(i);
    if (!(detail::horner(f.p, node) - spec.x(i) * detail::horner(f.q, node)).is_zero()) return false;
  }
  return true;
}

/// Direct solution of p_0 + p_1 t_i + ... + p_k t_i^k - x_i (q_1 t_i + ... + q_l t_i^l) = x_i
/// by exact Gaussian elimination. Returns (p_0..p_k, q_1..q_l).
inline std::vector<Rational> solve_oracle(const WebSpec& spec, std::span<const Rational> x_values) {
  const auto& nodes = spec.numeric_nodes();
  const std::size_t n = spec.n();
  if (x_values.size() != n) throw DimensionError("expected one value per node");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Rational power = 1;
    for (std::size_t j = 0; j <= spec.k(); ++j, power *= nodes[i]) a[i][j] = power;
    power = nodes[i];
    for (std::size_t j = 1; j <= spec.l(); ++j, power *= nodes[i]) a[i][spec.k() + j] = -x_values[i] * power;
    a[i][n] = x_values[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DegenerateInterpolantError("interpolation system is singular");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Rational> solution(n);
  for (std::size_t i = 0; i < n; ++i) solution[i] = a[i][n] / a[i][i];
  return solution;
}

/// Random numeric Cauchy data: integer nodes and values in [-bound, bound],
/// nodes distinct, the interpolation system nonsingular and no node unattainable.
struct NumericInstance {
  std::vector<Rational> nodes;
  std::vector<Rational> values;
};

inline NumericInstance random_instance(std::size_t k, std::size_t l, std::mt19937_64& rng, long bound = 20) {
  const std::size_t n = k + l + 1;
  std::uniform_int_distribution<long> dist(-bound, bound);
  while (true) {
    NumericInstance inst;
    std::set<long> used;
    while (inst.nodes.size() < n) {
      long v = dist(rng);
      if (used.insert(v).second) inst.nodes.emplace_back(v);
    }
    for (std::size_t i = 0; i < n; ++i) inst.values.emplace_back(dist(rng));
    try {
      WebSpec spec = WebSpec::numeric(k, l, inst.nodes);
      solve_oracle(spec, inst.values);
      cauchy_interpolant(spec, inst.values);
      return inst;
    } catch (const DegenerateInterpolantError&) {
    }
  }
}

struct OracleComparison {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  std::optional<NumericInstance> first_mismatch;
};

/// Compares the normalized determinant interpolant against solve_oracle on
/// seeded random instances.
inline OracleComparison compare_with_oracle(std::size_t k, std::size_t l, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleComparison result;
  for (std::size_t t = 0; t < count; ++t) {
    NumericInstance inst = random_instance(k, l, rng);
    WebSpec spec = WebSpec::numeric(k, l, inst.nodes);
    CauchyInterpolant f = cauchy_interpolant(spec, inst.values);
    std::vector<Rational> direct = solve_oracle(spec, inst.values);
    std::vector<Rational> via_det;
    for (const auto& c : f.p) via_det.push_back(c.constant_value());
    for (std::size_t i = 1; i < f.q.size(); ++i) via_det.push_back(f.q[i].constant_value());
    ++result.instances;
    if (via_det != direct) {
      ++result.mismatches;
      if (!result.first_mismatch) result.first_mismatch = inst;
    }
  }
  return result;
}

}  // namespace hirota
