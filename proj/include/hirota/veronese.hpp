#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hirota/differential_form.hpp"
#include "hirota/errors.hpp"
#include "hirota/hirota.hpp"
#include "hirota/interpolation.hpp"
#include "hirota/lambda_poly.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// alpha^lambda = prod_i (lambda - l_i) * sum_i f_i dx_i / (lambda - l_i), expanded in lambda.
/// Nodes are ring elements (constants for numeric nodes, parameters otherwise);
/// the coordinates are the first nodes.size() ring variables.
inline LambdaPoly<DifferentialForm> veronese_form(const RationalFunction& f, std::span<const MultiPoly> nodes) {
  const std::size_t n = nodes.size();
  const std::size_t ring = f.n_vars();
  if (n == 0 || n > ring) throw DimensionError("veronese_form needs 1..n_vars coordinates");
  bool all_constant = true;
  for (const auto& node : nodes) {
    if (node.n_vars() != ring) throw DimensionError("node polynomial in the wrong ring");
    all_constant = all_constant && node.is_constant();
  }
  if (all_constant) {
    std::set<Rational> seen;
    for (const auto& node : nodes) seen.insert(node.constant_value());
    if (seen.size() != n) throw SpecError("veronese_form nodes must be pairwise distinct");
  }

  std::vector<DifferentialForm> coeffs(n, DifferentialForm(1, n, ring));
  for (std::size_t i = 0; i < n; ++i) {
    // prod_{j != i} (lambda - l_j), low degree first.
    std::vector<MultiPoly> prod{MultiPoly::constant(ring, 1)};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<MultiPoly> next(prod.size() + 1, MultiPoly(ring));
      for (std::size_t m = 0; m < prod.size(); ++m) {
        next[m + 1] += prod[m];
        next[m] -= prod[m] * nodes[j];
      }
      prod = std::move(next);
    }
    RationalFunction fi = rf_derivative(f, i);
    for (std::size_t m = 0; m < prod.size(); ++m) {
      if (prod[m].is_zero()) continue;
      coeffs[m].add({i}, fi * RationalFunction(prod[m]));
    }
  }
  return LambdaPoly<DifferentialForm>(std::move(coeffs));
}

inline LambdaPoly<DifferentialForm> veronese_form(const RationalFunction& f, std::span<const Rational> nodes) {
  std::vector<MultiPoly> polys;
  for (const auto& node : nodes) polys.push_back(MultiPoly::constant(f.n_vars(), node));
  return veronese_form(f, polys);
}

/// d alpha ^ alpha as a lambda-polynomial of 3-forms (degree 2 deg alpha).
inline LambdaPoly<DifferentialForm> frobenius_obstruction(const LambdaPoly<DifferentialForm>& alpha) {
  if (alpha.size() == 0) throw DimensionError("empty lambda-polynomial");
  const auto& first = alpha[0];
  for (const auto& c : alpha.coefficients())
    if (c.degree() != 1) throw DimensionError("frobenius_check expects one-form coefficients");
  std::vector<DifferentialForm> d;
  for (const auto& c : alpha.coefficients()) d.push_back(exterior_derivative(c));
  std::vector<DifferentialForm> out(2 * alpha.size() - 1, DifferentialForm(3, first.dim(), first.n_vars()));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < alpha.size(); ++a)
    for (std::size_t b = 0; b < alpha.size(); ++b) pairs.emplace_back(a, b);
  std::vector<DifferentialForm> products(pairs.size(), DifferentialForm(3, first.dim(), first.n_vars()));
  parallel_for(pairs.size(), [&](std::size_t p) {
    products[p] = wedge(d[pairs[p].first], alpha[pairs[p].second]);
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) out[pairs[p].first + pairs[p].second] = out[pairs[p].first + pairs[p].second] + products[p];
  return LambdaPoly<DifferentialForm>(std::move(out));
}

/// True iff every lambda-coefficient of d alpha ^ alpha is the zero 3-form.
inline bool frobenius_check(const LambdaPoly<DifferentialForm>& alpha) {
  auto obstruction = frobenius_obstruction(alpha);
  for (const auto& c : obstruction.coefficients())
    if (!form_is_zero(c)) return false;
  return true;
}

/// Single one-form version: d alpha ^ alpha = 0.
inline bool frobenius_check(const DifferentialForm& alpha) {
  return form_is_zero(wedge(exterior_derivative(alpha), alpha));
}

/// One-forms alpha_0..alpha_{n-1} with Q dP - P dQ = sum_m lambda^m alpha_m.
struct Coframe {
  std::vector<DifferentialForm> alphas;
};

/// alpha_m = sum_{i+j=m} (Q_i dP_j - P_j dQ_i) from the unnormalized
/// interpolant. Coefficients are polynomials; the normalized coframe
/// (q_0 = 1) is this one divided by Q_0^2.
inline Coframe coframe(const WebSpec& spec) {
  const std::size_t n = spec.n(), ring = spec.ring_vars();
  CauchyInterpolant interp = cauchy_interpolant(spec);
  std::vector<DifferentialForm> dp, dq;
  for (const auto& c : interp.p) dp.push_back(DifferentialForm::differential(RationalFunction(c), n));
  for (const auto& c : interp.q) dq.push_back(DifferentialForm::differential(RationalFunction(c), n));
  Coframe out;
  for (std::size_t m = 0; m < n; ++m) {
    DifferentialForm alpha(1, n, ring);
    for (std::size_t i = 0; i <= spec.l() && i <= m; ++i) {
      std::size_t j = m - i;
      if (j > spec.k()) continue;
      alpha = alpha + RationalFunction(interp.q[i]) * dp[j];
      alpha = alpha - RationalFunction(interp.p[j]) * dq[i];
    }
    out.alphas.push_back(std::move(alpha));
  }
  return out;
}

enum class FlatnessStatus { kFlatCertified, kNonflatCertified, kInconclusive };

inline std::string to_string(FlatnessStatus s) {
  switch (s) {
    case FlatnessStatus::kFlatCertified:
      return "flat-certified";
    case FlatnessStatus::kNonflatCertified:
      return "nonflat-certified";
    case FlatnessStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct FlatnessVerdict {
  FlatnessStatus status = FlatnessStatus::kInconclusive;
  /// d alpha_1 ^ alpha_1, the primary certificate.
  DifferentialForm witness{3, 0, 0};
  /// d alpha_{n-2} ^ alpha_{n-2}, reported alongside.
  DifferentialForm cross_check{3, 0, 0};
  std::size_t witness_index = 1;
  std::size_t cross_check_index = 1;
  bool alpha1_integrable = false;
  bool alpha_n2_integrable = false;
  /// For k, l >= 1: whether d a_1 ^ a_1 = 2 dq_1 ^ dp_0 ^ dp_1 holds for the
  /// normalized coframe (q_0 = 1) in x-coordinates.
  std::optional<bool> witness_identity;
};

namespace detail {

inline DifferentialForm integrability_form(const DifferentialForm& alpha) {
  return wedge(exterior_derivative(alpha), alpha);
}

}  // namespace detail

/// Nonflat when d alpha_1 ^ alpha_1 != 0; flat when both alpha_1 and
/// alpha_{n-2} are Frobenius integrable.
inline FlatnessVerdict flatness_check(const WebSpec& spec) {
  if (spec.n() < 3) throw SpecError("flatness_check requires n >= 3");
  const std::size_t n = spec.n(), ring = spec.ring_vars();
  Coframe frame = coframe(spec);
  FlatnessVerdict verdict;
  verdict.witness_index = 1;
  verdict.cross_check_index = n - 2;
  verdict.witness = detail::integrability_form(frame.alphas[1]);
  verdict.cross_check =
      n - 2 == 1 ? verdict.witness : detail::integrability_form(frame.alphas[n - 2]);
  verdict.alpha1_integrable = form_is_zero(verdict.witness);
  verdict.alpha_n2_integrable = form_is_zero(verdict.cross_check);
  if (!verdict.alpha1_integrable) {
    verdict.status = FlatnessStatus::kNonflatCertified;
  } else if (verdict.alpha_n2_integrable) {
    verdict.status = FlatnessStatus::kFlatCertified;
  }

  if (spec.k() >= 1 && spec.l() >= 1) {
    CauchyInterpolant interp = cauchy_interpolant(spec);
    const MultiPoly& q0 = interp.q[0];
    RationalFunction p0(interp.p[0], q0), p1(interp.p[1], q0), q1(interp.q[1], q0);
    RationalFunction inv_q0_sq(MultiPoly::constant(ring, 1), q0 * q0);
    DifferentialForm normalized = inv_q0_sq * frame.alphas[1];
    DifferentialForm lhs = detail::integrability_form(normalized);
    DifferentialForm rhs = wedge(wedge(DifferentialForm::differential(q1, n), DifferentialForm::differential(p0, n)),
                                 DifferentialForm::differential(p1, n)) *
                           Rational(2);
    verdict.witness_identity = form_equal(lhs, rhs);
  }
  return verdict;
}

}  // namespace hirota
