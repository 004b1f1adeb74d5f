#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "hirota/errors.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/poly_io.hpp"
#include "hirota/rational.hpp"

namespace hirota {

/// Quotient num/den of polynomials in one ring.
///
/// No polynomial gcd is taken: equality and zero tests go through
/// cross-multiplication. Only the scalar content is normalized, so that num
/// and den have jointly coprime integer coefficients and den has a positive
/// leading coefficient.
class RationalFunction {
 public:
  RationalFunction() = default;

  explicit RationalFunction(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.n_vars(), 1)) {
    normalize();
  }

  RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.n_vars() != den_.n_vars()) throw DimensionError("numerator and denominator rings differ");
    if (den_.is_zero()) throw DivisionError("rational function with zero denominator");
    normalize();
  }

  static RationalFunction constant(std::size_t n_vars, const Rational& c) {
    return RationalFunction(MultiPoly::constant(n_vars, c));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  std::size_t n_vars() const { return num_.n_vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return combine(a, b, false);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return combine(a, b, true);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(MultiPoly(a.n_vars()));
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionError("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const Rational& c) {
    RationalFunction r = a;
    r.num_ *= c;
    r.normalize();
    return r;
  }

  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  /// Value at a point; throws EvaluationPoleError where den vanishes.
  Rational evaluate(std::span<const Rational> point) const {
    Rational d = hirota::evaluate(den_, point);
    if (d == 0) throw EvaluationPoleError("denominator vanishes at the evaluation point");
    return hirota::evaluate(num_, point) / d;
  }

 private:
  static RationalFunction combine(const RationalFunction& a, const RationalFunction& b, bool subtract) {
    if (a.n_vars() != b.n_vars()) throw DimensionError("rational functions in different rings");
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    // Denominators that agree up to a scalar need no cross-multiplication:
    // a/D +- b/(cD) = (c a +- b)/(cD).
    if (auto c = scalar_ratio(a.den_, b.den_)) {
      MultiPoly scaled = a.num_ * *c;
      return RationalFunction(subtract ? scaled - b.num_ : scaled + b.num_, b.den_);
    }
    MultiPoly left = a.num_ * b.den_;
    MultiPoly right = b.num_ * a.den_;
    return RationalFunction(subtract ? left - right : left + right, a.den_ * b.den_);
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(num_.n_vars(), 1);
      return;
    }
    Integer den_lcm = 1;
    for (const MultiPoly* p : {&num_, &den_})
      for (const auto& t : p->terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    Integer content = 0;
    for (const MultiPoly* p : {&num_, &den_}) {
      for (const auto& t : p->terms()) {
        Integer v = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
      }
    }
    Rational scale(den_lcm, content);
    if (den_.leading_term().coeff < 0) scale = -scale;
    scale.canonicalize();
    if (scale != 1) {
      num_ *= scale;
      den_ *= scale;
    }
  }

  MultiPoly num_;
  MultiPoly den_ = MultiPoly::constant(0, 1);
};

/// True iff a.num * b.den - b.num * a.den is the zero polynomial.
inline bool rf_equal(const RationalFunction& a, const RationalFunction& b) {
  if (a.n_vars() != b.n_vars()) return false;
  if (auto c = scalar_ratio(a.den(), b.den())) return a.num() * *c == b.num();
  return a.num() * b.den() == b.num() * a.den();
}

/// Nonzero scalar c with b = c * a (as functions), if one exists.
inline std::optional<Rational> rf_scalar_ratio(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  MultiPoly left = b.num() * a.den();
  MultiPoly right = a.num() * b.den();
  return scalar_ratio(right, left);
}

/// Quotient rule: (num_v den - num den_v) / den^2.
inline RationalFunction rf_derivative(const RationalFunction& f, std::size_t var) {
  if (var >= f.n_vars()) throw DimensionError("derivative variable out of range");
  MultiPoly dn = derivative(f.num(), var);
  MultiPoly dd = derivative(f.den(), var);
  if (dd.is_zero()) return RationalFunction(dn, f.den());
  return RationalFunction(dn * f.den() - f.num() * dd, f.den() * f.den());
}

inline std::string to_string(const RationalFunction& f, const VariableNames& names) {
  if (f.den().is_constant() && f.den().constant_value() == 1) return to_string(f.num(), names);
  return "(" + to_string(f.num(), names) + ")/(" + to_string(f.den(), names) + ")";
}

inline std::string to_string(const RationalFunction& f) { return to_string(f, coordinate_names(f.n_vars())); }

}  // namespace hirota
