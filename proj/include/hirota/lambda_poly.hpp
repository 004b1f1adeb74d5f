#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/rational.hpp"

namespace hirota {

/// Polynomial in the distinguished indeterminate lambda with coefficients of
/// type T; coefficient m multiplies lambda^m.
template <class T>
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  /// Formal degree (number of stored coefficients minus one).
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  const T& operator[](std::size_t m) const { return coeffs_.at(m); }
  T& operator[](std::size_t m) { return coeffs_.at(m); }
  const std::vector<T>& coefficients() const { return coeffs_; }

  /// Horner evaluation at a numeric lambda.
  T evaluate(const Rational& mu) const {
    if (coeffs_.empty()) throw DimensionError("evaluating an empty lambda-polynomial");
    T acc = coeffs_.back();
    for (std::size_t m = coeffs_.size() - 1; m-- > 0;) acc = acc * mu + coeffs_[m];
    return acc;
  }

 private:
  std::vector<T> coeffs_;
};

}  // namespace hirota
