#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>

#include "hirota/errors.hpp"

namespace hirota {

/// Maximum number of ring variables. A symbolic-node ring over n coordinates
/// uses 2n variables, plus occasional auxiliaries (the interpolation variable,
/// a scaling parameter).
inline constexpr std::size_t kMaxVars = 24;

/// Exponent vector with a cached total degree. Exponents are stored in one
/// byte each; products that would exceed 255 in one variable throw.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial variable(std::size_t var, unsigned power = 1) {
    Monomial m;
    m.set(var, power);
    return m;
  }

  unsigned operator[](std::size_t var) const { return exps_[var]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t var, unsigned power) {
    if (var >= kMaxVars) throw DimensionError("variable index exceeds kMaxVars");
    if (power > 255) throw std::overflow_error("monomial exponent exceeds 255");
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[var] + power);
    exps_[var] = static_cast<std::uint8_t>(power);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned{a.exps_[i]} + unsigned{b.exps_[i]};
      if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
      m.exps_[i] = static_cast<std::uint8_t>(e);
    }
    m.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
    return m;
  }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      m.exps_[i] = static_cast<std::uint8_t>(other.exps_[i] - exps_[i]);
    m.degree_ = static_cast<std::uint16_t>(other.degree_ - degree_);
    return m;
  }

  /// Highest variable index with a nonzero exponent, plus one.
  std::size_t support_end() const {
    for (std::size_t i = kMaxVars; i > 0; --i)
      if (exps_[i - 1] != 0) return i;
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  /// Graded-lexicographic order with x_0 > x_1 > ...: true when a ranks above b.
  friend bool grlex_greater(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ > b.degree_;
    return std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVars) > 0;
  }

  std::size_t hash() const {
    std::uint64_t words[3];
    static_assert(sizeof(words) == kMaxVars);
    std::memcpy(words, exps_.data(), kMaxVars);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

 private:
  std::array<std::uint8_t, kMaxVars> exps_;
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace hirota
