#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/multipoly.hpp"

namespace hirota {

/// Dense row-major matrix of polynomials sharing one ring.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n_vars)
      : rows_(rows), cols_(cols), n_vars_(n_vars), entries_(rows * cols, MultiPoly(n_vars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n_vars() const { return n_vars_; }

  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  void set(std::size_t r, std::size_t c, MultiPoly value) {
    if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
    if (value.n_vars() != n_vars_) throw DimensionError("matrix entry in the wrong ring");
    entries_[r * cols_ + c] = std::move(value);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap(entries_[a * cols_ + c], entries_[b * cols_ + c]);
  }

  /// Copy with the given column removed.
  PolyMatrix without_column(std::size_t col) const {
    PolyMatrix m(rows_, cols_ - 1, n_vars_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0, out = 0; c < cols_; ++c)
        if (c != col) m.entries_[r * m.cols_ + out++] = (*this)(r, c);
    return m;
  }

  PolyMatrix without_row(std::size_t row) const {
    PolyMatrix m(rows_ - 1, cols_, n_vars_);
    for (std::size_t r = 0, out = 0; r < rows_; ++r) {
      if (r == row) continue;
      for (std::size_t c = 0; c < cols_; ++c) m.entries_[out * cols_ + c] = (*this)(r, c);
      ++out;
    }
    return m;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_, cols_, n_vars_;
  std::vector<MultiPoly> entries_;
};

enum class DeterminantMethod { kAuto, kCofactor, kBareiss };

/// Dimension up to which kAuto uses memoized cofactor expansion.
inline constexpr std::size_t kCofactorThreshold = 6;

namespace detail {

// Laplace expansion over column subsets, memoized by column mask. For an
// r x c matrix (r <= c) this yields the determinant of the leading |S| rows
// restricted to every column subset S with |S| <= r.
class MinorTable {
 public:
  explicit MinorTable(const PolyMatrix& m) : m_(m), memo_(std::size_t{1} << m.cols()) {
    if (m.cols() > 20) throw DimensionError("cofactor expansion limited to 20 columns");
    memo_[0] = MultiPoly::constant(m.n_vars(), 1);
  }

  const MultiPoly& minor(std::uint32_t mask) {
    auto& slot = memo_[mask];
    if (slot) return *slot;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    MultiPoly sum(m_.n_vars());
    std::size_t position = 0;
    for (std::size_t c = 0; c < m_.cols(); ++c) {
      if (!(mask & (1U << c))) continue;
      const MultiPoly& entry = m_(row, c);
      if (!entry.is_zero()) {
        MultiPoly term = entry * minor(mask & ~(1U << c));
        // Sign of the expansion along the last row of the sub-block.
        if ((position + row) % 2 == 0) {
          sum += term;
        } else {
          sum -= term;
        }
      }
      ++position;
    }
    slot = std::move(sum);
    return *slot;
  }

 private:
  const PolyMatrix& m_;
  std::vector<std::optional<MultiPoly>> memo_;
};

inline MultiPoly bareiss(PolyMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0) return MultiPoly::constant(m.n_vars(), 1);
  bool negate = false;
  MultiPoly previous = MultiPoly::constant(m.n_vars(), 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return MultiPoly(m.n_vars());
      m.swap_rows(k, swap);
      negate = !negate;
    }
    const MultiPoly pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly numerator = pivot * m(i, j) - m(i, k) * m(k, j);
        auto quotient = divide_exact(numerator, previous);
        if (!quotient) throw DivisionError("Bareiss step produced an inexact division");
        m.set(i, j, std::move(*quotient));
      }
      m.set(i, k, MultiPoly(m.n_vars()));
    }
    previous = pivot;
  }
  MultiPoly det = m(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace detail

/// Exact determinant. kAuto uses memoized cofactor expansion up to
/// kCofactorThreshold and fraction-free Bareiss elimination above it.
inline MultiPoly determinant(const PolyMatrix& m, DeterminantMethod method = DeterminantMethod::kAuto) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  if (method == DeterminantMethod::kAuto)
    method = m.rows() <= kCofactorThreshold ? DeterminantMethod::kCofactor : DeterminantMethod::kBareiss;
  if (method == DeterminantMethod::kBareiss) return detail::bareiss(m);
  if (m.rows() == 0) return MultiPoly::constant(m.n_vars(), 1);
  detail::MinorTable table(m);
  return table.minor(static_cast<std::uint32_t>((std::uint64_t{1} << m.cols()) - 1));
}

/// All maximal minors of an r x (r+1) matrix: entry j is the determinant with
/// column j deleted. Computed in one memoized expansion.
inline std::vector<MultiPoly> maximal_minors(const PolyMatrix& m) {
  if (m.cols() != m.rows() + 1) throw DimensionError("maximal_minors expects an r x (r+1) matrix");
  detail::MinorTable table(m);
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << m.cols()) - 1);
  std::vector<MultiPoly> minors;
  minors.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) minors.push_back(table.minor(full & ~(1U << j)));
  return minors;
}

}  // namespace hirota
