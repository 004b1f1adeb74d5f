#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/monomial.hpp"
#include "hirota/rational.hpp"

namespace hirota {

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in descending graded-lexicographic order with no
/// zero coefficients, so two polynomials in the same ring are equal exactly
/// when their term lists are equal, and zero-testing is `terms().empty()`.
///
/// Variable indices run over 0..n_vars-1. By convention the first n indices
/// are the coordinates x_1..x_n and, when the nodes are symbolic, the next n
/// are the node parameters l_1..l_n.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t n_vars) : n_vars_(check_vars(n_vars)) {}

  static MultiPoly constant(std::size_t n_vars, const Rational& c) {
    MultiPoly p(n_vars);
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
  }

  static MultiPoly variable(std::size_t n_vars, std::size_t var, unsigned power = 1) {
    if (var >= n_vars) throw DimensionError("variable index out of range");
    MultiPoly p(n_vars);
    p.terms_.push_back({Monomial::variable(var, power), Rational(1)});
    return p;
  }

  static MultiPoly monomial(std::size_t n_vars, const Monomial& m, const Rational& c) {
    if (m.support_end() > n_vars) throw DimensionError("monomial outside ring");
    MultiPoly p(n_vars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds a polynomial from arbitrary (possibly repeated, zero) terms.
  static MultiPoly from_terms(std::size_t n_vars, std::vector<Term> terms) {
    MultiPoly p(n_vars);
    for (const auto& t : terms)
      if (t.monomial.support_end() > n_vars) throw DimensionError("monomial outside ring");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return grlex_greater(a.monomial, b.monomial);
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff += t.coeff;
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
    return p;
  }

  std::size_t n_vars() const { return n_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
  }
  Rational constant_value() const {
    if (!is_constant()) throw DimensionError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.front().coeff;
  }

  /// Leading term under graded-lex; the polynomial must be nonzero.
  const Term& leading_term() const {
    if (terms_.empty()) throw DivisionError("leading term of zero polynomial");
    return terms_.front();
  }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.monomial == m) return t.coeff;
    return 0;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& other) { return *this = merge(*this, other, false); }
  MultiPoly& operator-=(const MultiPoly& other) { return *this = merge(*this, other, true); }
  MultiPoly& operator*=(const MultiPoly& other) { return *this = multiply(*this, other); }
  MultiPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_vars_ != b.n_vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    }
    return true;
  }

 private:
  static std::size_t check_vars(std::size_t n) {
    if (n > kMaxVars) throw DimensionError("ring has more than kMaxVars variables");
    return n;
  }

  static void require_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_vars_ != b.n_vars_)
      throw DimensionError("polynomials live in rings of different sizes (" +
                           std::to_string(a.n_vars_) + " vs " + std::to_string(b.n_vars_) + ")");
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    require_same_ring(a, b);
    MultiPoly r(a.n_vars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && grlex_greater(a.terms_[i].monomial, b.terms_[j].monomial))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].monomial, a.terms_[i].monomial)) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
    require_same_ring(a, b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.n_vars_);
    if (a.terms_.size() == 1) return scale_by_term(b, a.terms_.front());
    if (b.terms_.size() == 1) return scale_by_term(a, b.terms_.front());

    const MultiPoly& outer = a.terms_.size() <= b.terms_.size() ? a : b;
    const MultiPoly& inner = a.terms_.size() <= b.terms_.size() ? b : a;
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(outer.size() * inner.size(), 1U << 22));
    Rational prod;
    for (const auto& s : outer.terms_) {
      for (const auto& t : inner.terms_) {
        mpq_mul(prod.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
        auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial);
        if (inserted) {
          mpq_swap(it->second.get_mpq_t(), prod.get_mpq_t());
        } else {
          mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
        }
      }
    }
    MultiPoly r(a.n_vars_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) {
      return grlex_greater(x.monomial, y.monomial);
    });
    return r;
  }

  // Multiplying by a single term preserves the monomial order.
  static MultiPoly scale_by_term(const MultiPoly& p, const Term& t) {
    MultiPoly r(p.n_vars_);
    r.terms_.reserve(p.terms_.size());
    for (const auto& s : p.terms_) r.terms_.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
    return r;
  }

  std::size_t n_vars_ = 0;
  std::vector<Term> terms_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(base.n_vars(), 1);
  MultiPoly b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline MultiPoly derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.n_vars()) throw DimensionError("derivative variable out of range");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned e = t.monomial[var];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Lowering one exponent can reorder terms, so re-canonicalize.
  return MultiPoly::from_terms(p.n_vars(), std::move(out));
}

/// Replaces every variable i by images[i]; all images live in a ring with
/// `target_vars` variables, which becomes the ring of the result.
inline MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> images, std::size_t target_vars) {
  if (images.size() != p.n_vars()) throw DimensionError("compose needs one image per variable");
  for (const auto& img : images)
    if (img.n_vars() != target_vars) throw DimensionError("compose image in the wrong ring");

  // Images that are a single term can be folded into monomials directly.
  std::vector<std::optional<Term>> simple(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].is_zero()) {
      simple[i] = Term{Monomial{}, Rational(0)};
    } else if (images[i].size() == 1) {
      simple[i] = images[i].terms().front();
    }
  }
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power_of = [&](std::size_t var, unsigned e) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target_vars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };

  std::vector<Term> folded;
  MultiPoly result(target_vars);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m;
    std::vector<std::pair<std::size_t, unsigned>> general;
    for (std::size_t v = 0; v < p.n_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (e == 0) continue;
      if (simple[v]) {
        c *= pow(simple[v]->coeff, e);
        for (unsigned k = 0; k < e; ++k) m = m * simple[v]->monomial;
      } else {
        general.emplace_back(v, e);
      }
    }
    if (c == 0) continue;
    if (general.empty()) {
      folded.push_back({m, c});
    } else {
      MultiPoly prod = MultiPoly::monomial(target_vars, m, c);
      for (auto [v, e] : general) prod *= power_of(v, e);
      result += prod;
    }
  }
  return result + MultiPoly::from_terms(target_vars, std::move(folded));
}

/// Substitutes the assigned variables (values in the same ring); the others stay.
inline MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& assignment) {
  std::vector<MultiPoly> images;
  images.reserve(p.n_vars());
  for (std::size_t v = 0; v < p.n_vars(); ++v) images.push_back(MultiPoly::variable(p.n_vars(), v));
  for (const auto& [v, value] : assignment) {
    if (v >= p.n_vars()) throw DimensionError("substitution variable out of range");
    if (value.n_vars() != p.n_vars()) throw DimensionError("substituted value in the wrong ring");
    images[v] = value;
  }
  return compose(p, images, p.n_vars());
}

inline MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, Rational>& assignment) {
  std::map<std::size_t, MultiPoly> values;
  for (const auto& [v, c] : assignment) values.emplace(v, MultiPoly::constant(p.n_vars(), c));
  return substitute(p, values);
}

/// Moves the polynomial to a ring with `target_vars` variables; variable i
/// becomes mapping[i]. Variables mapped to nullopt must not occur in p.
inline MultiPoly reindex(const MultiPoly& p, std::size_t target_vars,
                         std::span<const std::optional<std::size_t>> mapping) {
  if (mapping.size() != p.n_vars()) throw DimensionError("reindex needs one entry per variable");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < p.n_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (e == 0) continue;
      if (!mapping[v]) throw DimensionError("reindex drops a variable that still occurs");
      if (*mapping[v] >= target_vars) throw DimensionError("reindex target out of range");
      m.set(*mapping[v], m[*mapping[v]] + e);
    }
    out.push_back({m, t.coeff});
  }
  return MultiPoly::from_terms(target_vars, std::move(out));
}

/// Embeds p into a larger ring, keeping variable indices.
inline MultiPoly extend(const MultiPoly& p, std::size_t target_vars) {
  if (target_vars < p.n_vars()) throw DimensionError("extend cannot shrink the ring");
  std::vector<std::optional<std::size_t>> mapping(p.n_vars());
  for (std::size_t v = 0; v < p.n_vars(); ++v) mapping[v] = v;
  return reindex(p, target_vars, mapping);
}

inline Rational evaluate(const MultiPoly& p, std::span<const Rational> point) {
  if (point.size() != p.n_vars()) throw DimensionError("evaluation point has the wrong length");
  std::vector<std::vector<Rational>> powers(point.size());
  auto power_of = [&](std::size_t v, unsigned e) -> const Rational& {
    auto& cache = powers[v];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
    return cache[e];
  };
  Rational sum = 0;
  Rational term;
  for (const auto& t : p.terms()) {
    term = t.coeff;
    for (std::size_t v = 0; v < p.n_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (e != 0) term *= power_of(v, e);
    }
    sum += term;
  }
  return sum;
}

/// Result of a homogeneity query. A zero polynomial reports degree 0 with
/// `zero` set.
struct Homogeneity {
  unsigned degree = 0;
  bool zero = false;
};

/// Degree d when every term has total degree d in `vars`, nullopt otherwise.
inline std::optional<Homogeneity> homogeneity(const MultiPoly& p, std::span<const std::size_t> vars) {
  if (p.is_zero()) return Homogeneity{0, true};
  std::optional<unsigned> degree;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    for (auto v : vars) {
      if (v >= p.n_vars()) throw DimensionError("homogeneity variable out of range");
      d += t.monomial[v];
    }
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return Homogeneity{*degree, false};
}

/// Homogeneity in the first `n` variables (the coordinates).
inline std::optional<Homogeneity> homogeneity_in_first(const MultiPoly& p, std::size_t n) {
  std::vector<std::size_t> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = i;
  return homogeneity(p, vars);
}

/// Exact quotient a / b when b divides a in the polynomial ring, nullopt otherwise.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("divide_exact ring mismatch");
  if (b.is_zero()) throw DivisionError("division by the zero polynomial");
  const Term& lead = b.leading_term();
  if (b.size() == 1) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lead.monomial.divides(t.monomial)) return std::nullopt;
      out.push_back({lead.monomial.cofactor_in(t.monomial), t.coeff / lead.coeff});
    }
    return MultiPoly::from_terms(a.n_vars(), std::move(out));
  }
  std::vector<Term> quotient;
  MultiPoly rest = a;
  while (!rest.is_zero()) {
    const Term& top = rest.leading_term();
    if (!lead.monomial.divides(top.monomial)) return std::nullopt;
    Term q{lead.monomial.cofactor_in(top.monomial), top.coeff / lead.coeff};
    rest -= MultiPoly::monomial(a.n_vars(), q.monomial, q.coeff) * b;
    quotient.push_back(std::move(q));
  }
  return MultiPoly::from_terms(a.n_vars(), std::move(quotient));
}

/// Rational c with b = c * a, when it exists (both nonzero).
inline std::optional<Rational> scalar_ratio(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars() != b.n_vars() || a.size() != b.size() || a.is_zero()) return std::nullopt;
  Rational c = b.terms().front().coeff / a.terms().front().coeff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.terms()[i].monomial == b.terms()[i].monomial)) return std::nullopt;
    if (a.terms()[i].coeff * c != b.terms()[i].coeff) return std::nullopt;
  }
  return c;
}

/// Sum of all coefficients, i.e. the value at (1, ..., 1).
inline Rational coefficient_sum(const MultiPoly& p) {
  Rational s = 0;
  for (const auto& t : p.terms()) s += t.coeff;
  return s;
}

}  // namespace hirota
