#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hirota/errors.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/rational.hpp"

namespace hirota {

using VariableNames = std::vector<std::string>;

/// x1..xn, followed by l1..ln when the nodes are symbolic.
inline VariableNames coordinate_names(std::size_t n, bool symbolic_nodes = false) {
  VariableNames names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  if (symbolic_nodes)
    for (std::size_t i = 1; i <= n; ++i) names.push_back("l" + std::to_string(i));
  return names;
}

namespace detail {

inline std::string render_monomial(const Monomial& m, const VariableNames& names) {
  std::string out;
  for (std::size_t v = 0; v < names.size(); ++v) {
    unsigned e = m[v];
    if (e == 0) continue;
    out += names[v];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace detail

/// Canonical text form: descending graded-lex, "a/b" coefficients, e.g.
/// "x1x2 - 2x1x3 + 1/2 x2^2 - 3".
inline std::string to_string(const MultiPoly& p, const VariableNames& names) {
  if (names.size() < p.n_vars()) throw DimensionError("not enough variable names");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational magnitude = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = detail::render_monomial(t.monomial, names);
    if (mono.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += mono;
    } else if (magnitude.get_den() == 1) {
      out += to_string(magnitude) + mono;
    } else {
      out += to_string(magnitude) + " " + mono;
    }
  }
  return out;
}

inline std::string to_string(const MultiPoly& p) { return to_string(p, coordinate_names(p.n_vars())); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n_vars, const VariableNames& names)
      : text_(text), n_vars_(n_vars), names_(names) {}

  MultiPoly parse() {
    MultiPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Accepts ASCII '-' and the UTF-8 minus sign U+2212.
  bool accept_minus() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '(';
  }

  MultiPoly expression() {
    MultiPoly sum(n_vars_);
    bool negate = accept_minus();
    if (!negate) accept('+');
    MultiPoly t = term();
    sum = negate ? -t : t;
    while (true) {
      if (accept_minus()) {
        sum -= term();
      } else if (accept('+')) {
        sum += term();
      } else {
        break;
      }
    }
    return sum;
  }

  MultiPoly term() {
    MultiPoly prod = factor();
    while (true) {
      if (accept('*')) {
        prod *= factor();
      } else if (starts_factor()) {
        prod *= factor();
      } else {
        break;
      }
    }
    return prod;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        den = digits();
        if (den.empty()) fail("expected denominator");
      }
      return MultiPoly::constant(n_vars_, parse_rational(num + "/" + den));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t v = 0; v < names_.size() && v < n_vars_; ++v)
        if (names_[v] == name) return MultiPoly::variable(n_vars_, v);
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t n_vars_;
  const VariableNames& names_;
};

}  // namespace detail

/// Parses a polynomial expression with + - * ^, parentheses, rational
/// literals "a/b" and juxtaposition as multiplication ("2x1x2").
inline MultiPoly parse_poly(std::string_view text, std::size_t n_vars, const VariableNames& names) {
  return detail::PolyParser(text, n_vars, names).parse();
}

inline MultiPoly parse_poly(std::string_view text, std::size_t n_vars) {
  return parse_poly(text, n_vars, coordinate_names(n_vars));
}

// JSON: {"nvars": N, "terms": [{"c": "num/den", "e": [e1, ..., eN]}, ...]}

inline nlohmann::json to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    std::vector<unsigned> e(p.n_vars());
    for (std::size_t v = 0; v < p.n_vars(); ++v) e[v] = t.monomial[v];
    terms.push_back({{"c", t.coeff.get_num().get_str() + "/" + t.coeff.get_den().get_str()}, {"e", e}});
  }
  return {{"nvars", p.n_vars()}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const nlohmann::json& j) {
  try {
    std::size_t n = j.at("nvars").get<std::size_t>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      auto e = t.at("e").get<std::vector<unsigned>>();
      if (e.size() != n) throw ParseError("exponent vector length differs from nvars");
      Monomial m;
      for (std::size_t v = 0; v < n; ++v) m.set(v, e[v]);
      terms.push_back({m, parse_rational(t.at("c").get<std::string>())});
    }
    return MultiPoly::from_terms(n, std::move(terms));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

namespace detail {

inline std::string latex_names(std::size_t v, std::size_t n_coords) {
  if (v < n_coords) return "x_{" + std::to_string(v + 1) + "}";
  if (v < 2 * n_coords) return "\\lambda_{" + std::to_string(v - n_coords + 1) + "}";
  return "t_{" + std::to_string(v - 2 * n_coords + 1) + "}";
}

inline std::string latex_plain(const MultiPoly& p, std::size_t n_coords) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational magnitude = abs(t.coeff);
    out += first ? (t.coeff < 0 ? "-" : "") : (t.coeff < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < p.n_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (e == 0) continue;
      mono += latex_names(v, n_coords);
      if (e > 1) mono += "^{" + std::to_string(e) + "}";
    }
    std::string coeff = magnitude.get_den() == 1
                            ? magnitude.get_num().get_str()
                            : "\\frac{" + magnitude.get_num().get_str() + "}{" + magnitude.get_den().get_str() + "}";
    if (mono.empty()) {
      out += coeff;
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += coeff + " " + mono;
    }
  }
  return out;
}

}  // namespace detail

/// LaTeX rendering. When the ring carries symbolic nodes (n_vars >= 2 n_coords),
/// terms are grouped by their x-monomial and node differences
/// (\lambda_a - \lambda_b) are factored out of each coefficient where they divide it.
inline std::string to_latex(const MultiPoly& p, std::size_t n_coords) {
  if (p.n_vars() < 2 * n_coords || n_coords == 0) return detail::latex_plain(p, n_coords);
  if (p.is_zero()) return "0";

  // Group by x-part, preserving graded-lex order of first appearance.
  std::vector<std::pair<Monomial, std::vector<Term>>> groups;
  for (const auto& t : p.terms()) {
    Monomial xpart, rest;
    for (std::size_t v = 0; v < p.n_vars(); ++v) {
      if (v < n_coords) {
        xpart.set(v, t.monomial[v]);
      } else {
        rest.set(v, t.monomial[v]);
      }
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == xpart; });
    if (it == groups.end()) {
      groups.push_back({xpart, {}});
      it = groups.end() - 1;
    }
    it->second.push_back({rest, t.coeff});
  }

  std::string out;
  bool first = true;
  for (auto& [xpart, coeff_terms] : groups) {
    MultiPoly coeff = MultiPoly::from_terms(p.n_vars(), coeff_terms);
    std::string factors;
    for (std::size_t a = n_coords; a < 2 * n_coords; ++a) {
      for (std::size_t b = a + 1; b < 2 * n_coords; ++b) {
        MultiPoly diff = MultiPoly::variable(p.n_vars(), a) - MultiPoly::variable(p.n_vars(), b);
        while (coeff.total_degree() > 0) {
          auto q = divide_exact(coeff, diff);
          if (!q) break;
          coeff = std::move(*q);
          factors += "(" + detail::latex_names(a, n_coords) + "-" + detail::latex_names(b, n_coords) + ")";
        }
      }
    }
    bool negative = false;
    std::string scalar;
    if (coeff.is_constant()) {
      Rational c = coeff.constant_value();
      negative = c < 0;
      if (abs(c) != 1) scalar = detail::latex_plain(MultiPoly::constant(p.n_vars(), abs(c)), n_coords);
    } else {
      scalar = "\\left(" + detail::latex_plain(coeff, n_coords) + "\\right)";
    }
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < n_coords; ++v) {
      unsigned e = xpart[v];
      if (e == 0) continue;
      mono += detail::latex_names(v, n_coords);
      if (e > 1) mono += "^{" + std::to_string(e) + "}";
    }
    std::string body = scalar + factors;
    if (!body.empty() && !mono.empty()) body += " ";
    out += body + mono;
    if (body.empty() && mono.empty()) out += "1";
  }
  return out;
}

}  // namespace hirota
