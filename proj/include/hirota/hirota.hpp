#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/interpolation.hpp"
#include "hirota/multipoly.hpp"
#include "hirota/rational_function.hpp"

namespace hirota {

/// f = P_k / Q_l built from the highest coefficients of the Cauchy interpolant.
struct HirotaSolution {
  WebSpec spec;
  MultiPoly pk;
  MultiPoly ql;
  RationalFunction f;

  /// Lagrange (l = 0) and reciprocal-Lagrange (k = 0) orders give flat webs.
  bool flat_case() const { return spec.k() == 0 || spec.l() == 0; }
};

inline HirotaSolution build_solution(const WebSpec& spec) {
  auto [pk, ql] = highest_coefficients(spec);
  RationalFunction f(pk, ql);
  return {spec, std::move(pk), std::move(ql), std::move(f)};
}

/// Pairwise distinct coordinate indices (0-based), i < j < k.
using Triple = std::array<std::size_t, 3>;

inline std::vector<Triple> all_triples(std::size_t n) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

/// Worker count for independent per-triple / per-component checks. The
/// HIROTA_SEEDS_THREADS environment variable caps it.
inline std::size_t worker_threads() {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HIROTA_SEEDS_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

/// Runs body(i) for i in [0, count) on up to worker_threads() threads. Each
/// call writes only its own output slot, so results are deterministic.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace detail {

// For f = N/D all first partials share D^2 and all second partials share D^3:
//   f_i  = A_i / D^2,  A_i  = N_i D - N D_i
//   f_ij = B_ij / D^3, B_ij = N_ij D^2 - (N_i D_j + N_j D_i) D - N D_ij D + 2 N D_i D_j
// so every Hirota residual is (sum of A_i B_jk terms) / D^5.
class HirotaPartials {
 public:
  HirotaPartials(const RationalFunction& f, std::size_t dim) : n_(f.num()), d_(f.den()), dim_(dim) {
    if (dim > f.n_vars()) throw DimensionError("more coordinates than ring variables");
    for (std::size_t i = 0; i < dim; ++i) {
      n1_.push_back(derivative(n_, i));
      d1_.push_back(derivative(d_, i));
    }
    d2_ = d_ * d_;
    for (std::size_t i = 0; i < dim; ++i) a_.push_back(n1_[i] * d_ - n_ * d1_[i]);
    b_.resize(dim * dim);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
    std::vector<MultiPoly> computed(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
      auto [i, j] = pairs[p];
      MultiPoly nij = derivative(n1_[i], j);
      MultiPoly dij = derivative(d1_[i], j);
      MultiPoly b = nij * d2_;
      b -= (n1_[i] * d1_[j] + n1_[j] * d1_[i] + n_ * dij) * d_;
      b += n_ * d1_[i] * d1_[j] * Rational(2);
      computed[p] = std::move(b);
    });
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      b_[i * dim + j] = computed[p];
      b_[j * dim + i] = std::move(computed[p]);
    }
  }

  const MultiPoly& a(std::size_t i) const { return a_[i]; }
  const MultiPoly& b(std::size_t i, std::size_t j) const { return b_[i * dim_ + j]; }
  const MultiPoly& den() const { return d_; }

  /// Numerator over D^5 of (l_j - l_k) f_i f_jk + (l_k - l_i) f_j f_ki + (l_i - l_j) f_k f_ij.
  MultiPoly residual_numerator(std::span<const MultiPoly> nodes, const Triple& t) const {
    auto [i, j, k] = t;
    MultiPoly r = (nodes[j] - nodes[k]) * (a(i) * b(j, k));
    r += (nodes[k] - nodes[i]) * (a(j) * b(k, i));
    r += (nodes[i] - nodes[j]) * (a(k) * b(i, j));
    return r;
  }

 private:
  MultiPoly n_, d_;
  std::size_t dim_;
  std::vector<MultiPoly> n1_, d1_;
  MultiPoly d2_;
  std::vector<MultiPoly> a_;
  std::vector<MultiPoly> b_;
};

inline void check_triple(const Triple& t, std::size_t dim) {
  if (t[0] >= dim || t[1] >= dim || t[2] >= dim) throw IndexError("triple index out of range");
  if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw IndexError("triple indices must be pairwise distinct");
}

inline void check_nodes(std::span<const MultiPoly> nodes, std::size_t n_vars) {
  for (const auto& node : nodes)
    if (node.n_vars() != n_vars) throw DimensionError("node polynomial in the wrong ring");
}

}  // namespace detail

/// The Hirota residual for one triple as an exact rational function. The
/// coordinates are the first nodes.size() variables of f's ring; nodes may be
/// constants or parameters of that ring.
inline RationalFunction hirota_residual(const RationalFunction& f, std::span<const MultiPoly> nodes, const Triple& t) {
  detail::check_triple(t, nodes.size());
  detail::check_nodes(nodes, f.n_vars());
  detail::HirotaPartials partials(f, nodes.size());
  MultiPoly den = pow(f.den(), 5);
  return RationalFunction(partials.residual_numerator(nodes, t), std::move(den));
}

/// Random-evaluation settings. Points are integers drawn uniformly from
/// [-bound, bound] in every ring variable.
struct SampledStrategy {
  std::size_t trials = 3;
  long bound = 1'000'000;
  std::uint64_t seed = 42;
};

struct TripleVerdict {
  Triple triple;
  bool vanishes = false;
};

struct HirotaVerdict {
  bool verified = false;
  bool sampled = false;
  std::vector<TripleVerdict> triples;
  /// Sampled mode: upper bound on the total degree of every residual numerator
  /// and the resulting per-trial false-positive bound degree / (2 bound + 1).
  unsigned degree_bound = 0;
  Rational failure_bound = 0;
  std::size_t trials = 0;
};

namespace detail {

inline HirotaVerdict verify_symbolic(const RationalFunction& f, std::span<const MultiPoly> nodes) {
  HirotaVerdict verdict;
  auto triples = all_triples(nodes.size());
  verdict.triples.resize(triples.size());
  if (!triples.empty()) {
    HirotaPartials partials(f, nodes.size());
    parallel_for(triples.size(), [&](std::size_t t) {
      verdict.triples[t] = {triples[t], partials.residual_numerator(nodes, triples[t]).is_zero()};
    });
  }
  verdict.verified = std::all_of(verdict.triples.begin(), verdict.triples.end(),
                                 [](const TripleVerdict& v) { return v.vanishes; });
  return verdict;
}

// Residual numerators evaluated at random points from the values of N, D and
// their first and second partials there; no symbolic residual is formed.
inline HirotaVerdict verify_sampled(const RationalFunction& f, std::span<const MultiPoly> nodes,
                                    const SampledStrategy& strategy) {
  if (strategy.trials == 0) throw SpecError("sampled verification needs at least one trial");
  if (strategy.bound < 1) throw SpecError("sampling bound must be positive");
  const std::size_t dim = nodes.size();
  const MultiPoly& num = f.num();
  const MultiPoly& den = f.den();
  std::vector<MultiPoly> n1, d1;
  std::vector<std::vector<MultiPoly>> n2(dim), d2(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    n1.push_back(derivative(num, i));
    d1.push_back(derivative(den, i));
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      n2[i].push_back(derivative(n1[i], j));
      d2[i].push_back(derivative(d1[i], j));
    }

  HirotaVerdict verdict;
  verdict.sampled = true;
  verdict.trials = strategy.trials;
  const unsigned dn = num.total_degree(), dd = den.total_degree();
  unsigned node_degree = 0;
  for (const auto& node : nodes) node_degree = std::max(node_degree, node.total_degree());
  const unsigned deg_a = dn + dd >= 1 ? dn + dd - 1 : 0;
  const unsigned deg_b = dn + 2 * dd >= 2 ? dn + 2 * dd - 2 : 0;
  verdict.degree_bound = node_degree + deg_a + deg_b;
  verdict.failure_bound = Rational(verdict.degree_bound, 2 * strategy.bound + 1);
  verdict.failure_bound.canonicalize();

  auto triples = all_triples(dim);
  for (const auto& t : triples) verdict.triples.push_back({t, true});

  std::mt19937_64 rng(strategy.seed);
  std::uniform_int_distribution<long> dist(-strategy.bound, strategy.bound);
  for (std::size_t trial = 0; trial < strategy.trials; ++trial) {
    std::vector<Rational> point;
    for (std::size_t v = 0; v < f.n_vars(); ++v) point.emplace_back(dist(rng));
    const Rational vn = evaluate(num, point), vd = evaluate(den, point);
    std::vector<Rational> vn1, vd1, vnode;
    for (std::size_t i = 0; i < dim; ++i) {
      vn1.push_back(evaluate(n1[i], point));
      vd1.push_back(evaluate(d1[i], point));
      vnode.push_back(evaluate(nodes[i], point));
    }
    auto a = [&](std::size_t i) -> Rational { return vn1[i] * vd - vn * vd1[i]; };
    auto b = [&](std::size_t i, std::size_t j) -> Rational {
      Rational nij = evaluate(n2[i][j], point), dij = evaluate(d2[i][j], point);
      return nij * vd * vd - (vn1[i] * vd1[j] + vn1[j] * vd1[i] + vn * dij) * vd + 2 * vn * vd1[i] * vd1[j];
    };
    for (auto& tv : verdict.triples) {
      auto [i, j, k] = tv.triple;
      Rational r = (vnode[j] - vnode[k]) * a(i) * b(j, k) + (vnode[k] - vnode[i]) * a(j) * b(k, i) +
                   (vnode[i] - vnode[j]) * a(k) * b(i, j);
      if (r != 0) tv.vanishes = false;
    }
  }
  verdict.verified = std::all_of(verdict.triples.begin(), verdict.triples.end(),
                                 [](const TripleVerdict& v) { return v.vanishes; });
  return verdict;
}

}  // namespace detail

/// Checks every triple of the Hirota system. Symbolic mode asserts each
/// residual numerator is the zero polynomial; sampled mode evaluates it
/// exactly at random integer points (Schwartz-Zippel).
inline HirotaVerdict verify_hirota(const RationalFunction& f, std::span<const MultiPoly> nodes,
                                   const std::optional<SampledStrategy>& sampled = std::nullopt) {
  detail::check_nodes(nodes, f.n_vars());
  if (nodes.size() > f.n_vars()) throw DimensionError("more coordinates than ring variables");
  return sampled ? detail::verify_sampled(f, nodes, *sampled) : detail::verify_symbolic(f, nodes);
}

inline HirotaVerdict verify_hirota(const HirotaSolution& sol, const std::optional<SampledStrategy>& sampled = std::nullopt) {
  auto nodes = sol.spec.node_polys();
  return verify_hirota(sol.f, nodes, sampled);
}

/// f(t x) = t f(x), checked as P(t x) Q(x) = t P(x) Q(t x) with t an extra ring variable.
inline bool degree_one_homogeneous(const RationalFunction& f, std::size_t dim) {
  const std::size_t ring = f.n_vars() + 1;
  if (ring > kMaxVars) throw DimensionError("no room for the scaling variable");
  MultiPoly t = MultiPoly::variable(ring, f.n_vars());
  std::vector<MultiPoly> scaled;
  for (std::size_t v = 0; v < f.n_vars(); ++v) {
    MultiPoly var = MultiPoly::variable(ring, v);
    scaled.push_back(v < dim ? t * var : var);
  }
  MultiPoly num = extend(f.num(), ring), den = extend(f.den(), ring);
  MultiPoly num_scaled = compose(f.num(), scaled, ring), den_scaled = compose(f.den(), scaled, ring);
  return num_scaled * den == t * num * den_scaled;
}

}  // namespace hirota
