#include <gtest/gtest.h>

#include <random>

#include "closed_forms.hpp"
#include "hirota/errors.hpp"
#include "hirota/hirota.hpp"
#include "hirota/properties.hpp"
#include "hirota/transforms.hpp"
#include "hirota/veronese.hpp"
#include "support.hpp"

using namespace hirota;

namespace {

MultiPoly P(const std::string& text, std::size_t n_vars = 3) { return parse_poly(text, n_vars); }

std::vector<MultiPoly> numeric_nodes(std::initializer_list<long> nodes, std::size_t ring) {
  std::vector<MultiPoly> out;
  for (long v : nodes) out.push_back(MultiPoly::constant(ring, v));
  return out;
}

std::vector<MultiPoly> nodes_of(const WebSpec& spec) { return spec.node_polys(); }

// Independent oracle for residuals: chain rf_derivative instead of the closed forms.
RationalFunction residual_by_chain_rule(const RationalFunction& f, std::span<const MultiPoly> nodes, const Triple& t) {
  auto d = [&](std::size_t v) { return rf_derivative(f, v); };
  auto dd = [&](std::size_t a, std::size_t b) { return rf_derivative(rf_derivative(f, a), b); };
  auto [i, j, k] = t;
  RationalFunction li(nodes[i]), lj(nodes[j]), lk(nodes[k]);
  return (lj - lk) * d(i) * dd(j, k) + (lk - li) * d(j) * dd(k, i) + (li - lj) * d(k) * dd(i, j);
}

// Wedge of two covectors given as coefficient vectors.
bool proportional(const std::map<IndexSet, Rational>& a, const std::map<IndexSet, Rational>& b, std::size_t dim) {
  auto get = [](const std::map<IndexSet, Rational>& m, std::size_t i) {
    auto it = m.find({i});
    return it == m.end() ? Rational(0) : it->second;
  };
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (get(a, i) * get(b, j) - get(a, j) * get(b, i) != 0) return false;
  return true;
}

}  // namespace

TEST(BuildSolution, ThreeNodesNumeric) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  EXPECT_EQ(sol.pk, P("x1x2 - 2x1x3 + x2x3"));
  EXPECT_EQ(sol.ql, P("-x1 + 2x2 - x3"));
  EXPECT_TRUE(rf_equal(sol.f, RationalFunction(sol.pk, sol.ql)));
  EXPECT_FALSE(sol.flat_case());
}

TEST(BuildSolution, ThreeNodesSymbolicMatchesDisplay) {
  WebSpec spec = WebSpec::symbolic(1, 1);
  HirotaSolution sol = build_solution(spec);
  RationalFunction display(parse_poly(closed_forms::kDim3Num, 6, spec.names()),
                           parse_poly(closed_forms::kDim3Den, 6, spec.names()));
  EXPECT_TRUE(rf_equal(sol.f, display));
}

TEST(BuildSolution, FiveNodeDisplaysMatchUpToScalar) {
  struct Case {
    std::size_t k, l;
    const char *p, *q;
  };
  for (const Case& c : {Case{3, 1, closed_forms::kDim5P3, closed_forms::kDim5Q1},
                        Case{2, 2, closed_forms::kDim5P2, closed_forms::kDim5Q2}}) {
    WebSpec spec = WebSpec::symbolic(c.k, c.l);
    HirotaSolution sol = build_solution(spec);
    MultiPoly p = parse_poly(c.p, 10, spec.names()), q = parse_poly(c.q, 10, spec.names());
    auto rp = scalar_ratio(p, sol.pk), rq = scalar_ratio(q, sol.ql);
    ASSERT_TRUE(rp && rq) << spec.describe();
    EXPECT_EQ(*rp, *rq) << spec.describe();
  }
}

TEST(BuildSolution, DegenerateOrdersAreFlagged) {
  EXPECT_TRUE(build_solution(WebSpec::standard(2, 0)).flat_case());
  EXPECT_TRUE(build_solution(WebSpec::standard(0, 2)).flat_case());
}

TEST(HirotaResidual, LinearFunctionHasZeroResidual) {
  RationalFunction f(P("x1 + x2 + x3"));
  auto nodes = numeric_nodes({1, 2, 3}, 3);
  EXPECT_TRUE(hirota_residual(f, nodes, {0, 1, 2}).is_zero());
}

TEST(HirotaResidual, HandComputedConstant) {
  RationalFunction f(P("x1x2 + x3"));
  auto nodes = numeric_nodes({1, 2, 3}, 3);
  EXPECT_TRUE(rf_equal(hirota_residual(f, nodes, {0, 1, 2}), RationalFunction::constant(3, -1)));
}

TEST(HirotaResidual, ThreeDimensionalSolutionVanishes) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  auto nodes = nodes_of(sol.spec);
  EXPECT_TRUE(hirota_residual(sol.f, nodes, {0, 1, 2}).is_zero());
}

TEST(HirotaResidual, BadTriplesThrow) {
  RationalFunction f(P("x1"));
  auto nodes = numeric_nodes({1, 2, 3}, 3);
  EXPECT_THROW(hirota_residual(f, nodes, {0, 0, 2}), IndexError);
  EXPECT_THROW(hirota_residual(f, nodes, {0, 1, 3}), IndexError);
}

TEST(HirotaResidual, MatchesChainRuleOracle) {
  std::mt19937_64 rng(73);
  auto nodes = numeric_nodes({2, -1, 5, 3}, 4);
  for (int trial = 0; trial < 15; ++trial) {
    RationalFunction f(testing_support::random_poly(rng, 4, 4, 3), testing_support::random_nonzero_poly(rng, 4, 3, 2));
    for (const auto& t : all_triples(4))
      EXPECT_TRUE(rf_equal(hirota_residual(f, nodes, t), residual_by_chain_rule(f, nodes, t)));
  }
}

TEST(VerifyHirota, ThreeDimensionalSymbolic) {
  HirotaVerdict v = verify_hirota(build_solution(WebSpec::standard(1, 1)));
  EXPECT_TRUE(v.verified);
  EXPECT_FALSE(v.sampled);
  EXPECT_EQ(v.triples.size(), 1U);
}

TEST(VerifyHirota, FourDimensionalSymbolicNodesAllTriples) {
  HirotaVerdict v = verify_hirota(build_solution(WebSpec::symbolic(2, 1)));
  EXPECT_TRUE(v.verified);
  ASSERT_EQ(v.triples.size(), 4U);
  // Dependence among the four equations: each one vanishes on its own.
  for (const auto& t : v.triples) EXPECT_TRUE(t.vanishes);
}

TEST(VerifyHirota, FiveDimensionalSampled) {
  HirotaVerdict v = verify_hirota(build_solution(WebSpec::standard(2, 2)), SampledStrategy{3, 1'000'000, 42});
  EXPECT_TRUE(v.verified);
  EXPECT_TRUE(v.sampled);
  EXPECT_EQ(v.trials, 3U);
  EXPECT_EQ(v.triples.size(), 10U);
  EXPECT_GT(v.degree_bound, 0U);
  Rational expected(v.degree_bound, 2'000'001);
  expected.canonicalize();
  EXPECT_EQ(v.failure_bound, expected);
}

TEST(VerifyHirota, AllOrdersUpToFourBothNodeModes) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_TRUE(verify_hirota(build_solution(WebSpec::standard(k, n - 1 - k))).verified) << n << " " << k;
      EXPECT_TRUE(verify_hirota(build_solution(WebSpec::symbolic(k, n - 1 - k))).verified) << n << " " << k;
    }
  }
}

TEST(VerifyHirota, CorruptedFunctionFailsInBothModes) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  RationalFunction bad(sol.pk + P("x1"), sol.ql);
  auto nodes = nodes_of(sol.spec);
  EXPECT_FALSE(verify_hirota(bad, nodes).verified);
  EXPECT_FALSE(verify_hirota(bad, nodes, SampledStrategy{}).verified);
}

TEST(VerifyHirota, TwoVariablesAreVacuous) {
  HirotaVerdict v = verify_hirota(build_solution(WebSpec::standard(1, 0)));
  EXPECT_TRUE(v.verified);
  EXPECT_TRUE(v.triples.empty());
}

TEST(VerifyHirota, SampledIsDeterministicInSeed) {
  HirotaSolution sol = build_solution(WebSpec::symbolic(1, 1));
  RationalFunction bad(sol.pk + sol.spec.x(0) * sol.spec.x(0), sol.ql);
  auto nodes = nodes_of(sol.spec);
  auto a = verify_hirota(bad, nodes, SampledStrategy{2, 1000, 9});
  auto b = verify_hirota(bad, nodes, SampledStrategy{2, 1000, 9});
  EXPECT_EQ(a.verified, b.verified);
  EXPECT_EQ(a.degree_bound, b.degree_bound);
}

TEST(Homogeneity, SolutionsAreDegreeOne) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_TRUE(degree_one_homogeneous(build_solution(WebSpec::standard(k, n - 1 - k)).f, n));
  EXPECT_TRUE(degree_one_homogeneous(build_solution(WebSpec::symbolic(1, 1)).f, 3));
  EXPECT_FALSE(degree_one_homogeneous(RationalFunction(P("x1^2 + x2")), 3));
}

TEST(VeroneseForm, TwoVariableExpansion) {
  RationalFunction f(parse_poly("x1 + x2", 2));
  auto alpha = veronese_form(f, std::vector<Rational>{Rational(0), Rational(1)});
  ASSERT_EQ(alpha.size(), 2U);
  DifferentialForm dx1 = DifferentialForm::coordinate(0, 2, 2), dx2 = DifferentialForm::coordinate(1, 2, 2);
  EXPECT_TRUE(form_equal(alpha[0], -dx1));
  EXPECT_TRUE(form_equal(alpha[1], dx1 + dx2));
}

TEST(VeroneseForm, RepeatedNodesThrow) {
  RationalFunction f(parse_poly("x1 + x2", 2));
  EXPECT_THROW(veronese_form(f, std::vector<Rational>{Rational(1), Rational(1)}), SpecError);
}

TEST(VeroneseForm, NodeValuesAndLeadingCoefficient) {
  HirotaSolution sol = build_solution(WebSpec::standard(2, 1));
  const auto& nodes = sol.spec.numeric_nodes();
  auto alpha = veronese_form(sol.f, nodes);
  EXPECT_TRUE(form_equal(alpha[3], DifferentialForm::differential(sol.f, 4)));
  for (std::size_t i = 0; i < 4; ++i) {
    DifferentialForm at = alpha.evaluate(nodes[i]);
    ASSERT_EQ(at.components().size(), 1U);
    EXPECT_EQ(at.components().begin()->first, IndexSet{i});
    Rational scale = 1;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) scale *= nodes[i] - nodes[j];
    EXPECT_TRUE(rf_equal(at.component({i}), rf_derivative(sol.f, i) * scale));
  }
}

TEST(FrobeniusCheck, ConstantForms) {
  DifferentialForm dx1 = DifferentialForm::coordinate(0, 3, 3);
  EXPECT_TRUE(frobenius_check(LambdaPoly<DifferentialForm>(std::vector<DifferentialForm>{dx1})));
  DifferentialForm contact = RationalFunction(P("x1")) * DifferentialForm::coordinate(1, 3, 3) +
                             DifferentialForm::coordinate(2, 3, 3);
  LambdaPoly<DifferentialForm> alpha(std::vector<DifferentialForm>{contact});
  EXPECT_FALSE(frobenius_check(alpha));
  auto obstruction = frobenius_obstruction(alpha);
  EXPECT_TRUE(form_equal(obstruction[0], DifferentialForm::basis({0, 1, 2}, RationalFunction::constant(3, 1), 3)));
}

TEST(FrobeniusCheck, VeroneseFormOfFourDimensionalSolution) {
  HirotaSolution sol = build_solution(WebSpec::standard(2, 1));
  auto alpha = veronese_form(sol.f, sol.spec.numeric_nodes());
  EXPECT_EQ(frobenius_obstruction(alpha).size(), 7U);
  EXPECT_TRUE(frobenius_check(alpha));
}

TEST(FrobeniusCheck, NonSolutionIsNotIntegrable) {
  RationalFunction f(P("x1x2 + x3^2 + x1x3^3"));
  EXPECT_FALSE(frobenius_check(veronese_form(f, std::vector<Rational>{Rational(1), Rational(2), Rational(3)})));
}

TEST(Coframe, ThreeDimensionalFirstForm) {
  WebSpec spec = WebSpec::standard(1, 1);
  Coframe frame = coframe(spec);
  ASSERT_EQ(frame.alphas.size(), 3U);
  CauchyInterpolant f = cauchy_interpolant(spec);
  auto d = [](const MultiPoly& p) { return DifferentialForm::differential(RationalFunction(p), 3); };
  auto c = [](const MultiPoly& p) { return RationalFunction(p); };
  DifferentialForm expected = c(f.q[0]) * d(f.p[1]) - c(f.p[1]) * d(f.q[0]) + c(f.q[1]) * d(f.p[0]) - c(f.p[0]) * d(f.q[1]);
  EXPECT_TRUE(form_equal(frame.alphas[1], expected));
}

TEST(Coframe, LagrangeOrderIsExact) {
  WebSpec spec = WebSpec::standard(3, 0);
  Coframe frame = coframe(spec);
  CauchyInterpolant f = cauchy_interpolant(spec);
  // Q_0 is a nonzero constant, so alpha_m = Q_0 dP_m.
  ASSERT_TRUE(f.q[0].is_constant());
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_TRUE(form_equal(frame.alphas[m],
                           DifferentialForm::differential(RationalFunction(f.p[m]), 4) * f.q[0].constant_value()));
    EXPECT_TRUE(form_is_zero(exterior_derivative(frame.alphas[m])));
  }
}

TEST(Coframe, TwoPointLine) {
  Coframe frame = coframe(WebSpec::numeric(1, 0, {Rational(0), Rational(1)}));
  DifferentialForm dx1 = DifferentialForm::coordinate(0, 2, 2), dx2 = DifferentialForm::coordinate(1, 2, 2);
  EXPECT_TRUE(form_equal(frame.alphas[0], dx1));
  EXPECT_TRUE(form_equal(frame.alphas[1], dx2 - dx1));
}

TEST(Coframe, ProportionalToVeroneseFormAtRandomPoints) {
  std::mt19937_64 rng(79);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      WebSpec spec = WebSpec::standard(k, n - 1 - k);
      HirotaSolution sol = build_solution(spec);
      auto alpha = veronese_form(sol.f, spec.numeric_nodes());
      LambdaPoly<DifferentialForm> frame(coframe(spec).alphas);
      for (int s = 0; s < 3; ++s) {
        Rational mu(testing_support::uniform(rng, -40, 40), 3);
        mu.canonicalize();
        DifferentialForm a = alpha.evaluate(mu), b = frame.evaluate(mu);
        std::vector<Rational> point;
        for (std::size_t i = 0; i < n; ++i) point.emplace_back(testing_support::uniform(rng, -30, 30));
        if (evaluate(sol.f.den(), point) == 0 || evaluate(cauchy_interpolant(spec).q[0], point) == 0) continue;
        EXPECT_TRUE(proportional(a.evaluate(point), b.evaluate(point), n)) << spec.describe();
      }
    }
  }
}

TEST(FlatnessCheck, ThreeDimensionalIsNonflatWithWitnessIdentity) {
  FlatnessVerdict v = flatness_check(WebSpec::standard(1, 1));
  EXPECT_EQ(v.status, FlatnessStatus::kNonflatCertified);
  EXPECT_FALSE(form_is_zero(v.witness));
  ASSERT_TRUE(v.witness_identity);
  EXPECT_TRUE(*v.witness_identity);
  EXPECT_EQ(v.cross_check_index, 1U);
}

TEST(FlatnessCheck, LagrangeOrderIsFlat) {
  FlatnessVerdict v = flatness_check(WebSpec::standard(3, 0));
  EXPECT_EQ(v.status, FlatnessStatus::kFlatCertified);
  EXPECT_TRUE(v.alpha1_integrable);
  EXPECT_FALSE(v.witness_identity);
}

TEST(FlatnessCheck, ReciprocalLagrangeOrderIsFlatViaBothForms) {
  FlatnessVerdict v = flatness_check(WebSpec::standard(0, 3));
  EXPECT_EQ(v.status, FlatnessStatus::kFlatCertified);
  EXPECT_TRUE(v.alpha_n2_integrable);
  EXPECT_EQ(v.cross_check_index, 2U);
}

TEST(FlatnessCheck, SymbolicNodesAndSmallDimension) {
  EXPECT_EQ(flatness_check(WebSpec::symbolic(2, 1)).status, FlatnessStatus::kNonflatCertified);
  EXPECT_THROW(flatness_check(WebSpec::standard(1, 0)), SpecError);
  EXPECT_EQ(to_string(FlatnessStatus::kInconclusive), "inconclusive");
}

TEST(Restrict, FourDimensionalAtZeroKeepsHomogeneity) {
  HirotaSolution sol = build_solution(WebSpec::standard(2, 1));
  RationalFunction r = restrict(sol, 3, Rational(0));
  EXPECT_EQ(r.n_vars(), 3U);
  std::vector<Rational> nodes = restricted_nodes(sol.spec, 3);
  EXPECT_EQ(nodes, (std::vector<Rational>{1, 2, 3}));
  std::vector<MultiPoly> np;
  for (const auto& v : nodes) np.push_back(MultiPoly::constant(3, v));
  EXPECT_TRUE(verify_hirota(r, np).verified);
  PropertyReport p = check_properties(r, 3);
  EXPECT_TRUE(p.homogeneous);
  EXPECT_TRUE(p.degree_gap_one);
  EXPECT_FALSE(p.sums_zero());
}

TEST(Restrict, FourDimensionalAtOneLosesHomogeneity) {
  HirotaSolution sol = build_solution(WebSpec::standard(2, 1));
  RationalFunction r = restrict(sol, 3, Rational(1));
  std::vector<MultiPoly> np = numeric_nodes({1, 2, 3}, 3);
  EXPECT_TRUE(verify_hirota(r, np).verified);
  EXPECT_FALSE(check_properties(r, 3).homogeneous);
}

TEST(Restrict, ThreeDimensionalToTwoIsVacuous) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  RationalFunction r = restrict(sol, 2, Rational(0));
  std::vector<MultiPoly> np = numeric_nodes({1, 2}, 2);
  HirotaVerdict v = verify_hirota(r, np);
  EXPECT_TRUE(v.verified);
  EXPECT_TRUE(v.triples.empty());
}

TEST(Restrict, RepeatedRestrictionStaysASolution) {
  HirotaSolution sol = build_solution(WebSpec::standard(2, 2));
  RationalFunction r = restrict(restrict(sol, 4, Rational(2)), 0, Rational(-1));
  std::vector<MultiPoly> np = numeric_nodes({2, 3, 4}, 3);
  EXPECT_TRUE(verify_hirota(r, np).verified);
}

TEST(Restrict, ErrorsAndDegenerateDenominator) {
  EXPECT_THROW(restrict(build_solution(WebSpec::symbolic(1, 1)), 0, Rational(0)), SpecError);
  EXPECT_THROW(restrict(build_solution(WebSpec::standard(1, 1)), 3, Rational(0)), IndexError);
  RationalFunction f(P("x2"), P("x1"));
  EXPECT_THROW(restrict(f, 0, Rational(0)), DegenerateRestrictionError);
}

TEST(Transform, IdentityMapsLeaveFunctionUnchanged) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  std::vector<Mobius> inner(3, Mobius::identity());
  EXPECT_TRUE(rf_equal(transform(sol.f, Mobius::identity(), inner), sol.f));
}

TEST(Transform, ReciprocalMapsExchangeOrders) {
  for (std::size_t n = 3; n <= 4; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      HirotaSolution a = build_solution(WebSpec::standard(k, n - 1 - k));
      HirotaSolution b = build_solution(WebSpec::standard(n - 1 - k, k));
      std::vector<Mobius> inner(n, Mobius::reciprocal());
      RationalFunction g = transform(a.f, Mobius::reciprocal(), inner);
      EXPECT_TRUE(rf_equal(g, b.f)) << a.spec.describe();
      auto nodes = nodes_of(a.spec);
      EXPECT_TRUE(verify_hirota(g, nodes).verified);
    }
  }
}

TEST(Transform, AffineOuterMapKeepsSolution) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  std::vector<Mobius> inner(3, Mobius::identity());
  RationalFunction g = transform(sol.f, Mobius{2, 1, 0, 1}, inner);
  EXPECT_TRUE(rf_equal(g, sol.f * Rational(2) + RationalFunction::constant(3, 1)));
  auto nodes = nodes_of(sol.spec);
  EXPECT_TRUE(verify_hirota(g, nodes).verified);
}

TEST(Transform, MatchesPointwiseComposition) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  Mobius outer{1, 2, 3, -1};
  std::vector<Mobius> inner{{2, 1, 1, 3}, {1, -1, 0, 2}, {0, 1, 1, 1}};
  RationalFunction g = transform(sol.f, outer, inner);
  std::vector<Rational> x{Rational(5), Rational(-2), Rational(7)};
  std::vector<Rational> y;
  for (std::size_t i = 0; i < 3; ++i) y.push_back((inner[i].a * x[i] + inner[i].b) / (inner[i].c * x[i] + inner[i].d));
  Rational fy = sol.f.evaluate(y);
  EXPECT_EQ(g.evaluate(x), (outer.a * fy + outer.b) / (outer.c * fy + outer.d));
}

TEST(Transform, DegenerateMapsThrow) {
  HirotaSolution sol = build_solution(WebSpec::standard(1, 1));
  std::vector<Mobius> inner(3, Mobius::identity());
  EXPECT_THROW(transform(sol.f, Mobius{1, 2, 2, 4}, inner), SpecError);
  inner[1] = Mobius{0, 0, 1, 1};
  EXPECT_THROW(transform(sol.f, Mobius::identity(), inner), SpecError);
}

TEST(Properties, HoldWhereTheColumnArgumentApplies) {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      WebSpec spec = WebSpec::standard(k, n - 1 - k);
      PropertyReport p = check_properties(build_solution(spec));
      SumExpectation e = expected_sums(spec);
      EXPECT_TRUE(p.homogeneous) << spec.describe();
      EXPECT_TRUE(p.degree_gap_one) << spec.describe();
      EXPECT_EQ(p.num_sum_zero, e.num_zero) << spec.describe();
      EXPECT_EQ(p.den_sum_zero, e.den_zero) << spec.describe();
    }
  }
}

TEST(Properties, SymbolicNodesSumsArePolynomialsInNodes) {
  WebSpec spec = WebSpec::symbolic(2, 1);
  PropertyReport p = check_properties(build_solution(spec));
  EXPECT_TRUE(p.sums_zero());
  PropertyReport lagrange = check_properties(build_solution(WebSpec::symbolic(2, 0)));
  EXPECT_TRUE(lagrange.num_sum_zero);
  EXPECT_FALSE(lagrange.den_sum_zero);
  EXPECT_FALSE(lagrange.den_sum.is_constant());
}
