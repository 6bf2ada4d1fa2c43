#include <gtest/gtest.h>

#include <random>

#include "dsw/error.hpp"
#include "dsw/series.hpp"
#include "oracles.hpp"

using namespace dsw;

namespace {

FormalSeries h(std::size_t n, std::uint32_t cap, std::size_t j) { return FormalSeries::variable(n, cap, j); }
FormalSeries one(std::size_t n, std::uint32_t cap) { return FormalSeries::constant(n, cap, 1); }

FormalSeries from_oracle(const oracle::Poly& p, std::size_t n, std::uint32_t cap) {
  FormalSeries s(n, cap);
  for (const auto& [e, c] : p)
    s.add_term(e, c);
  return s;
}

FormalSeries random_series(std::mt19937_64& rng, std::size_t n, std::uint32_t cap) {
  std::uniform_int_distribution<int> coeff(-3, 3), expo(0, static_cast<int>(cap));
  FormalSeries s(n, cap);
  for (int t = 0; t < 6; ++t) {
    Exponents e(n);
    for (auto& x : e)
      x = static_cast<std::uint32_t>(expo(rng) / static_cast<int>(n));
    if (total_degree(e) < cap && s.terms().find(e) == s.terms().end())
      s.add_term(e, ratio(coeff(rng), 1 + t % 3));
  }
  return s;
}

} // namespace

TEST(Series, AddExamples) {
  EXPECT_EQ(one(1, 4) + FormalSeries(1, 4), one(1, 4));
  EXPECT_EQ((one(1, 4) + h(1, 4, 0)) + (one(1, 4) - h(1, 4, 0)), FormalSeries::constant(1, 4, 2));
  EXPECT_EQ((one(1, 4) + one(1, 6)).degree_cap(), 4u);
}

TEST(Series, AddDimensionMismatch) {
  EXPECT_THROW(one(1, 4) + one(2, 4), Error);
}

TEST(Series, MulExamples) {
  const auto p = (one(1, 3) + h(1, 3, 0)) * (one(1, 3) - h(1, 3, 0));
  FormalSeries expected = one(1, 3);
  expected.add_term({2}, -1);
  EXPECT_EQ(p, expected);
  EXPECT_TRUE((p * FormalSeries(1, 3)).is_zero());
  const IntersectionForm g = diagonal_form({1, -1});
  const LatticeVector k{2, 1};
  EXPECT_EQ(exp_linear(g, k, 6) * exp_linear(g, -k, 6), one(2, 6));
}

TEST(Series, ExpLinearExamples) {
  EXPECT_EQ(exp_linear(diagonal_form({1}), {0}, 5), one(1, 5));
  // <K,h> = 2 h1, as for K = (1) on the rank-1 form (2).
  const std::vector<Int> kappa{2};
  FormalSeries expected = one(1, 3);
  expected.add_term({1}, 2);
  expected.add_term({2}, 2);
  EXPECT_EQ(exp_of_linear_form(kappa, 3), expected);
}

TEST(Series, ExpLinearUsesDualPairings) {
  // On H, K = (1,0) pairs as <K,h> = h2.
  FormalSeries expected = one(2, 3);
  expected.add_term({0, 1}, 1);
  expected.add_term({0, 2}, ratio(1, 2));
  EXPECT_EQ(exp_linear(hyperbolic_plane(), {1, 0}, 3), expected);
}

TEST(Series, ExpQuadraticExamples) {
  // Q = (1): exp(h1^2/2) mod 4 = 1 + h1^2/2.
  FormalSeries expected = one(1, 4);
  expected.add_term({2}, ratio(1, 2));
  EXPECT_EQ(exp_quadratic(diagonal_form({1}), 4), expected);
  EXPECT_EQ(exp_quadratic(diagonal_form({1}), 4).coefficient({0}), 1);
}

TEST(Series, ExpQuadraticMatchesOracle) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_unimodular(rng, 1 + trial % 4, 2);
    const std::uint32_t cap = 7;
    EXPECT_EQ(exp_quadratic(IntersectionForm(g), cap), from_oracle(oracle::exp_half_quadratic(g, cap), g.size(), cap));
  }
  EXPECT_EQ(exp_quadratic(hyperbolic_plane(), 0), FormalSeries(2, 0));
}

TEST(Series, ExpLinearMatchesOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> c(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_unimodular(rng, 1 + trial % 4, 2);
    LatticeVector k = LatticeVector::zero(g.size());
    for (auto& x : k.coords)
      x = c(rng);
    oracle::Vec kappa(g.size(), 0);
    for (std::size_t j = 0; j < g.size(); ++j)
      kappa[j] = oracle::bilinear(g, k.coords, LatticeVector::unit(g.size(), j).coords);
    EXPECT_EQ(exp_linear(IntersectionForm(g), k, 6), from_oracle(oracle::exp_linear(kappa, 6), g.size(), 6));
  }
}

TEST(Series, ZeroForm) {
  // The zero form is not unimodular; its generator is the constant 1.
  EXPECT_EQ(FormalSeries::linear_form(std::vector<Int>{0, 0}, 5), FormalSeries(2, 5));
  std::vector<Int> zero{0, 0};
  EXPECT_EQ(exp_of_linear_form(zero, 5), one(2, 5));
}

TEST(Series, Congruence) {
  FormalSeries a = one(1, 6);
  a.add_term({3}, 1);
  EXPECT_TRUE(congruent_mod_degree(a, a, 6));
  EXPECT_TRUE(congruent_mod_degree(a, one(1, 6), 3));
  EXPECT_FALSE(congruent_mod_degree(a, one(1, 6), 4));
  EXPECT_THROW(congruent_mod_degree(a, one(1, 4), 5), Error);
  EXPECT_EQ(*first_difference(a, one(1, 6), 6), (Exponents{3}));
}

TEST(Series, Coefficient) {
  EXPECT_EQ(FormalSeries(2, 4).coefficient({1, 1}), 0);
  EXPECT_EQ(exp_quadratic(k3_form(), 4).coefficient(Exponents(22, 0)), 1);
  EXPECT_EQ(exp_linear(hyperbolic_plane(), {1, 1}, 4).coefficient({0, 0}), 1);
  try {
    one(1, 3).coefficient({3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_checkable);
  }
}

TEST(Series, ScaleTruncateHomogeneous) {
  const auto e = exp_quadratic(k3_form(), 6);
  EXPECT_TRUE(e.scaled(0).is_zero());
  EXPECT_EQ(e.homogeneous_part(0).series(), FormalSeries::constant(22, 6, 1));
  EXPECT_THROW(e.homogeneous_part(6), Error);
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_series(rng, 3, 8);
    EXPECT_EQ(s.truncated(5).truncated(5), s.truncated(5));
    EXPECT_EQ(s.truncated(6).truncated(4), s.truncated(4));
  }
}

TEST(Series, HomogeneousPolynomialRejectsMixedDegrees) {
  FormalSeries s = one(1, 4);
  s.add_term({1}, 1);
  EXPECT_THROW(HomogeneousPolynomial(s, 0), Error);
  EXPECT_THROW(HomogeneousPolynomial(FormalSeries(1, 2), 2), Error);
}

TEST(Series, RingAxioms) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 3;
    const std::uint32_t cap = 1 + static_cast<std::uint32_t>(t % 8);
    const auto a = random_series(rng, n, cap), b = random_series(rng, n, cap), c = random_series(rng, n, cap);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a - a, FormalSeries(n, cap));
  }
}

TEST(Series, ExpQuadraticInverse) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_unimodular(rng, 1 + t % 3, 2);
    const IntersectionForm form(g);
    for (std::uint32_t n = 0; n <= 12; n += 4)
      EXPECT_EQ(exp_quadratic(form, n) * exp_quadratic(negated(form), n), FormalSeries::constant(g.size(), n, 1));
  }
}

TEST(Series, DerivativeOfExpQuadratic) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_unimodular(rng, 1 + t % 3, 2);
    const IntersectionForm form(g);
    const std::uint32_t cap = 9;
    const auto e = exp_quadratic(form, cap);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto grad = FormalSeries::linear_form(g[j], cap - 1);
      EXPECT_EQ(e.derivative(j), grad * e.truncated(cap - 1));
    }
  }
}

TEST(Series, TextRoundTrip) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 40; ++t) {
    const auto s = random_series(rng, 1 + t % 4, 1 + static_cast<std::uint32_t>(t % 7));
    EXPECT_EQ(parse_series(to_text(s)), s);
  }
  EXPECT_EQ(to_text(FormalSeries(2, 3)), "series vars=2 cap=3\n0\n");
  FormalSeries s(3, 4);
  s.add_term({0, 0, 0}, ratio(-1, 2));
  s.add_term({1, 0, 2}, 3);
  s.add_term({0, 1, 0}, 1);
  EXPECT_EQ(to_text(s), "series vars=3 cap=4\n-1/2\n1 * h2\n3 * h1 h3^2\n");
}

TEST(Series, GradedOrder) {
  // Degree first, then lexicographically larger exponents of earlier variables first.
  FormalSeries s(2, 4);
  s.add_term({0, 2}, 1);
  s.add_term({1, 1}, 1);
  s.add_term({2, 0}, 1);
  s.add_term({0, 1}, 1);
  s.add_term({1, 0}, 1);
  std::vector<Exponents> order;
  for (const auto& [e, c] : s.terms())
    order.push_back(e);
  EXPECT_EQ(order, (std::vector<Exponents>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
}

TEST(Series, ParseRejectsBadInput) {
  EXPECT_THROW(parse_series("series vars=1 cap=3\n1 * h1\n2 * h1\n"), Error);
  EXPECT_THROW(parse_series("series vars=1 cap=3\n1 * h1^3\n"), Error);
  EXPECT_THROW(parse_series("series vars=1 cap=3\n0 * h1\n"), Error);
  EXPECT_THROW(parse_series("series vars=1 cap=3\n1 * h2\n"), Error);
  EXPECT_THROW(parse_series("bogus\n"), Error);
}
