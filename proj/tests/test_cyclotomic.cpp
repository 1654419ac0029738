#include <gtest/gtest.h>

#include <random>

#include "eulerprod/cyclotomic.hpp"
#include "eulerprod/parse.hpp"
#include "oracles.hpp"

using namespace eulerprod;

namespace {

// Numeric oracle: every root of the square-free part within 1e-8 of the circle.
bool all_roots_on_circle(const std::vector<Integer>& h) {
  for (const auto& z : oracle::durand_kerner(oracle::square_free(h)))
    if (std::abs(std::abs(z) - 1.0L) > 1e-8L) return false;
  return true;
}

std::vector<Integer> random_cyclotomic_product(std::mt19937_64& rng, std::size_t max_degree) {
  std::uniform_int_distribution<int> index(1, 30);
  oracle::IntPoly h{Integer(1)};
  for (int k = 0; k < 4; ++k) {
    const auto f = oracle::psi(static_cast<std::uint64_t>(index(rng)));
    if (h.size() + f.size() - 2 > max_degree) continue;
    h = oracle::mul(h, f);
  }
  return h;
}

std::vector<Integer> random_unit_poly(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<Integer> h(degree + 1);
  h[0] = 1;
  for (std::size_t i = 1; i <= degree; ++i) h[i] = c(rng);
  if (h[degree] == 0) h[degree] = 1;
  return h;
}

void expect_reconstructs(const CyclotomicVerdict& v, const std::vector<Integer>& h) {
  ASSERT_TRUE(v.factorization);
  std::vector<std::pair<std::int64_t, Integer>> f;
  for (const auto& x : v.factorization->factors) f.emplace_back(x.m.at(0), x.gamma);
  // degree bound well past deg h: the product must be the polynomial itself
  const auto s = oracle::expand_uni(f, 4 * h.size() + 8);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], Rational(i < h.size() ? h[i] : Integer(0))) << i;
}

}  // namespace

TEST(CyclotomicUni, OneMinusX) {
  const auto v = cyclotomic_factor_uni(parse_uni("1 - X"));
  ASSERT_TRUE(v.cyclotomic);
  EXPECT_EQ(v.factorization->indices, (std::vector<std::pair<std::uint64_t, std::int64_t>>{{1, 1}}));
}

TEST(CyclotomicUni, Phi6) {
  const auto v = cyclotomic_factor_uni(parse_uni("1 - X + X^2"));
  ASSERT_TRUE(v.cyclotomic);
  EXPECT_EQ(v.factorization->indices, (std::vector<std::pair<std::uint64_t, std::int64_t>>{{6, 1}}));
  expect_reconstructs(v, {1, -1, 1});
}

TEST(CyclotomicUni, GoldenRatioWitness) {
  const auto v = cyclotomic_factor_uni(parse_uni("1 - X - X^2"));
  ASSERT_FALSE(v.cyclotomic);
  const auto* w = std::get_if<RootWitness>(&v.witness);
  ASSERT_NE(w, nullptr);
  EXPECT_NEAR(w->modulus, (std::sqrt(5.0) - 1) / 2, 1e-12);
  EXPECT_LT(w->residual, 1e-12);
}

TEST(CyclotomicUni, RejectsBadInput) {
  EXPECT_THROW(cyclotomic_factor_uni(UniPoly{}), ValidationError);
  EXPECT_THROW(cyclotomic_factor_uni(UniPoly{2, 1}), ValidationError);
  EXPECT_THROW(cyclotomic_factor_uni(UniPoly{1}), ValidationError);
}

TEST(CyclotomicUni, IndicesAccountForDegree) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = random_cyclotomic_product(rng, 24);
    if (h.size() < 2) continue;
    const auto v = cyclotomic_factor_uni(UniPoly(h));
    ASSERT_TRUE(v.cyclotomic);
    std::uint64_t total = 0;
    for (const auto& [n, mult] : v.factorization->indices) total += totient(n) * static_cast<std::uint64_t>(mult);
    EXPECT_EQ(total, h.size() - 1);
    expect_reconstructs(v, h);
  }
}

TEST(CyclotomicUni, AgreesWithNumericRootsUpToDegree12) {
  std::mt19937_64 rng(22);
  int cyclotomic = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = trial % 2 ? random_cyclotomic_product(rng, 12)
                             : random_unit_poly(rng, 1 + static_cast<std::size_t>(trial % 12));
    if (h.size() < 2) continue;
    const auto v = cyclotomic_factor_uni(UniPoly(h));
    EXPECT_EQ(v.cyclotomic, all_roots_on_circle(h)) << UniPoly(h).to_string();
    cyclotomic += v.cyclotomic;
    if (!v.cyclotomic) {
      const auto* w = std::get_if<RootWitness>(&v.witness);
      ASSERT_NE(w, nullptr);
      EXPECT_GE(std::abs(w->modulus - 1), kOffCircleTolerance);
      EXPECT_NEAR(std::abs(UniPoly(h).evaluate(w->root)), 0.0, 1e-9 * std::max(1.0, std::pow(w->modulus, h.size())));
    }
  }
  EXPECT_GT(cyclotomic, 100);
}

TEST(CyclotomicUni, ClosedUnderProducts) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_cyclotomic_product(rng, 10), b = random_cyclotomic_product(rng, 10);
    if (a.size() < 2 || b.size() < 2) continue;
    EXPECT_TRUE(cyclotomic_factor_uni(UniPoly(oracle::mul(a, b))).cyclotomic);
    EXPECT_TRUE(cyclotomic_factor_uni(UniPoly(oracle::mul(b, a))).cyclotomic);
  }
}

TEST(Estermann, Verdicts) {
  EXPECT_EQ(estermann_verdict(parse_uni("1 - X")).outcome, EstermannOutcome::ContinuesToWholePlane);
  EXPECT_EQ(estermann_verdict(parse_uni("1 - 2*X")).outcome, EstermannOutcome::NaturalBoundaryAtImaginaryAxis);
  EXPECT_EQ(estermann_verdict(parse_uni("1 + X + X^2")).outcome, EstermannOutcome::ContinuesToWholePlane);
  const auto r = estermann_verdict(parse_uni("1 - 2*X"));
  EXPECT_NE(r.statement.find("Re s > 0"), std::string::npos);
  EXPECT_NEAR(std::get<RootWitness>(r.verdict.witness).modulus, 0.5, 1e-12);
}

TEST(CyclotomicMulti, SingleFactor) {
  const auto v = cyclotomic_factor_multi(parse_bivariate("1 - x^2*y"));
  ASSERT_TRUE(v.cyclotomic);
  ASSERT_EQ(v.factorization->factors.size(), 1u);
  EXPECT_EQ(v.factorization->factors[0].m, (Exponents{2, 1}));
  EXPECT_EQ(v.factorization->factors[0].gamma, 1);
}

TEST(CyclotomicMulti, NegativeExponentFactor) {
  const auto v = cyclotomic_factor_multi(parse_bivariate("1 + x^4*y"));
  ASSERT_TRUE(v.cyclotomic);
  ASSERT_EQ(v.factorization->factors.size(), 2u);
  EXPECT_EQ(v.factorization->factors[0].m, (Exponents{4, 1}));
  EXPECT_EQ(v.factorization->factors[0].gamma, -1);
  EXPECT_EQ(v.factorization->factors[1].m, (Exponents{8, 2}));
  EXPECT_EQ(v.factorization->factors[1].gamma, 1);
}

TEST(CyclotomicMulti, GrowingExponentsAreNotCyclotomic) {
  const auto v = cyclotomic_factor_multi(parse_bivariate("1 + 2*x*y"), 20);
  EXPECT_FALSE(v.cyclotomic);
  EXPECT_TRUE(std::holds_alternative<DepthWitness>(v.witness));
}

TEST(CyclotomicMulti, DepthBelowBoundIsRejected) {
  EXPECT_THROW(cyclotomic_factor_multi(parse_multi("1 - X1*X2", 1), 3), ValidationError);
  EXPECT_THROW(cyclotomic_factor_multi(parse_multi("2 - X1*X2", 1)), ValidationError);
  EXPECT_THROW(cyclotomic_factor_multi(parse_bivariate("1 - x^(1/2)*y")), ValidationError);
}

TEST(CyclotomicMulti, UnivariateInputsAgreeWithTrialDivision) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = trial % 2 ? random_cyclotomic_product(rng, 8) : random_unit_poly(rng, 1 + trial % 6);
    if (h.size() < 2) continue;
    std::vector<std::pair<Exponents, Integer>> terms;
    for (std::size_t i = 0; i < h.size(); ++i) terms.push_back({{static_cast<std::int64_t>(i)}, h[i]});
    // n = 1 with the single variable in the graded slot: h(X_1) written as X_1 * X_2^0
    std::vector<std::pair<Exponents, Integer>> lifted;
    for (const auto& [e, c] : terms) lifted.push_back({{e[0], 0}, c});
    const auto multi = cyclotomic_factor_multi(MultiPoly(1, lifted));
    EXPECT_EQ(multi.cyclotomic, cyclotomic_factor_uni(UniPoly(h)).cyclotomic) << UniPoly(h).to_string();
  }
}

TEST(CyclotomicMulti, SoundnessOnRandomProducts) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> e(0, 2), sign(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    // prod (1 - X1^a X2^b) of 1..3 factors, expanded exactly
    std::map<Exponents, Integer> poly{{{0, 0, 0}, Integer(1)}};
    const int count = 1 + trial % 3;
    for (int k = 0; k < count; ++k) {
      Exponents m{e(rng), e(rng), 0};
      if (m[0] + m[1] == 0) m[0] = 1;
      std::map<Exponents, Integer> next = poly;
      for (const auto& [x, c] : poly) next[x + m] -= c;
      poly.clear();
      for (const auto& [x, c] : next)
        if (c != 0) poly.emplace(x, c);
    }
    std::vector<std::pair<Exponents, Integer>> terms(poly.begin(), poly.end());
    const MultiPoly h(2, terms);
    const auto v = cyclotomic_factor_multi(h);
    ASSERT_TRUE(v.cyclotomic) << h.to_string();
    // soundness: expand the reported factors exactly
    std::map<Exponents, Rational> acc{{{0, 0, 0}, Rational(1)}};
    const std::int64_t cap = 4 * h.total_degree() + 4;
    for (const auto& f : v.factorization->factors) {
      const std::int64_t w = f.m[0] + f.m[1] + f.m[2];
      const auto b = oracle::binomial_series(f.gamma, static_cast<std::size_t>(cap / w));
      std::map<Exponents, Rational> next;
      for (const auto& [x, c] : acc)
        for (std::size_t j = 0; j < b.size(); ++j) {
          Exponents y = x + scaled(f.m, static_cast<std::int64_t>(j));
          if (y[0] + y[1] + y[2] > cap) break;
          next[y] += c * b[j];
        }
      acc.clear();
      for (const auto& [x, c] : next)
        if (c != 0) acc.emplace(x, c);
    }
    std::map<Exponents, Rational> expected;
    for (const auto& [x, c] : poly) expected.emplace(x, Rational(c));
    EXPECT_EQ(acc, expected) << h.to_string();
  }
}
