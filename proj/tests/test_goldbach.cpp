#include <gtest/gtest.h>

#include <numeric>

#include "eulerprod/goldbach.hpp"
#include "oracles.hpp"

using namespace eulerprod;

namespace {

const std::string kZerosPath = std::string(EULERPROD_DATA_DIR) + "/zeros100.txt";

// G_2(n) by the defining double sum with trial-division Lambda.
double g2_direct(std::uint64_t n) {
  double acc = 0;
  for (std::uint64_t a = 1; a < n; ++a) acc += oracle::von_mangoldt(a) * oracle::von_mangoldt(n - a);
  return acc;
}

}  // namespace

TEST(VonMangoldt, Examples) {
  const auto t = lambda_table(100);
  EXPECT_DOUBLE_EQ(t.lam[8], std::log(2.0));
  EXPECT_EQ(t.lam[6], 0.0);
  EXPECT_DOUBLE_EQ(t.lam[7], std::log(7.0));
  EXPECT_EQ(t.lam[1], 0.0);
  EXPECT_NEAR(static_cast<double>(t.psi(10)), std::log(2520.0), 1e-12);
  EXPECT_EQ(t.marker[9], 3u);
  EXPECT_EQ(t.marker[12], 0u);
}

TEST(VonMangoldt, MatchesTrialDivision) {
  const auto t = lambda_table(20000);
  for (std::uint64_t n = 0; n <= 20000; ++n) EXPECT_DOUBLE_EQ(t.lam[n], oracle::von_mangoldt(n)) << n;
}

TEST(VonMangoldt, RejectsBadSizes) {
  EXPECT_THROW(lambda_table(1), ValidationError);
  EXPECT_THROW(lambda_table(kMaxLambdaTable + 1), ValidationError);
  EXPECT_THROW(lambda_table(10).psi(11), ValidationError);
}

TEST(ConvolveGr, SmallCoefficients) {
  const auto g = convolve_gr(lambda_table(64), 2, ConvolutionMethod::Naive);
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  EXPECT_NEAR(g.g[4], l2 * l2, 1e-15);
  EXPECT_NEAR(g.g[5], 2 * l2 * l3, 1e-15);
  EXPECT_NEAR(g.g[6], 2 * l2 * l2 + l3 * l3, 1e-15);
  EXPECT_EQ(g.g[3], 0.0);
  for (std::uint64_t n = 0; n <= 64; ++n) EXPECT_NEAR(g.g[n], g2_direct(n), 1e-12 * std::max(1.0, g.g[n])) << n;
}

TEST(ConvolveGr, FastMatchesNaive) {
  const auto lam = lambda_table(100000);
  const auto naive = convolve_gr(lam, 2, ConvolutionMethod::Naive);
  const auto fast = convolve_gr(lam, 2, ConvolutionMethod::Fast);
  ASSERT_EQ(naive.g.size(), fast.g.size());
  double worst = 0;
  for (std::size_t n = 0; n < naive.g.size(); ++n) {
    if (naive.g[n] == 0) {
      EXPECT_EQ(fast.g[n], 0.0) << n;
      continue;
    }
    worst = std::max(worst, std::abs(fast.g[n] - naive.g[n]) / naive.g[n]);
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(ConvolveGr, ThreeFoldFastMatchesNaive) {
  const auto lam = lambda_table(20000);
  const auto naive = convolve_gr(lam, 3, ConvolutionMethod::Naive);
  const auto fast = convolve_gr(lam, 3, ConvolutionMethod::Fast);
  for (std::size_t n = 0; n < naive.g.size(); ++n)
    EXPECT_NEAR(fast.g[n], naive.g[n], 1e-9 * std::max(1.0, naive.g[n])) << n;
  // G_3(6) = Lambda(2)^3
  EXPECT_NEAR(naive.g[6], std::pow(std::log(2.0), 3), 1e-15);
  EXPECT_EQ(naive.g[5], 0.0);
}

TEST(ConvolveGr, TinyTablesFallBackToNaive) {
  const auto lam = lambda_table(10);
  EXPECT_EQ(convolve_gr(lam, 2, ConvolutionMethod::Fast).g, convolve_gr(lam, 2, ConvolutionMethod::Naive).g);
  EXPECT_THROW(convolve_gr(lam, 1, ConvolutionMethod::Naive), ValidationError);
}

TEST(Summatory, SmallValues) {
  const auto lam = lambda_table(1000);
  const auto g = convolve_gr(lam, 2, ConvolutionMethod::Fast);
  EXPECT_EQ(summatory(g, 3), 0.0L);
  double direct = 0;
  for (std::uint64_t n = 4; n <= 10; ++n) direct += g2_direct(n);
  EXPECT_NEAR(static_cast<double>(summatory(g, 10)), direct, 1e-12);
  EXPECT_NEAR(static_cast<double>(summatory(g, 10)), 24.697769, 1e-6);
  EXPECT_NEAR(static_cast<double>(summatory_hyperbola(lam, 10)), direct, 1e-12);
  EXPECT_THROW(summatory(g, 1001), ValidationError);
}

TEST(Summatory, Nondecreasing) {
  const auto g = convolve_gr(lambda_table(5000), 2, ConvolutionMethod::Fast);
  long double previous = 0;
  for (std::uint64_t x = 0; x <= 5000; x += 7) {
    const auto s = summatory(g, x);
    EXPECT_GE(s, previous);
    previous = s;
  }
}

TEST(Summatory, HyperbolaOracle) {
  const auto lam = lambda_table(10000);
  const auto g = convolve_gr(lam, 2, ConvolutionMethod::Fast);
  for (std::uint64_t x : {1000, 10000}) {
    const double s = static_cast<double>(summatory(g, x)), h = static_cast<double>(summatory_hyperbola(lam, x));
    EXPECT_LT(std::abs(s - h) / h, 1e-6) << x;
  }
}

TEST(OscillatingHr, NoZerosGivesZero) {
  const auto z = load_zeros(kZerosPath);
  EXPECT_EQ(oscillating_Hr(100, 2, z, 0), 0.0);
  EXPECT_THROW(oscillating_Hr(100, 2, z, 101), ValidationError);
  EXPECT_THROW(oscillating_Hr(1, 2, z, 1), ValidationError);
}

TEST(OscillatingHr, SinglePair) {
  const auto z = load_zeros(kZerosPath);
  const std::complex<double> rho(0.5, z.gammas[0]);
  EXPECT_NEAR(std::abs(rho), 14.1436, 1e-4);
  EXPECT_NEAR(std::abs(1.0 + rho), 14.2142, 2e-4);
  const double h = oscillating_Hr(100, 2, z, 1);
  const double magnitude = 4 * std::pow(100.0, 1.5) / (std::abs(rho) * std::abs(1.0 + rho));
  EXPECT_LE(std::abs(h), magnitude * (1 + 1e-12));
  // both members of the conjugate pair, summed as complex numbers
  std::complex<double> sum = 0;
  for (const auto r : {rho, std::conj(rho)}) sum += -2.0 * std::exp((1.0 + r) * std::log(100.0)) / (r * (1.0 + r));
  EXPECT_LT(std::abs(sum.imag()), 1e-12 * magnitude);
  EXPECT_NEAR(h, sum.real(), 1e-10 * magnitude);
}

TEST(OscillatingHr, LipschitzBetweenNeighbours) {
  const auto z = load_zeros(kZerosPath);
  double inv = 0;
  for (double g : z.gammas) inv += 1 / std::hypot(0.5, g);
  for (double x = 1000; x < 1100; x += 1) {
    // |d/dx x^{1+rho}/(rho(1+rho))| <= x^{1/2}/|rho| for each zero
    const double bound = 4 * std::sqrt(x + 1) * inv;
    EXPECT_LE(std::abs(oscillating_Hr(x + 1, 2, z, 100) - oscillating_Hr(x, 2, z, 100)), bound) << x;
  }
}

TEST(Phi2, LeadingTermsAtLargeS) {
  const auto v = phi2_eval(10.0, 100);
  const double l2 = std::log(2.0);
  const double lead = l2 * l2 / std::pow(4.0, 10);
  EXPECT_NEAR(lead, 4.58e-7, 1e-9);
  EXPECT_GT(v.value.real(), lead);
  EXPECT_LT(v.value.real(), 2 * lead);
  EXPECT_NEAR(v.value.imag(), 0, 1e-20);
}

TEST(Phi2, CoefficientPathMatchesDoubleSum) {
  for (const std::complex<double> s : {std::complex<double>(5, 0), std::complex<double>(5, 3), std::complex<double>(10, -1)}) {
    const std::uint64_t N = 200;
    std::complex<double> direct = 0;
    for (std::uint64_t a = 2; a < N; ++a)
      for (std::uint64_t b = 2; a + b <= N; ++b) {
        const double w = oracle::von_mangoldt(a) * oracle::von_mangoldt(b);
        if (w != 0) direct += w * std::exp(-s * std::log(static_cast<double>(a + b)));
      }
    EXPECT_LT(std::abs(phi2_eval(s, N).value - direct), 1e-10) << s;
  }
}

TEST(Phi2, TailBoundCoversLongerSums) {
  const auto g = convolve_gr(lambda_table(40000), 2, ConvolutionMethod::Fast);
  for (const std::complex<double> s : {std::complex<double>(4, 0), std::complex<double>(3.5, 7)}) {
    const auto a = phi2_eval(g, s, 1000), b = phi2_eval(g, s, 40000);
    EXPECT_LE(std::abs(b.value - a.value), a.tail_bound) << s;
  }
}

TEST(Phi2, SimplePoleAtTwo) {
  // (s - 2) Phi_2(s) rises towards the residue 1 as s decreases to 2; the
  // sum starts at n = 4, so far from the pole it is near 4^{2-s}
  const auto g = convolve_gr(lambda_table(1 << 20), 2, ConvolutionMethod::Fast);
  double previous = 0;
  for (double s : {4.0, 3.0, 2.5, 2.25}) {
    const double scaled = (s - 2) * phi2_eval(g, s, 1 << 20).value.real();
    EXPECT_LT(scaled, 1.5) << s;
    EXPECT_GT(scaled, previous) << s;
    previous = scaled;
  }
  EXPECT_GT(previous, 0.5);
}

TEST(Phi2, RejectsBadInput) {
  EXPECT_THROW(phi2_eval(2.0, 100), ValidationError);
  EXPECT_THROW(phi2_eval(3.0, 3), ValidationError);
  const auto g3 = convolve_gr(lambda_table(100), 3, ConvolutionMethod::Naive);
  EXPECT_THROW(phi2_eval(g3, 3.0, 100), ValidationError);
}

TEST(ResidualReport, ZeroZerosLeavesResidualUnchanged) {
  const auto z = load_zeros(kZerosPath);
  const auto g = convolve_gr(lambda_table(10000), 2, ConvolutionMethod::Fast);
  for (const auto& row : residual_report(g, {1000, 5000, 10000}, 0, z))
    EXPECT_EQ(row.S_minus_main_minus_H2, row.S_minus_main);
}

TEST(ResidualReport, RowFields) {
  const auto z = load_zeros(kZerosPath);
  const auto g = convolve_gr(lambda_table(10000), 2, ConvolutionMethod::Fast);
  const auto rows = residual_report(g, {10000}, 100, z);
  ASSERT_EQ(rows.size(), 1u);
  const auto& r = rows[0];
  EXPECT_EQ(r.x, 10000);
  EXPECT_NEAR(r.S_minus_main, r.S - 5e7, 1e-6);
  EXPECT_NEAR(r.S_minus_main_minus_H2, r.S_minus_main - oscillating_Hr(10000, 2, z, 100), 1e-6);
  EXPECT_NEAR(r.fujii_bound, std::pow(10000 * std::log(10000.0), 4.0 / 3.0), 1e-3);
  EXPECT_NEAR(r.log5_bound, 10000 * std::pow(std::log(10000.0), 5), 1e-3);
  EXPECT_LT(std::abs(r.S_minus_main_minus_H2), r.fujii_bound);
}
