#pragma once

// The five-case classification of prod_p W(p, p^-s) and local zero probes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/cyclotomic.hpp"
#include "eulerprod/poly.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/roots.hpp"
#include "eulerprod/zetafact.hpp"

namespace eulerprod {

/// Zeros must lie this far beyond beta to count as beyond the line.
inline constexpr double kBeyondTolerance = 1e-9;

/// max u/v over terms x^u y^v with v > 0.
inline Rational beta(const BivariateLocalFactor& w) {
  std::optional<Rational> best;
  for (const auto& t : w.terms())
    if (t.v > 0) {
      const Rational r = t.u / t.v;
      if (!best || r > *best) best = r;
    }
  if (!best) throw ValidationError("W does not depend on y");
  return *best;
}

/// 1 plus the terms of W attaining u/v = beta.
inline BivariateLocalFactor ghost(const BivariateLocalFactor& w) {
  const Rational b = beta(w);
  std::vector<BivariateTerm> terms{{Rational(0), Rational(0), Rational(1)}};
  for (const auto& t : w.terms())
    if (t.v > 0 && t.u / t.v == b) terms.push_back(t);
  return BivariateLocalFactor(terms);
}

struct LocalZero {
  double re;
  double im;  // in [0, period)
  int multiplicity;
  double residual;  // |W(p, p^-s)| relative to the sum of its term magnitudes
};

struct LocalZeroSet {
  std::uint64_t p = 0;
  double period = 0;  // the full set is s + i k period
  std::vector<LocalZero> zeros;
  std::size_t degree = 0;  // degree of the substituted polynomial
  bool degenerate = false;  // leading coefficient vanished at this p
};

/// All zeros of s -> W(p, p^-s) in one fundamental strip with Re s in [lo, hi].
inline LocalZeroSet local_zeros(const BivariateLocalFactor& w, std::uint64_t p,
                                double lo = -std::numeric_limits<double>::infinity(),
                                double hi = std::numeric_limits<double>::infinity()) {
  if (!w.depends_on_y()) throw ValidationError("W does not depend on y");
  const auto sub = substitute_prime(w, p);
  LocalZeroSet out;
  out.p = p;
  const long double lp = std::log(static_cast<long double>(p));
  const long double q = static_cast<long double>(sub.q);
  out.period = static_cast<double>(2 * std::numbers::pi_v<long double> * q / lp);
  out.degree = sub.coeffs.size() - 1;
  auto coeffs = sub.coeffs;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  out.degenerate = coeffs.size() != sub.coeffs.size();
  if (coeffs.size() <= 1) return out;

  std::vector<cld> found;
  for (const auto& r : polynomial_roots(coeffs)) {
    const cld z(r.value.real(), r.value.imag());
    if (z == cld(0)) continue;
    found.push_back(z);
  }
  // p^{-s/q} = z  =>  s = -q log z / log p
  std::vector<LocalZero> zeros;
  for (const auto& z : found) {
    const long double re = -q * std::log(std::abs(z)) / lp;
    long double im = std::fmod(-q * std::arg(z) / lp, static_cast<long double>(out.period));
    if (im < 0) im += out.period;
    if (!(static_cast<double>(im) < out.period)) im = 0;  // -0 wrapped onto the period
    const auto res = relative_residual_at_prime(w, p, {re, im});
    LocalZero lz{static_cast<double>(re), static_cast<double>(im), 1, static_cast<double>(res)};
    bool merged = false;
    for (auto& other : zeros)
      if (std::abs(other.re - lz.re) < 1e-7 && std::abs(other.im - lz.im) < 1e-7) {
        ++other.multiplicity;
        merged = true;
      }
    if (!merged) zeros.push_back(lz);
  }
  for (const auto& z : zeros)
    if (z.re >= lo && z.re <= hi) out.zeros.push_back(z);
  std::sort(out.zeros.begin(), out.zeros.end(), [](const LocalZero& a, const LocalZero& b) {
    return a.re != b.re ? a.re > b.re : a.im < b.im;
  });
  return out;
}

enum class Confidence { Exact, VerifiedToDepth };

struct ZeroCensus {
  std::uint64_t prime_bound = 0;
  std::size_t primes_tested = 0;
  std::size_t primes_with_zero_beyond = 0;
  std::size_t top_decade_primes = 0;
  std::size_t top_decade_with_zero_beyond = 0;
  double max_re = -std::numeric_limits<double>::infinity();
};

struct Classification {
  Rational beta;
  BivariateLocalFactor ghost;
  int case_label = 0;
  Confidence confidence = Confidence::Exact;
  std::int64_t depth = 0;
  std::uint64_t prime_bound = 0;
  // evidence
  CyclotomicVerdict ghost_verdict;
  std::optional<ZetaFactorization> factorization;
  std::vector<BivariateFactor> crossing;  // a < beta b < a + 1, e != 0
  std::size_t crossing_half_depth = 0;    // crossing factors with b <= depth / 2
  std::optional<ZeroCensus> census;
};

/// Factors of f crossing the line: a < beta b < a + 1.
inline std::vector<BivariateFactor> crossing_factors(const ZetaFactorization& f, const Rational& beta) {
  std::vector<BivariateFactor> out;
  for (const auto& t : f.factors) {
    const Rational x = beta * t.b;
    if (t.e != 0 && t.a < x && x < t.a + 1) out.push_back(t);
  }
  return out;
}

inline ZeroCensus local_zero_census(const BivariateLocalFactor& w, const Rational& beta, std::uint64_t prime_bound) {
  ZeroCensus c;
  c.prime_bound = prime_bound;
  const double b = to_double(beta);
  for (auto p : primes_up_to(prime_bound)) {
    const auto zs = local_zeros(w, p);
    ++c.primes_tested;
    const bool top = 10 * p > prime_bound;
    bool beyond = false;
    for (const auto& z : zs.zeros) {
      c.max_re = std::max(c.max_re, z.re);
      beyond = beyond || z.re > b + kBeyondTolerance;
    }
    c.primes_with_zero_beyond += beyond;
    c.top_decade_primes += top;
    c.top_decade_with_zero_beyond += top && beyond;
  }
  return c;
}

inline Classification classify(const BivariateLocalFactor& w, std::int64_t depth, std::uint64_t prime_bound) {
  detail::require_factorizable(w);
  if (!w.has_integer_exponents()) throw ValidationError("classification needs integer exponents");
  if (depth < 2) throw ValidationError("depth must be at least 2");
  if (prime_bound < 2) throw ValidationError("prime bound must be at least 2");
  Classification c;
  c.beta = beta(w);
  c.ghost = ghost(w);
  c.depth = depth;
  c.prime_bound = prime_bound;
  c.ghost_verdict = cyclotomic_factor_multi(c.ghost);
  if (!c.ghost_verdict.cyclotomic) {
    c.case_label = 2;
    return c;
  }
  if (w == c.ghost) {
    c.case_label = 1;
    return c;
  }
  c.confidence = Confidence::VerifiedToDepth;
  c.factorization = factorize_bivariate(w, depth);
  c.crossing = crossing_factors(*c.factorization, c.beta);
  c.crossing_half_depth = static_cast<std::size_t>(
      std::count_if(c.crossing.begin(), c.crossing.end(), [&](const BivariateFactor& t) { return 2 * t.b <= depth; }));
  if (c.crossing.size() > c.crossing_half_depth) {
    c.case_label = 3;
    return c;
  }
  c.census = local_zero_census(w, c.beta, prime_bound);
  const auto& z = *c.census;
  c.case_label = z.top_decade_primes > 0 && z.top_decade_with_zero_beyond == z.top_decade_primes ? 4 : 5;
  return c;
}

struct ClusterRow {
  std::uint64_t p;
  bool found;         // some zero lies beyond target_re
  double re;          // nearest lattice point to target_re + i target_im
  double im;
  double distance;
  double min_offset;  // smallest Re s - target_re over zeros beyond target_re
};

/// For each prime, the zero-lattice point beyond target_re closest to
/// target_re + i target_im.
inline std::vector<ClusterRow> boundary_cluster(const BivariateLocalFactor& w, double target_re, double target_im,
                                                const std::vector<std::uint64_t>& primes) {
  std::vector<ClusterRow> rows;
  for (auto p : primes) {
    ClusterRow row{p, false, 0, 0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const auto zs = local_zeros(w, p);
    for (const auto& z : zs.zeros) {
      if (!(z.re > target_re + kBeyondTolerance)) continue;
      const double k = std::round((target_im - z.im) / zs.period);
      const double im = z.im + k * zs.period;
      const double dist = std::hypot(z.re - target_re, im - target_im);
      row.found = true;
      row.min_offset = std::min(row.min_offset, z.re - target_re);
      if (dist < row.distance) {
        row.distance = dist;
        row.re = z.re;
        row.im = im;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eulerprod
