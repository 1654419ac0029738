#pragma once

// Dirichlet coefficients of the GSp6 zeta function, its smoothed summatory
// function, and the exponent structure of the smoothed explicit formula.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "eulerprod/presets.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/zetafact.hpp"

namespace eulerprod {

/// Coefficient of t^k, k <= order, in
/// (1 + (p + p^2 + p^3 + p^4) t + p^5 t^2) / ((1 - t)(1 - p^3 t)(1 - p^5 t)(1 - p^6 t)).
inline std::vector<Integer> gsp6_local_coefficients(std::uint64_t p, std::size_t order) {
  const Integer P(p);
  std::vector<Integer> c(order + 1, Integer(0));
  c[0] = 1;
  if (order >= 1) c[1] = P + P * P + P * P * P + P * P * P * P;
  if (order >= 2) c[2] = P * P * P * P * P;
  for (const Integer r : {Integer(1), P * P * P, P * P * P * P * P, P * P * P * P * P * P})
    for (std::size_t k = 1; k <= order; ++k) c[k] += r * c[k - 1];
  return c;
}

/// a_n for n <= N; nonzero only at cubes n = m^3, multiplicative in m.
struct GSp6Coefficients {
  std::uint64_t N = 0;
  std::map<std::uint64_t, Integer> a;  // keyed by n = m^3

  Integer at(std::uint64_t n) const {
    if (n > N) throw ValidationError("n exceeds the coefficient range");
    auto it = a.find(n);
    return it == a.end() ? Integer(0) : it->second;
  }
};

inline GSp6Coefficients gsp6_coeffs(std::uint64_t N) {
  if (N < 1) throw ValidationError("N must be at least 1");
  GSp6Coefficients out;
  out.N = N;
  std::uint64_t M = 1;
  while ((M + 1) * (M + 1) * (M + 1) <= N) ++M;
  // smallest prime factor sieve on m <= M
  std::vector<std::uint64_t> spf(M + 1, 0);
  for (std::uint64_t i = 2; i <= M; ++i)
    if (spf[i] == 0)
      for (std::uint64_t j = i; j <= M; j += i)
        if (spf[j] == 0) spf[j] = i;
  std::map<std::uint64_t, std::vector<Integer>> local;
  for (std::uint64_t m = 1; m <= M; ++m) {
    Integer value = 1;
    for (std::uint64_t rest = m; rest > 1;) {
      const auto p = spf[rest];
      std::size_t k = 0;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      auto& table = local[p];
      if (table.size() <= k) table = gsp6_local_coefficients(p, std::max<std::size_t>(k, 2 * table.size() + 1));
      value *= table[k];
    }
    out.a.emplace(m * m * m, value);
  }
  return out;
}

struct SmoothedValue {
  double value;
  double tail_bound;  // absolute
};

/// A(x) = sum_n a_n e^{-n/x} over n <= N, N >= 30 x. The omitted tail uses
/// a_{m^3} <= m^{8.585} and a geometric ratio bound.
inline SmoothedValue gsp6_smoothed(const GSp6Coefficients& c, double x) {
  if (!(x > 0)) throw ValidationError("x must be positive");
  if (static_cast<double>(c.N) < 30 * x) throw ValidationError("N must be at least 30 x");
  long double acc = 0;
  for (auto it = c.a.rbegin(); it != c.a.rend(); ++it)
    acc += it->second.convert_to<long double>() * std::exp(-static_cast<long double>(it->first) / x);
  const auto M = static_cast<long double>(std::cbrt(static_cast<long double>(c.a.rbegin()->first))) + 1;
  // log of m^8.585 e^{-m^3/x}; its forward differences decrease in m
  auto log_term = [&](long double m) { return 8.585L * std::log(m) - m * m * m / x; };
  const long double ratio = std::exp(log_term(M + 1) - log_term(M));
  if (!(ratio < 1)) throw ComputeError("tail majorant is not geometric at this N");
  return {static_cast<double>(acc), static_cast<double>(std::exp(log_term(M)) / (1 - ratio))};
}

inline SmoothedValue gsp6_smoothed(double x, std::uint64_t N) { return gsp6_smoothed(gsp6_coeffs(N), x); }

/// Zeros of zeta(n w' + m) with w' = 3w give poles of the Mellin transform
/// at w = (rho - m) / (3n); reported as (rho + shift) / scale.
struct ZeroFamily {
  Rational shift;
  Rational scale;
  friend bool operator==(const ZeroFamily&, const ZeroFamily&) = default;
};

struct TermStructure {
  std::vector<ZetaTerm> zeta_terms;      // merged zeta(n s + m)^c in the variable s = 3w
  Rational boundary;                     // Re w of the natural boundary
  std::vector<Rational> pole_exponents;  // descending
  std::vector<ZeroFamily> zero_families;
};

/// Candidate exponents of A(x) to the right of the boundary Re w = 4/3.
inline TermStructure gsp6_term_structure() {
  std::map<std::pair<Rational, Rational>, Integer> merged;
  for (int m : {0, -3, -5, -6}) merged[{Rational(1), Rational(m)}] += 1;
  for (const auto& t : zeta_form(factorize_bivariate(presets::gsp6(), 2))) merged[{t.n, t.m}] += t.c;
  TermStructure out;
  out.boundary = Rational(4, 3);
  for (const auto& [key, c] : merged) {
    if (c == 0) continue;
    const auto& [n, m] = key;
    out.zeta_terms.push_back({n, m, c});
    if (c > 0) {
      const Rational w = (1 - m) / (3 * n);
      if (w > out.boundary) out.pole_exponents.push_back(w);
    } else if ((Rational(1, 2) - m) / (3 * n) > out.boundary) {
      out.zero_families.push_back({-m, 3 * n});
    }
  }
  std::sort(out.pole_exponents.begin(), out.pole_exponents.end(), std::greater<>());
  out.pole_exponents.erase(std::unique(out.pole_exponents.begin(), out.pole_exponents.end()), out.pole_exponents.end());
  return out;
}

}  // namespace eulerprod
