#pragma once

// Cyclotomicity tests for univariate and multivariate polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eulerprod/poly.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/roots.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

/// (1 - X^m)^gamma.
struct CyclotomicFactor {
  Exponents m;
  Integer gamma;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct CyclotomicFactorization {
  std::vector<CyclotomicFactor> factors;
  // Univariate only: (index n, multiplicity) for each Psi_n dividing h, where
  // Psi_1 = 1 - X and Psi_n = Phi_n otherwise.
  std::vector<std::pair<std::uint64_t, std::int64_t>> indices;
};

struct RootWitness {
  std::complex<double> root;
  double modulus;
  double residual;
};

struct DepthWitness {
  std::int64_t depth;
  std::string reason;
};

struct CyclotomicVerdict {
  bool cyclotomic = false;
  std::optional<CyclotomicFactorization> factorization;
  std::variant<std::monostate, RootWitness, DepthWitness> witness;
};

inline constexpr double kOffCircleTolerance = 1e-8;

namespace detail {

using IntPoly = std::vector<Integer>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// h / g when g(0) = 1 and the division is exact, else nullopt.
inline std::optional<IntPoly> divide_exact(const IntPoly& h, const IntPoly& g) {
  if (h.size() < g.size()) return std::nullopt;
  const std::size_t dq = h.size() - g.size();
  IntPoly q(dq + 1);
  for (std::size_t i = 0; i <= dq; ++i) {
    Integer acc = h[i];
    for (std::size_t j = 1; j < g.size() && j <= i; ++j) acc -= g[j] * q[i - j];
    q[i] = acc;
  }
  for (std::size_t i = dq + 1; i < h.size(); ++i) {
    Integer acc = h[i];
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i >= j && i - j <= dq) acc -= g[j] * q[i - j];
    if (acc != 0) return std::nullopt;
  }
  return q;
}

// Phi_n for n >= 2, 1 - X for n = 1; all have constant term 1.
class CyclotomicTable {
 public:
  const IntPoly& psi(std::uint64_t n) {
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    IntPoly p;
    if (n == 1) {
      p = {Integer(1), Integer(-1)};
    } else {
      // 1 - X^n = prod_{d | n} Psi_d up to sign; divide out proper divisors.
      p.assign(n + 1, Integer(0));
      p[0] = 1;
      p[n] = -1;
      for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) p = *divide_exact(p, psi(d));
      if (p[0] != 1)
        for (auto& c : p) c = -c;
    }
    return cache_.emplace(n, std::move(p)).first->second;
  }

 private:
  std::map<std::uint64_t, IntPoly> cache_;
};

// Square-free part over Q, scaled to an integer polynomial.
inline std::vector<Rational> rational_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  auto strip = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      strip(a);
    }
    std::swap(a, b);
  }
  return a;
}

inline std::vector<long double> square_free_part(const IntPoly& h) {
  std::vector<Rational> f(h.begin(), h.end()), df;
  for (std::size_t k = 1; k < h.size(); ++k) df.emplace_back(h[k] * k);
  auto g = rational_gcd(f, df);
  // f / g by long division
  std::vector<Rational> q(f.size() - g.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = f[i + g.size() - 1] / g.back();
    for (std::size_t j = 0; j < g.size(); ++j) f[i + j] -= q[i] * g[j];
  }
  std::vector<long double> out;
  for (const auto& c : q) out.push_back(to_long_double(c));
  return out;
}

inline bool factors_reconstruct_uni(const std::vector<CyclotomicFactor>& factors, const IntPoly& h) {
  std::vector<SeriesFactor> sf;
  for (const auto& f : factors) sf.push_back({f.m, Rational(f.gamma)});
  Series target(1, 1, Series::kUntruncated);
  for (std::size_t i = 0; i < h.size(); ++i) target.add_term({static_cast<std::int64_t>(i)}, Rational(h[i]));
  return reconstructs_exactly(sf, target, 1 << 20);
}

}  // namespace detail

/// Decides whether h (h(0) = 1) is a product of cyclotomic polynomials by
/// exact trial division; otherwise returns an off-circle root of h.
inline CyclotomicVerdict cyclotomic_factor_uni(const UniPoly& h) {
  if (h.is_zero()) throw ValidationError("zero polynomial");
  if (h[0] != 1) throw ValidationError("constant term must be 1");
  if (h.degree() < 1) throw ValidationError("degree must be at least 1");
  const auto d = static_cast<std::uint64_t>(h.degree());

  detail::CyclotomicTable table;
  detail::IntPoly rest = h.coeffs();
  CyclotomicFactorization fac;
  // phi(n) >= sqrt(n/2), so phi(n) <= d forces n <= 2 d^2.
  for (std::uint64_t n = 1; n <= 2 * d * d + 2 && rest.size() > 1; ++n) {
    if (totient(n) > d) continue;
    const auto& psi = table.psi(n);
    std::int64_t mult = 0;
    while (auto q = detail::divide_exact(rest, psi)) {
      rest = std::move(*q);
      ++mult;
    }
    if (mult > 0) fac.indices.emplace_back(n, mult);
  }

  CyclotomicVerdict v;
  if (rest.size() == 1) {
    // Psi_n = prod_{k | n} (1 - X^k)^{mu(n/k)}
    std::map<std::int64_t, Integer> gamma;
    for (const auto& [n, mult] : fac.indices)
      for (std::uint64_t k = 1; k <= n; ++k)
        if (n % k == 0) gamma[static_cast<std::int64_t>(k)] += moebius(n / k) * mult;
    for (const auto& [k, g] : gamma)
      if (g != 0) fac.factors.push_back({{k}, g});
    if (!detail::factors_reconstruct_uni(fac.factors, h.coeffs()))
      throw ComputeError("internal: cyclotomic factorization does not reconstruct the input");
    v.cyclotomic = true;
    v.factorization = std::move(fac);
    return v;
  }

  // Kronecker: the cofactor is reversed-monic with no root of unity among its
  // roots, so some root lies off the unit circle.
  const auto roots = polynomial_roots(detail::square_free_part(rest));
  std::optional<RootWitness> best;
  for (const auto& r : roots) {
    const double mod = std::abs(r.value);
    if (std::abs(mod - 1.0) < kOffCircleTolerance) continue;
    if (!best || mod < best->modulus) best = RootWitness{r.value, mod, r.residual};
  }
  if (!best) throw ComputeError("non-cyclotomic cofactor without a certified off-circle root");
  v.witness = *best;
  return v;
}

enum class EstermannOutcome { ContinuesToWholePlane, NaturalBoundaryAtImaginaryAxis };

struct EstermannReport {
  EstermannOutcome outcome;
  CyclotomicVerdict verdict;
  std::string statement;
};

inline EstermannReport estermann_verdict(const UniPoly& h) {
  auto v = cyclotomic_factor_uni(h);
  EstermannReport r{v.cyclotomic ? EstermannOutcome::ContinuesToWholePlane
                                 : EstermannOutcome::NaturalBoundaryAtImaginaryAxis,
                    v, ""};
  r.statement = v.cyclotomic
                    ? "prod_p h(p^-s) continues meromorphically to Re s > 0 and, being a finite product of "
                      "zeta values, to the whole plane"
                    : "prod_p h(p^-s) continues meromorphically to Re s > 0; Re s = 0 is its natural boundary";
  return r;
}

/// Safe elimination depth for a polynomial of degree d in the grading used:
/// covers 2d + 2 and every Psi_n^{d / phi(n)} substitution (Psi_30 needs 30
/// at d = 8).
inline std::int64_t default_cyclotomic_depth(std::int64_t d) {
  std::int64_t best = 2 * d + 2;
  for (std::int64_t n = 1; n <= 2 * d * d + 2; ++n) {
    const auto phi = static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(n)));
    if (phi <= d) best = std::max(best, n * (d / phi));
  }
  return best;
}

namespace detail {

// Series-level multivariate test; `to_factor_m` maps a series key to the
// reported exponent vector.
template <class KeyMap>
CyclotomicVerdict cyclotomic_series_test(const Series& exact, std::int64_t depth, KeyMap to_factor_m) {
  CyclotomicVerdict v;
  const auto factors = eliminate(log(exact.truncated(depth)));
  for (const auto& f : factors)
    if (!is_integer(f.e)) {
      v.witness = DepthWitness{depth, "non-integer exponent at grade " + std::to_string(exact.grade(f.m))};
      return v;
    }
  if (static_cast<std::int64_t>(factors.size()) > depth) {
    v.witness = DepthWitness{depth, "more than depth-many factors"};
    return v;
  }
  if (!reconstructs_exactly(factors, exact, depth * std::max<std::int64_t>(depth, 8))) {
    v.witness = DepthWitness{depth, "elimination did not terminate within depth"};
    return v;
  }
  CyclotomicFactorization fac;
  for (const auto& f : factors) fac.factors.push_back({to_factor_m(f.m), numerator(f.e)});
  v.cyclotomic = true;
  v.factorization = std::move(fac);
  return v;
}

}  // namespace detail

/// Bounded greedy elimination on log h with exact reconstruction. Graded by
/// total degree; `depth` <= 0 selects default_cyclotomic_depth.
inline CyclotomicVerdict cyclotomic_factor_multi(const MultiPoly& h, std::int64_t depth = 0) {
  if (h.constant_term() != 1) throw ValidationError("constant term must be 1");
  const auto d = h.total_degree();
  if (d == 0) throw ValidationError("constant polynomial");
  if (depth <= 0) depth = default_cyclotomic_depth(d);
  if (depth < 2 * d + 2) throw ValidationError("depth must be at least 2*deg+2 = " + std::to_string(2 * d + 2));
  return detail::cyclotomic_series_test(h.to_series(h.vars(), Series::kUntruncated), depth,
                                        [](const Exponents& m) { return m; });
}

/// Bivariate variant. Euler factors (W(x,0) = 1) are graded by y, which also
/// admits negative powers of x; otherwise W must be a polynomial with constant
/// term 1 and is graded by total degree. Factors are reported as m = (a, b).
inline CyclotomicVerdict cyclotomic_factor_multi(const BivariateLocalFactor& w, std::int64_t depth = 0) {
  if (!w.has_integer_exponents()) throw ValidationError("cyclotomicity needs integer exponents");
  if (!w.has_integer_coefficients()) throw ValidationError("cyclotomicity needs integer coefficients");
  if (w.is_euler_factor()) {
    std::int64_t d = 0;
    for (const auto& [k, c] : w.raw_terms()) d = std::max(d, k.first);
    if (d == 0) throw ValidationError("constant polynomial");
    if (depth <= 0) depth = default_cyclotomic_depth(d);
    if (depth < 2 * d + 2) throw ValidationError("depth must be at least 2*deg+2 = " + std::to_string(2 * d + 2));
    return detail::cyclotomic_series_test(w.to_series(Series::kUntruncated), depth,
                                          [](const Exponents& m) { return Exponents{m[1], m[0]}; });
  }
  MultiPoly h(1);
  for (const auto& t : w.terms()) {
    if (t.u < 0 || t.v < 0) throw ValidationError("constant term must be 1 and exponents nonnegative");
    h.add_term({to_int64(numerator(t.u)), to_int64(numerator(t.v))}, numerator(t.coef));
  }
  return cyclotomic_factor_multi(h, depth);
}

}  // namespace eulerprod
