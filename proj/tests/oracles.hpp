#pragma once

// Test-side reference computations. Each one takes a different route from
// the library code it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "eulerprod/rational.hpp"

namespace oracle {

using eulerprod::Integer;
using eulerprod::Rational;
using IntPoly = std::vector<Integer>;
using cld = std::complex<long double>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Exact long division by a monic polynomial (b.back() == +-1).
inline IntPoly div_exact(IntPoly a, const IntPoly& b) {
  IntPoly q(a.size() - b.size() + 1, Integer(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = a[i + b.size() - 1] / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::runtime_error("oracle: division not exact");
  return q;
}

/// Phi_n from X^n - 1 = prod_{d | n} Phi_d, written with constant term first.
inline IntPoly cyclotomic_phi(std::uint64_t n) {
  static std::map<std::uint64_t, IntPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly p(n + 1, Integer(0));
  p[0] = -1;
  p[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d)
    if (n % d == 0) p = div_exact(p, cyclotomic_phi(d));
  cache[n] = p;
  return p;
}

/// Phi_n normalized to constant term 1 (only Phi_1 needs the sign flip).
inline IntPoly psi(std::uint64_t n) {
  auto p = cyclotomic_phi(n);
  if (p[0] == -1)
    for (auto& c : p) c = -c;
  return p;
}

// Square-free part over Q through a Euclidean gcd with the derivative.
inline std::vector<Rational> rat_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const auto shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

inline std::vector<long double> square_free(const IntPoly& h) {
  std::vector<Rational> f(h.begin(), h.end()), d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long long>(i));
  auto a = f, b = d;
  while (!b.empty()) {
    auto r = rat_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // f / gcd by long division
  std::vector<Rational> q(f.size() - a.size() + 1);
  auto rem = f;
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = rem[i + a.size() - 1] / a.back();
    for (std::size_t j = 0; j < a.size(); ++j) rem[i + j] -= q[i] * a[j];
  }
  std::vector<long double> out;
  for (const auto& c : q) out.push_back(c.convert_to<long double>());
  return out;
}

/// All roots by Weierstrass (Durand-Kerner) iteration; suits square-free input.
inline std::vector<cld> durand_kerner(std::vector<long double> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  const std::size_t d = c.size() - 1;
  for (auto& x : c) x /= c[d];
  std::vector<cld> z(d);
  const cld seed(0.4L, 0.9L);
  z[0] = 1;
  for (std::size_t i = 0; i < d; ++i) z[i] = (i ? z[i - 1] : cld(1)) * seed;
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < d; ++i) {
      cld num = 0;
      for (std::size_t k = c.size(); k-- > 0;) num = num * z[i] + c[k];
      cld den = 1;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      const cld step = num / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-18L) break;
  }
  return z;
}

/// (1 - z)^e as a power series in z up to degree k, for any integer e.
inline std::vector<Rational> binomial_series(const Integer& e, std::size_t k) {
  std::vector<Rational> c(k + 1);
  c[0] = 1;
  for (std::size_t j = 1; j <= k; ++j) c[j] = c[j - 1] * Rational(Integer(j) - 1 - e, Integer(j));
  return c;
}

/// Integer series prod_k (1 - X^{m_k})^{g_k} truncated at degree `deg`.
inline std::vector<Rational> expand_uni(const std::vector<std::pair<std::int64_t, Integer>>& factors, std::size_t deg) {
  std::vector<Rational> s(deg + 1, Rational(0));
  s[0] = 1;
  for (const auto& [m, g] : factors) {
    const auto b = binomial_series(g, deg / static_cast<std::size_t>(m));
    std::vector<Rational> t(deg + 1, Rational(0));
    for (std::size_t i = 0; i <= deg; ++i)
      for (std::size_t j = 0; i + j * m <= deg && j < b.size(); ++j) t[i + j * m] += s[i] * b[j];
    s = std::move(t);
  }
  return s;
}

/// Bivariate truncated series keyed by (y-order, x-power).
using Biv = std::map<std::pair<std::int64_t, std::int64_t>, Rational>;

inline Biv biv_mul(const Biv& a, const Biv& b, std::int64_t order) {
  Biv r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const std::int64_t v = ka.first + kb.first;
      if (v > order) continue;
      auto& slot = r[{v, ka.second + kb.second}];
      slot += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

/// prod (1 - x^a y^b)^e up to y-order `order`, by binomial series.
inline Biv expand_biv(const std::vector<std::tuple<std::int64_t, std::int64_t, Integer>>& factors, std::int64_t order) {
  Biv s{{{0, 0}, Rational(1)}};
  for (const auto& [a, b, e] : factors) {
    const auto c = binomial_series(e, static_cast<std::size_t>(order / b));
    Biv f;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) f[{static_cast<std::int64_t>(j) * b, static_cast<std::int64_t>(j) * a}] = c[j];
    s = biv_mul(s, f, order);
  }
  return s;
}

/// Lambda(n) by trial division.
inline double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  return std::log(static_cast<double>(n));
}

/// Dirichlet eta by Borwein's algorithm, zeta = eta / (1 - 2^{1-s}).
inline std::complex<double> zeta_borwein(std::complex<double> s, int n = 80) {
  using C = std::complex<long double>;
  const C z(s.real(), s.imag());
  std::vector<long double> d(n + 1);
  long double sum = 0;
  for (int i = 0; i <= n; ++i) {
    // d_i = n sum_{j<=i} (n+j-1)! 4^j / ((n-j)! (2j)!)
    long double term = 1.0L / n;  // j = 0 term of the inner sum times n^{-1}
    long double acc = 0;
    for (int j = 0; j <= i; ++j) {
      if (j > 0) term *= 4.0L * (n + j - 1) * (n - j + 1) / ((2.0L * j - 1) * (2.0L * j));
      acc += term;
    }
    sum = n * acc;
    d[i] = sum;
  }
  C eta = 0;
  for (int k = 0; k < n; ++k) {
    const C t = (d[n] - d[k]) * std::exp(-z * std::log(static_cast<long double>(k + 1)));
    eta += (k % 2 == 0) ? t : -t;
  }
  eta /= d[n];
  const C zeta = eta / (C(1) - std::exp((C(1) - z) * std::log(2.0L)));
  return {static_cast<double>(zeta.real()), static_cast<double>(zeta.imag())};
}

}  // namespace oracle
