#pragma once

// Riemann zeta evaluation, zeta-zero tables, and numeric Euler products.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eulerprod/poly.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/roots.hpp"

namespace eulerprod {

namespace detail {

constexpr int kEulerMaclaurinTerms = 24;

// B_2, B_4, ..., B_{2M} from the recurrence sum_{j<=n} C(n+1, j) B_j = 0.
inline const std::vector<long double>& even_bernoulli() {
  static const std::vector<long double> table = [] {
    const int top = 2 * kEulerMaclaurinTerms;
    std::vector<Rational> b(top + 1);
    b[0] = 1;
    for (int n = 1; n <= top; ++n) {
      Rational acc = 0;
      Integer binom = 1;  // C(n+1, j)
      for (int j = 0; j < n; ++j) {
        acc += Rational(binom) * b[j];
        binom = binom * (n + 1 - j) / (j + 1);
      }
      b[n] = -acc / Rational(n + 1);
    }
    std::vector<long double> out;
    for (int k = 1; k <= kEulerMaclaurinTerms; ++k) out.push_back(to_long_double(b[2 * k]));
    return out;
  }();
  return table;
}

inline cld zeta_euler_maclaurin(cld s) {
  const auto& bern = even_bernoulli();
  const int m = kEulerMaclaurinTerms;
  const long double size = std::abs(s) + 2 * m;
  const auto n = static_cast<std::int64_t>(std::max<long double>(10, std::ceil(3 * size / (2 * std::numbers::pi_v<long double>))));
  cld sum = 0;
  for (std::int64_t k = n - 1; k >= 1; --k) sum += std::exp(-s * std::log(static_cast<long double>(k)));
  const long double ln = std::log(static_cast<long double>(n));
  const cld npow = std::exp(-s * ln);  // N^{-s}
  sum += npow * static_cast<long double>(n) / (s - 1.0L) + npow / 2.0L;
  // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cld rising = s;                            // s (s+1) ... (s+2k-2)
  cld power = npow / static_cast<long double>(n);  // N^{-s-2k+1}
  long double fact = 2;                      // (2k)!
  for (int k = 1; k <= m; ++k) {
    sum += bern[static_cast<std::size_t>(k - 1)] / fact * rising * power;
    rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
    power /= static_cast<long double>(n) * static_cast<long double>(n);
    fact *= static_cast<long double>(2 * k + 1) * static_cast<long double>(2 * k + 2);
  }
  return sum;
}

}  // namespace detail

/// Complex Gamma via the Lanczos approximation (g = 7) with reflection.
inline cld gamma(cld z) {
  static constexpr std::array<long double, 9> c{
      0.99999999999980993227684700473478L, 676.520368121885098567009190444019L,
      -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
      -176.61502916214059906584551354L,     12.507343278686904814458936853L,
      -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
      1.50563273514931155834e-7L};
  constexpr long double pi = std::numbers::pi_v<long double>;
  if (z.real() < 0.5L) return pi / (std::sin(pi * z) * gamma(1.0L - z));
  z -= 1.0L;
  cld x = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<long double>(i));
  const cld t = z + 7.5L;
  return std::sqrt(2 * pi) * std::pow(t, z + 0.5L) * std::exp(-t) * x;
}

/// Riemann zeta by Euler-Maclaurin summation; the functional equation is
/// used for Re s < -1.
inline std::complex<double> zeta_eval(std::complex<double> s) {
  if (s == std::complex<double>(1.0, 0.0)) throw ValidationError("zeta has a pole at s = 1");
  if (std::abs(s.imag()) > 1e5) throw ValidationError("|Im s| > 1e5 is outside the supported range");
  const cld z(s.real(), s.imag());
  if (z.real() < -1) {
    constexpr long double pi = std::numbers::pi_v<long double>;
    const cld v = std::pow(cld(2), z) * std::pow(cld(pi), z - 1.0L) * std::sin(pi * z / 2.0L) * gamma(1.0L - z) *
                  detail::zeta_euler_maclaurin(1.0L - z);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  const cld v = detail::zeta_euler_maclaurin(z);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

/// Imaginary parts of nontrivial zeros, ascending, validated on load.
struct ZetaZerosTable {
  std::vector<double> gammas;
  std::string source;
  int precision = 0;  // significant decimal digits in the source
};

inline ZetaZerosTable parse_zeros(std::istream& in, const std::string& source = "<stream>") {
  ZetaZerosTable t;
  t.source = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string text = line.substr(first, last - first + 1);
    double g = 0;
    std::size_t used = 0;
    try {
      g = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !(g > 0))
      throw ValidationError(source + ":" + std::to_string(lineno) + ": not a positive decimal number");
    if (!t.gammas.empty() && !(g > t.gammas.back()))
      throw ValidationError(source + ":" + std::to_string(lineno) + ": zeros are not strictly ascending");
    const double mod = std::abs(zeta_eval({0.5, g}));
    if (!(mod < 1e-5))
      throw ValidationError(source + ":" + std::to_string(lineno) + ": |zeta(1/2 + i gamma)| = " +
                            std::to_string(mod) + " is not below 1e-5");
    int digits = 0;
    for (char ch : text) digits += std::isdigit(static_cast<unsigned char>(ch)) ? 1 : 0;
    t.precision = std::max(t.precision, digits);
    t.gammas.push_back(g);
  }
  if (t.gammas.empty()) throw ValidationError(source + ": no zeros found");
  if (std::abs(t.gammas.front() - 14.134725141734693) > 1e-3)
    throw ValidationError(source + ": first zero is not 14.1347...");
  return t;
}

inline ZetaZerosTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open zeros file " + path);
  return parse_zeros(in, path);
}

struct IndependenceReport {
  double min_margin = 0;
  // exp(-alpha sum |gamma|) for the minimizing quadruple, and the ratio
  // margin / bound; kept as base-10 logs because both leave double range
  double log10_bound = 0;
  double log10_ratio = 0;
  std::array<std::size_t, 4> quadruple{};  // 1-based indices: {i, j} vs {k, l}
  double min_log10_ratio = 0;              // worst ratio over all quadruples
};

/// min |(g_i + g_j) - (g_k + g_l)| over distinct multisets {i, j}, {k, l}
/// drawn from the first K zeros.
inline IndependenceReport independence_margin(const ZetaZerosTable& t, std::size_t k, double alpha) {
  if (k < 2) throw ValidationError("K must be at least 2");
  if (k > t.gammas.size()) throw ValidationError("K exceeds the table size");
  if (k > 50) throw ValidationError("K is capped at 50");
  if (!(alpha > 0 && alpha < std::numbers::pi / 2)) throw ValidationError("alpha must lie in (0, pi/2)");
  struct Pair {
    double sum;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) pairs.push_back({t.gammas[i] + t.gammas[j], i, j});
  IndependenceReport r;
  r.min_margin = std::numeric_limits<double>::infinity();
  r.min_log10_ratio = std::numeric_limits<double>::infinity();
  const double to10 = 1 / std::log(10.0);
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const double margin = std::abs(pairs[a].sum - pairs[b].sum);
      const double log10_bound = -alpha * (pairs[a].sum + pairs[b].sum) * to10;
      const double log10_ratio = std::log10(margin) - log10_bound;
      r.min_log10_ratio = std::min(r.min_log10_ratio, log10_ratio);
      if (margin < r.min_margin) {
        r.min_margin = margin;
        r.log10_bound = log10_bound;
        r.log10_ratio = log10_ratio;
        r.quadruple = {pairs[a].i + 1, pairs[a].j + 1, pairs[b].i + 1, pairs[b].j + 1};
      }
    }
  return r;
}

/// max (u + 1)/v over terms with v > 0.
inline Rational abscissa_of_convergence(const BivariateLocalFactor& w) {
  std::optional<Rational> best;
  for (const auto& t : w.terms())
    if (t.v > 0) {
      const Rational r = (t.u + 1) / t.v;
      if (!best || r > *best) best = r;
    }
  if (!best) throw ValidationError("W does not depend on y");
  return *best;
}

struct EulerProductValue {
  std::complex<double> value;
  double tail_bound;  // relative: |limit - value| <= tail_bound |value|
};

namespace detail {

// Products over fixed-size blocks of primes, multiplied in ascending block
// order so the result does not depend on the thread count.
template <class Factor>
cld blocked_prime_product(const std::vector<std::uint64_t>& primes, Factor factor, unsigned threads) {
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<cld> partial(blocks, cld(1));
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t b = first; b < blocks; b += stride) {
      cld acc = 1;
      const auto end = std::min(primes.size(), (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < end; ++i) acc *= factor(primes[i]);
      partial[b] = acc;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
  std::vector<std::future<void>> jobs;
  for (unsigned t = 1; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t, threads));
  work(0, threads);
  for (auto& j : jobs) j.get();
  cld acc = 1;
  for (const auto& x : partial) acc *= x;
  return acc;
}

}  // namespace detail

/// prod_{p <= P} W(p, p^-s) with a relative tail bound e^T - 1, where
/// T = sum_terms |a| P^{1-k}/(k-1), k = v Re s - u.
inline EulerProductValue euler_product_eval(const BivariateLocalFactor& w, std::complex<double> s, std::uint64_t P,
                                            unsigned threads = 1) {
  if (!w.is_euler_factor()) throw ValidationError("W(x,0) must equal 1 with no negative powers of y");
  const double sigma_a = to_double(abscissa_of_convergence(w));
  if (!(s.real() > sigma_a))
    throw ValidationError("Re s must exceed the abscissa of absolute convergence " + std::to_string(sigma_a));
  if (P < 2) throw ValidationError("prime cutoff must be at least 2");
  const auto primes = primes_up_to(P);
  const cld z(s.real(), s.imag());
  const cld value = detail::blocked_prime_product(
      primes, [&](std::uint64_t p) { return evaluate_at_prime(w, p, z); }, threads);
  long double tail = 0;
  const long double lp = std::log(static_cast<long double>(P));
  for (const auto& t : w.terms()) {
    if (t.v <= 0) continue;
    const long double kappa = to_long_double(t.v) * s.real() - to_long_double(t.u);
    tail += std::abs(to_long_double(t.coef)) * std::exp((1 - kappa) * lp) / (kappa - 1);
  }
  return {{static_cast<double>(value.real()), static_cast<double>(value.imag())},
          static_cast<double>(std::expm1(tail))};
}

/// h(p^{-s_1}, ..., p^{-s_n}, p).
inline cld evaluate_multi_at_prime(const MultiPoly& h, std::uint64_t p, const std::vector<std::complex<double>>& s) {
  if (s.size() != h.n()) throw ValidationError("point dimension does not match h");
  const long double lp = std::log(static_cast<long double>(p));
  cld acc = 0;
  for (const auto& [e, c] : h.terms()) {
    cld expo = static_cast<long double>(e.back()) * lp;
    for (std::size_t i = 0; i < s.size(); ++i)
      expo -= static_cast<long double>(e[i]) * lp * cld(s[i].real(), s[i].imag());
    acc += c.convert_to<long double>() * std::exp(expo);
  }
  return acc;
}

/// Partial products prod_{p <= b} h(p^{-s}, p) at each bound b (ascending).
inline std::vector<std::complex<double>> multi_euler_partial_products(const MultiPoly& h,
                                                                      const std::vector<std::complex<double>>& s,
                                                                      const std::vector<std::uint64_t>& bounds) {
  if (bounds.empty()) return {};
  std::vector<std::complex<double>> out;
  cld acc = 1;
  std::size_t next = 0;
  for (auto p : primes_up_to(bounds.back())) {
    while (next < bounds.size() && p > bounds[next]) {
      out.emplace_back(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      ++next;
    }
    acc *= evaluate_multi_at_prime(h, p, s);
  }
  while (next < bounds.size()) {
    out.emplace_back(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    ++next;
  }
  return out;
}

}  // namespace eulerprod
