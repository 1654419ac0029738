#pragma once

// Lambda-weighted additive convolutions G_r(n), their summatory functions,
// the oscillating term H_r(x) over zeta zeros, and Phi_2(s).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "eulerprod/analytic.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

/// Lambda(n) for n <= N. marker[n] is the prime p when n = p^k, else 0.
struct VonMangoldtTable {
  std::uint64_t N = 0;
  std::vector<std::uint32_t> marker;
  std::vector<double> lam;

  /// psi(x) summed from the markers in extended precision.
  long double psi(std::uint64_t x) const {
    if (x > N) throw ValidationError("x exceeds the table size");
    long double acc = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
      if (marker[n]) acc += std::log(static_cast<long double>(marker[n]));
    return acc;
  }
};

inline constexpr std::uint64_t kMaxLambdaTable = std::uint64_t{1} << 26;

inline VonMangoldtTable lambda_table(std::uint64_t N) {
  if (N < 2) throw ValidationError("N must be at least 2");
  if (N > kMaxLambdaTable) throw ValidationError("N exceeds the table cap 2^26");
  VonMangoldtTable t;
  t.N = N;
  t.marker.assign(N + 1, 0);
  t.lam.assign(N + 1, 0.0);
  std::vector<bool> composite(N + 1, false);
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t j = p * p; j <= N; j += p) composite[j] = true;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q <= N; q *= p) {
      t.marker[q] = static_cast<std::uint32_t>(p);
      t.lam[q] = lp;
      if (q > N / p) break;
    }
  }
  return t;
}

/// g[n] = G_r(n) = sum over k_1 + ... + k_r = n of Lambda(k_1)...Lambda(k_r).
struct GoldbachSeries {
  int r = 2;
  std::uint64_t N = 0;
  std::vector<double> g;
};

enum class ConvolutionMethod { Naive, Fast };

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline std::vector<double> naive_power(const VonMangoldtTable& lam, int r) {
  const auto N = lam.N;
  std::vector<std::uint64_t> support;
  for (std::uint64_t n = 2; n <= N; ++n)
    if (lam.marker[n]) support.push_back(n);
  std::vector<double> cur(lam.lam);
  for (int step = 1; step < r; ++step) {
    std::vector<double> next(N + 1, 0.0);
    for (std::uint64_t a = 0; a <= N; ++a) {
      if (cur[a] == 0) continue;
      for (auto b : support) {
        if (a + b > N) break;
        next[a + b] += cur[a] * lam.lam[b];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// r-th power of the transform in long double; length > r N avoids wraparound.
inline std::vector<double> fast_power(const VonMangoldtTable& lam, int r) {
  const auto N = lam.N;
  std::size_t len = 1;
  while (len <= static_cast<std::size_t>(r) * N) len <<= 1;
  const std::size_t half = len / 2 + 1;
  long double* in = fftwl_alloc_real(len);
  fftwl_complex* spec = fftwl_alloc_complex(half);
  fftwl_plan forward, backward;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    forward = fftwl_plan_dft_r2c_1d(static_cast<int>(len), in, spec, FFTW_ESTIMATE);
    backward = fftwl_plan_dft_c2r_1d(static_cast<int>(len), spec, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + len, 0.0L);
  for (std::uint64_t n = 0; n <= N; ++n) in[n] = std::log(static_cast<long double>(lam.marker[n] ? lam.marker[n] : 1));
  fftwl_execute(forward);
  for (std::size_t k = 0; k < half; ++k) {
    std::complex<long double> z(spec[k][0], spec[k][1]);
    std::complex<long double> acc = 1;
    for (int i = 0; i < r; ++i) acc *= z;
    spec[k][0] = acc.real();
    spec[k][1] = acc.imag();
  }
  fftwl_execute(backward);
  std::vector<double> out(N + 1);
  // nonzero G_r(n) is at least (log 2)^r, so anything below half of that is
  // transform noise
  const long double floor_value = std::pow(std::log(2.0L), r) / 2;
  for (std::uint64_t n = 0; n <= N; ++n) {
    const long double v = in[n] / static_cast<long double>(len);
    out[n] = v < floor_value ? 0.0 : static_cast<double>(v);
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftwl_destroy_plan(forward);
    fftwl_destroy_plan(backward);
  }
  fftwl_free(in);
  fftwl_free(spec);
  return out;
}

}  // namespace detail

/// r-fold additive convolution of Lambda. Fast requests with N < 16 use the
/// naive path.
inline GoldbachSeries convolve_gr(const VonMangoldtTable& lam, int r, ConvolutionMethod method) {
  if (r < 2) throw ValidationError("r must be at least 2");
  if (static_cast<long double>(lam.N) * r > static_cast<long double>(kMaxLambdaTable) * 4)
    throw ValidationError("N * r exceeds the convolution cap");
  GoldbachSeries s{r, lam.N, {}};
  s.g = method == ConvolutionMethod::Fast && lam.N >= 16 ? detail::fast_power(lam, r) : detail::naive_power(lam, r);
  return s;
}

inline long double summatory(const GoldbachSeries& g, std::uint64_t x) {
  if (x > g.N) throw ValidationError("x exceeds the series length");
  long double acc = 0;
  for (std::uint64_t n = 0; n <= x; ++n) acc += g.g[n];
  return acc;
}

/// sum_{a + b <= x} Lambda(a) Lambda(b) = sum_a Lambda(a) psi(x - a).
inline long double summatory_hyperbola(const VonMangoldtTable& lam, std::uint64_t x) {
  if (x > lam.N) throw ValidationError("x exceeds the table size");
  std::vector<long double> psi(x + 1, 0.0L);
  for (std::uint64_t n = 1; n <= x; ++n)
    psi[n] = psi[n - 1] + (lam.marker[n] ? std::log(static_cast<long double>(lam.marker[n])) : 0.0L);
  long double acc = 0;
  for (std::uint64_t a = 2; a + 2 <= x; ++a)
    if (lam.marker[a]) acc += std::log(static_cast<long double>(lam.marker[a])) * psi[x - a];
  return acc;
}

/// H_r(x) = -r sum_rho x^{r-1+rho} / (rho (rho+1) ... (rho+r-1)) over the
/// first K zeros rho = 1/2 + i gamma and their conjugates.
inline double oscillating_Hr(double x, int r, const ZetaZerosTable& zeros, std::size_t K) {
  if (K > zeros.gammas.size()) throw ValidationError("K exceeds the table size");
  if (!(x >= 2)) throw ValidationError("x must be at least 2");
  if (r < 1) throw ValidationError("r must be at least 1");
  const long double lx = std::log(static_cast<long double>(x));
  long double acc = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const cld rho(0.5L, zeros.gammas[k]);
    cld den = 1;
    for (int j = 0; j < r; ++j) den *= rho + static_cast<long double>(j);
    const cld term = std::exp((static_cast<long double>(r - 1) + rho) * lx) / den;
    acc += 2 * term.real();
  }
  return static_cast<double>(-r * acc);
}

struct Phi2Value {
  std::complex<double> value;
  double tail_bound;  // absolute
};

/// sum_{n <= N} G_2(n) n^{-s} from precomputed coefficients.
inline Phi2Value phi2_eval(const GoldbachSeries& g2, std::complex<double> s, std::uint64_t N) {
  if (g2.r != 2) throw ValidationError("phi2 needs the r = 2 series");
  if (!(s.real() > 2)) throw ValidationError("Re s must exceed 2");
  if (N < 4) throw ValidationError("N must be at least 4");
  if (N > g2.N) throw ValidationError("N exceeds the series length");
  const cld z(s.real(), s.imag());
  cld acc = 0;
  for (std::uint64_t n = N; n >= 4; --n)
    if (g2.g[n] != 0) acc += static_cast<long double>(g2.g[n]) * std::exp(-z * std::log(static_cast<long double>(n)));
  // G_2(n) <= n log^2 n, so the tail is at most sum_{n > N} n^{-a} log^2 n with
  // a = Re s - 1 > 1: the integral from N plus the largest summand.
  const long double a = z.real() - 1;
  const long double c = a - 1;
  const long double ln = std::log(static_cast<long double>(N));
  const long double integral = std::exp(-c * ln) * (ln * ln / c + 2 * ln / (c * c) + 2 / (c * c * c));
  const long double peak = std::max(ln, 2 / a);  // log t at the maximum of t^{-a} log^2 t on [N, inf)
  const long double summand = std::exp(-a * peak) * peak * peak;
  return {{static_cast<double>(acc.real()), static_cast<double>(acc.imag())}, static_cast<double>(integral + summand)};
}

inline Phi2Value phi2_eval(std::complex<double> s, std::uint64_t N) {
  if (N < 4) throw ValidationError("N must be at least 4");
  return phi2_eval(convolve_gr(lambda_table(N), 2, ConvolutionMethod::Fast), s, N);
}

struct ResidualRow {
  double x;
  double S;
  double S_minus_main;
  double S_minus_main_minus_H2;
  double fujii_bound;  // (x log x)^{4/3}
  double log5_bound;   // x log^5 x
};

inline std::vector<ResidualRow> residual_report(const GoldbachSeries& g2, const std::vector<std::uint64_t>& xs,
                                                std::size_t K, const ZetaZerosTable& zeros) {
  if (g2.r != 2) throw ValidationError("residuals need the r = 2 series");
  std::vector<ResidualRow> rows;
  for (auto x : xs) {
    const long double S = summatory(g2, x);
    const long double main = static_cast<long double>(x) * x / 2;
    const double h2 = K == 0 ? 0.0 : oscillating_Hr(static_cast<double>(x), 2, zeros, K);
    const double lx = std::log(static_cast<double>(x));
    rows.push_back({static_cast<double>(x), static_cast<double>(S), static_cast<double>(S - main),
                    static_cast<double>(S - main - h2), std::pow(static_cast<double>(x) * lx, 4.0 / 3.0),
                    static_cast<double>(x) * std::pow(lx, 5)});
  }
  return rows;
}

}  // namespace eulerprod
