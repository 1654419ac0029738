#pragma once

// Factorization of Euler products into zeta factors times an absolutely
// convergent remainder.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "eulerprod/poly.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

/// (1 - x^a y^b)^e, i.e. zeta(b s - a)^{-e}.
struct BivariateFactor {
  Rational a;
  Rational b;
  Integer e;
  friend bool operator==(const BivariateFactor&, const BivariateFactor&) = default;
};

struct ZetaFactorization {
  BivariateLocalFactor source;
  std::int64_t order = 0;
  std::vector<BivariateFactor> factors;  // graded-lex by (b, a)
};

/// zeta(n s + m)^c.
struct ZetaTerm {
  Rational n;
  Rational m;
  Integer c;
  friend bool operator==(const ZetaTerm&, const ZetaTerm&) = default;
};

namespace detail {

inline Exponents bivariate_key(const BivariateFactor& f, std::int64_t den) {
  return {to_int64(numerator(f.b * den)), to_int64(numerator(f.a * den))};
}

inline void require_factorizable(const BivariateLocalFactor& w) {
  if (!w.is_euler_factor()) throw ValidationError("W(x,0) must equal 1 with no negative powers of y");
  if (!w.depends_on_y()) throw ValidationError("W does not depend on y");
  if (!w.has_integer_coefficients()) throw ValidationError("W must have integer coefficients");
}

}  // namespace detail

/// Greedy elimination of log W to y-order N.
inline ZetaFactorization factorize_bivariate(const BivariateLocalFactor& w, std::int64_t order) {
  detail::require_factorizable(w);
  if (order < 1) throw ValidationError("order must be at least 1");
  const auto den = w.denominator();
  ZetaFactorization out{w, order, {}};
  for (const auto& f : eliminate(log(w.to_series(order)))) {
    if (!is_integer(f.e)) throw ComputeError("internal: non-integer elimination exponent");
    out.factors.push_back({Rational(f.m[1], den), Rational(f.m[0], den), numerator(f.e)});
  }
  return out;
}

/// Maps each factor to zeta(n s + m)^c with (n, m, c) = (b, -a, -e).
inline std::vector<ZetaTerm> zeta_form(const ZetaFactorization& f) {
  std::vector<ZetaTerm> out;
  for (const auto& t : f.factors) {
    if (!is_integer(t.a) || !is_integer(t.b))
      throw ValidationError("zeta form needs integral (a, b); keep the factor basis instead");
    out.push_back({t.b, -t.a, -t.e});
  }
  return out;
}

inline std::vector<BivariateFactor> from_zeta_form(const std::vector<ZetaTerm>& z) {
  std::vector<BivariateFactor> out;
  for (const auto& t : z) out.push_back({-t.m, t.n, -t.c});
  return out;
}

/// Series of the stored factors to y-order N, on W's exponent lattice.
inline Series reconstruct(const ZetaFactorization& f, std::int64_t order) {
  if (order > f.order) throw ValidationError("requested order exceeds the stored order");
  const auto den = f.source.denominator();
  std::vector<SeriesFactor> sf;
  for (const auto& t : f.factors) sf.push_back({detail::bivariate_key(t, den), Rational(t.e)});
  return expand_factors(sf, 2, 1, order * den);
}

/// (1 - X^m)^e over X_1..X_n; the zeta exponent is gamma = -e.
struct MultiFactor {
  Exponents m;
  Integer e;
  Integer gamma;
  friend bool operator==(const MultiFactor&, const MultiFactor&) = default;
};

struct MultiZetaFactorization {
  MultiPoly source;
  std::int64_t r = 1;
  std::int64_t cutoff = 0;  // N_r, a weight over X_1..X_n
  std::vector<MultiFactor> factors;
  bool terminating = false;
  bool growing = false;  // nonterminating with factors in the upper half of the weight range
};

/// Default weight cutoff r * D, D the largest weight in the support of h.
inline std::int64_t default_multi_cutoff(const MultiPoly& h, std::int64_t r) { return r * h.weight_degree(); }

/// Greedy elimination of log h graded by the weight over X_1..X_n. The last
/// variable is carried along but not graded.
inline MultiZetaFactorization factorize_multivariate(const MultiPoly& h, std::int64_t r,
                                                     std::int64_t cutoff = 0) {
  if (h.constant_term() != 1) throw ValidationError("constant term must be 1");
  if (r < 1) throw ValidationError("r must be at least 1");
  if (h.weight_degree() == 0) throw ValidationError("h does not depend on X_1..X_n");
  if (cutoff <= 0) cutoff = default_multi_cutoff(h, r);
  MultiZetaFactorization out{h, r, cutoff, {}, false, false};
  const auto exact = h.to_series(h.n(), Series::kUntruncated);
  const auto factors = eliminate(log(exact.truncated(cutoff)));
  bool upper = false;
  for (const auto& f : factors) {
    if (!is_integer(f.e)) throw ComputeError("internal: non-integer elimination exponent");
    const Integer e = numerator(f.e);
    out.factors.push_back({f.m, e, -e});
    upper = upper || 2 * exact.grade(f.m) > cutoff;
  }
  out.terminating = reconstructs_exactly(factors, exact, cutoff * std::max<std::int64_t>(cutoff, 8));
  out.growing = !out.terminating && upper;
  return out;
}

inline Series reconstruct(const MultiZetaFactorization& f, std::int64_t weight) {
  if (weight > f.cutoff) throw ValidationError("requested weight exceeds the stored cutoff");
  std::vector<SeriesFactor> sf;
  for (const auto& t : f.factors) sf.push_back({t.m, Rational(t.e)});
  return expand_factors(sf, f.source.vars(), f.source.n(), weight);
}

}  // namespace eulerprod
