#pragma once

// Exact polynomial types: univariate integer polynomials, bivariate local
// factors W(x, y) with rational exponents, and multivariate integer
// polynomials h(X_1..X_n, X_{n+1}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "eulerprod/primes.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

namespace detail {

inline std::string format_exponent(const Rational& e) {
  if (is_integer(e) && e >= 0) return to_string(e);
  return "(" + to_string(e) + ")";
}

// Appends one signed term to `out` in canonical form.
inline void append_term(std::string& out, const Rational& coef,
                        const std::vector<std::pair<std::string, Rational>>& powers) {
  std::string mono;
  for (const auto& [name, e] : powers) {
    if (e == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += name;
    if (e != 1) mono += "^" + format_exponent(e);
  }
  const bool negative = coef < 0;
  const Rational mag = negative ? Rational(-coef) : coef;
  std::string body;
  if (mono.empty())
    body = to_string(mag);
  else if (mag == 1)
    body = mono;
  else
    body = to_string(mag) + "*" + mono;
  if (out.empty())
    out = negative ? "-" + body : body;
  else
    out += (negative ? " - " : " + ") + body;
}

}  // namespace detail

/// Integer polynomial h(X) = c_0 + c_1 X + ... + c_d X^d.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long long> coeffs) {
    for (auto c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Integer operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(r));
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::complex<double> evaluate(std::complex<double> z) const {
    std::complex<double> acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->convert_to<double>();
    return acc;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0)
        detail::append_term(out, Rational(coeffs_[i]), {{"X", Rational(static_cast<long long>(i))}});
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

/// One term of a bivariate factor, with exponents already divided out.
struct BivariateTerm {
  Rational u;  // exponent of x (x -> p)
  Rational v;  // exponent of y (y -> p^{-s})
  Rational coef;
};

/// Laurent polynomial W(x, y) = sum a_{u,v} x^u y^v with rational exponents
/// sharing a common denominator. Evaluated as W(p, p^{-s}).
///
/// Terms are stored under integer keys (v*den, u*den) so the map order is the
/// canonical graded-lex order by (v, u).
class BivariateLocalFactor {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;  // (v numerator, u numerator)

  BivariateLocalFactor() = default;

  explicit BivariateLocalFactor(const std::vector<BivariateTerm>& terms) {
    Integer den = 1;
    for (const auto& t : terms) {
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(t.u));
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(t.v));
    }
    den_ = to_int64(den);
    for (const auto& t : terms) {
      if (t.coef == 0) continue;
      const Key k{to_int64(numerator(t.v * den_)), to_int64(numerator(t.u * den_))};
      auto& slot = terms_[k];
      slot += t.coef;
      if (slot == 0) terms_.erase(k);
    }
    normalize();
  }

  std::int64_t denominator() const { return den_; }
  const std::map<Key, Rational>& raw_terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  std::vector<BivariateTerm> terms() const {
    std::vector<BivariateTerm> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back({Rational(k.second, den_), Rational(k.first, den_), c});
    return out;
  }

  /// W(x, 0) = 1 with no negative powers of y: usable as an Euler factor.
  bool is_euler_factor() const {
    bool has_one = false;
    for (const auto& [k, c] : terms_) {
      if (k.first < 0) return false;
      if (k.first == 0) {
        if (k.second != 0 || c != 1) return false;
        has_one = true;
      }
    }
    return has_one;
  }

  bool has_integer_exponents() const { return den_ == 1; }

  bool has_integer_coefficients() const {
    for (const auto& [k, c] : terms_)
      if (!is_integer(c)) return false;
    return true;
  }

  bool depends_on_y() const {
    for (const auto& [k, c] : terms_)
      if (k.first != 0) return true;
    return false;
  }

  friend bool operator==(const BivariateLocalFactor&, const BivariateLocalFactor&) = default;

  std::string to_string() const {
    std::string out;
    for (const auto& t : terms()) detail::append_term(out, t.coef, {{"x", t.u}, {"y", t.v}});
    return out.empty() ? "0" : out;
  }

  /// Series over keys (v*den, u*den), graded by the y-coordinate.
  Series to_series(std::int64_t order_in_y) const {
    Series s(2, 1, order_in_y >= Series::kUntruncated / den_ ? Series::kUntruncated : order_in_y * den_);
    for (const auto& [k, c] : terms_) s.add_term({k.first, k.second}, c);
    return s;
  }

 private:
  void normalize() {
    std::int64_t g = den_;
    for (const auto& [k, c] : terms_) g = std::gcd(g, std::gcd(k.first, k.second));
    if (g <= 1) return;
    std::map<Key, Rational> scaled_terms;
    for (const auto& [k, c] : terms_) scaled_terms.emplace(Key{k.first / g, k.second / g}, c);
    terms_ = std::move(scaled_terms);
    den_ /= g;
  }

  std::int64_t den_ = 1;
  std::map<Key, Rational> terms_;
};

/// Monomial change of variables: x^a y^b -> x^{a*xu + b*yu} y^{a*xv + b*yv}.
inline BivariateLocalFactor substitute_monomials(const BivariateLocalFactor& w, const Rational& xu,
                                                 const Rational& xv, const Rational& yu, const Rational& yv) {
  std::vector<BivariateTerm> out;
  for (const auto& t : w.terms()) out.push_back({t.u * xu + t.v * yu, t.u * xv + t.v * yv, t.coef});
  return BivariateLocalFactor(out);
}

/// W(p, u) as a polynomial in z = u^{1/q}: coefficient k multiplies z^{k + shift}.
/// `shift` <= 0 absorbs negative powers of u.
struct PrimeSubstitution {
  std::vector<long double> coeffs;
  std::int64_t q = 1;
  std::int64_t shift = 0;
};

inline PrimeSubstitution substitute_prime(const BivariateLocalFactor& w, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  const auto den = w.denominator();
  std::int64_t step = den;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (const auto& [k, c] : w.raw_terms()) {
    step = std::gcd(step, k.first);
    lo = std::min(lo, k.first);
    hi = std::max(hi, k.first);
  }
  PrimeSubstitution out;
  out.q = den / step;
  out.shift = lo / step;
  const auto size = static_cast<std::size_t>((hi - lo) / step) + 1;
  // integral powers of p are summed exactly so cancellations are exact
  std::vector<Rational> exact(size);
  std::vector<long double> inexact(size, 0.0L);
  const long double lp = std::log(static_cast<long double>(p));
  for (const auto& [k, c] : w.raw_terms()) {
    const auto slot = static_cast<std::size_t>((k.first - lo) / step);
    if (k.second % den == 0) {
      const auto e = k.second / den;
      const Integer pe = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e < 0 ? -e : e));
      exact[slot] += e < 0 ? c / Rational(pe) : c * Rational(pe);
    } else {
      inexact[slot] += to_long_double(c) * std::exp(lp * static_cast<long double>(k.second) / static_cast<long double>(den));
    }
  }
  out.coeffs.resize(size);
  for (std::size_t i = 0; i < size; ++i) out.coeffs[i] = to_long_double(exact[i]) + inexact[i];
  return out;
}

/// |W(p, p^{-s})| divided by the sum of the absolute values of its terms.
inline long double relative_residual_at_prime(const BivariateLocalFactor& w, std::uint64_t p,
                                              std::complex<long double> s) {
  const long double lp = std::log(static_cast<long double>(p));
  const auto den = static_cast<long double>(w.denominator());
  std::complex<long double> acc = 0;
  long double scale = 0;
  for (const auto& [k, c] : w.raw_terms()) {
    const auto term = to_long_double(c) *
                      std::exp(lp * (static_cast<long double>(k.second) / den - s * (static_cast<long double>(k.first) / den)));
    acc += term;
    scale += std::abs(term);
  }
  return scale == 0 ? 0 : std::abs(acc) / scale;
}

/// W(p, p^{-s}) in extended precision.
inline std::complex<long double> evaluate_at_prime(const BivariateLocalFactor& w, std::uint64_t p,
                                                   std::complex<long double> s) {
  const long double lp = std::log(static_cast<long double>(p));
  const auto den = static_cast<long double>(w.denominator());
  std::complex<long double> acc = 0;
  for (const auto& [k, c] : w.raw_terms())
    acc += to_long_double(c) *
           std::exp(lp * (static_cast<long double>(k.second) / den - s * (static_cast<long double>(k.first) / den)));
  return acc;
}

/// Integer polynomial h(X_1..X_n, X_{n+1}) with nonnegative exponents; the
/// last variable stands for the prime p. Keys are graded by the weight of the
/// first n coordinates.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, Integer, GradedOrder>;

  explicit MultiPoly(std::size_t n = 1) : n_(n), terms_(GradedOrder{n}) {
    if (n == 0) throw ValidationError("MultiPoly needs at least one variable");
  }

  MultiPoly(std::size_t n, const std::vector<std::pair<Exponents, Integer>>& terms) : MultiPoly(n) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  std::size_t n() const { return n_; }
  std::size_t vars() const { return n_ + 1; }
  const Terms& terms() const { return terms_; }

  void add_term(const Exponents& e, const Integer& c) {
    if (e.size() != n_ + 1) throw ValidationError("MultiPoly exponent vector must have n+1 entries");
    for (auto x : e)
      if (x < 0) throw ValidationError("MultiPoly exponents must be nonnegative");
    if (c == 0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  Integer constant_term() const {
    auto it = terms_.find(Exponents(n_ + 1, 0));
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Total degree over all n+1 variables.
  std::int64_t total_degree() const {
    std::int64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), std::int64_t{0}));
    return d;
  }

  /// Largest weight |m| over the first n variables.
  std::int64_t weight_degree() const {
    std::int64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, terms_.key_comp().grade(e));
    return d;
  }

  /// h = 1 + sum_k h_k(X_1..X_n) X_{n+1}^k; returns the supports of h_k
  /// (the constant 1 is not part of h_0).
  std::map<std::int64_t, std::vector<Exponents>> blocks() const {
    std::map<std::int64_t, std::vector<Exponents>> out;
    const Exponents zero(n_ + 1, 0);
    for (const auto& [e, c] : terms_) {
      if (e == zero) continue;
      out[e.back()].emplace_back(e.begin(), e.end() - 1);
    }
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string variable_name(std::size_t i) const { return "X" + std::to_string(i + 1); }

  std::string to_string() const {
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::vector<std::pair<std::string, Rational>> powers;
      for (std::size_t i = 0; i < e.size(); ++i) powers.emplace_back(variable_name(i), Rational(e[i]));
      detail::append_term(out, Rational(c), powers);
    }
    return out.empty() ? "0" : out;
  }

  /// Series over all n+1 coordinates; `graded` selects how many leading
  /// coordinates define the grade (n for weight, n+1 for total degree).
  Series to_series(std::size_t graded, std::int64_t order) const {
    Series s(n_ + 1, graded, order);
    for (const auto& [e, c] : terms_) s.add_term(e, Rational(c));
    return s;
  }

 private:
  std::size_t n_;
  Terms terms_;
};

}  // namespace eulerprod
