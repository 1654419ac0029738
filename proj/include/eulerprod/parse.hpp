#pragma once

// Recursive-descent parser for polynomial expressions.
//
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := ('+' | '-') factor | base ('^' exponent)?
//   base     := NUMBER ('/' NUMBER)? | VARIABLE | '(' expr ')'
//   exponent := NUMBER | '(' ('+' | '-')? NUMBER ('/' NUMBER)? ')'
//
// Fractional and negative powers are allowed on monomials only; whitespace
// is insignificant.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eulerprod/poly.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Sparse Laurent expression over a fixed list of variable names.
struct LaurentExpr {
  std::vector<std::string> vars;
  std::map<std::vector<Rational>, Rational> terms;

  static LaurentExpr constant(const std::vector<std::string>& vars, const Rational& c) {
    LaurentExpr e{vars, {}};
    if (c != 0) e.terms.emplace(std::vector<Rational>(vars.size(), Rational(0)), c);
    return e;
  }

  void add(const std::vector<Rational>& exps, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms[exps];
    slot += c;
    if (slot == 0) terms.erase(exps);
  }

  friend LaurentExpr operator+(LaurentExpr a, const LaurentExpr& b) {
    for (const auto& [e, c] : b.terms) a.add(e, c);
    return a;
  }

  friend LaurentExpr operator*(const LaurentExpr& a, const LaurentExpr& b) {
    LaurentExpr r{a.vars, {}};
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        std::vector<Rational> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add(e, ca * cb);
      }
    return r;
  }

  LaurentExpr negated() const {
    LaurentExpr r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  LaurentExpr parse() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      skip_ws();
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  std::optional<char> peek() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  Integer parse_natural() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  LaurentExpr parse_expr() {
    auto acc = parse_term();
    while (true) {
      if (accept('+'))
        acc = acc + parse_term();
      else if (accept('-'))
        acc = acc + parse_term().negated();
      else
        return acc;
    }
  }

  LaurentExpr parse_term() {
    auto acc = parse_factor();
    while (accept('*')) acc = acc * parse_factor();
    return acc;
  }

  LaurentExpr parse_factor() {
    if (accept('-')) return parse_factor().negated();
    if (accept('+')) return parse_factor();
    auto base = parse_base();
    skip_ws();
    const auto caret = pos_;
    if (!accept('^')) return base;
    const Rational k = parse_exponent();
    return power(base, k, caret);
  }

  Rational parse_exponent() {
    if (!accept('(')) return Rational(parse_natural());
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Rational k(parse_natural());
    if (accept('/')) {
      const auto at = pos_;
      Integer den = parse_natural();
      if (den == 0) throw ParseError("zero denominator", at);
      k /= den;
    }
    expect(')');
    return neg ? Rational(-k) : k;
  }

  LaurentExpr parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(parse_natural());
      if (accept('/')) {
        const auto at = pos_;
        Integer den = parse_natural();
        if (den == 0) throw ParseError("zero denominator", at);
        value /= den;
      }
      return LaurentExpr::constant(vars_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) {
          std::vector<Rational> e(vars_.size(), Rational(0));
          e[i] = 1;
          LaurentExpr r{vars_, {}};
          r.add(e, Rational(1));
          return r;
        }
      throw ParseError("unknown variable '" + name + "'", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  LaurentExpr power(const LaurentExpr& base, const Rational& k, std::size_t at) {
    if (is_integer(k) && k >= 0) {
      auto n = to_int64(numerator(k));
      if (n > 4096) throw ParseError("exponent too large", at);
      auto r = LaurentExpr::constant(vars_, Rational(1));
      for (std::int64_t i = 0; i < n; ++i) r = r * base;
      return r;
    }
    if (base.terms.size() != 1 || base.terms.begin()->second != 1)
      throw ParseError("fractional or negative power of a non-monomial", at);
    auto e = base.terms.begin()->first;
    for (auto& x : e) x *= k;
    LaurentExpr r{vars_, {}};
    r.add(e, Rational(1));
    return r;
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentExpr parse_expression(std::string_view text, const std::vector<std::string>& vars) {
  return detail::ExprParser(text, vars).parse();
}

inline UniPoly parse_uni(std::string_view text) {
  const auto e = parse_expression(text, {"X"});
  std::vector<Integer> coeffs;
  for (const auto& [exps, c] : e.terms) {
    if (!is_integer(exps[0]) || exps[0] < 0) throw ValidationError("univariate exponents must be natural numbers");
    if (!is_integer(c)) throw ValidationError("non-integer coefficient where integers are required");
    const auto d = static_cast<std::size_t>(to_int64(numerator(exps[0])));
    if (coeffs.size() <= d) coeffs.resize(d + 1);
    coeffs[d] = numerator(c);
  }
  return UniPoly(std::move(coeffs));
}

inline BivariateLocalFactor parse_bivariate(std::string_view text) {
  const auto e = parse_expression(text, {"x", "y"});
  std::vector<BivariateTerm> terms;
  for (const auto& [exps, c] : e.terms) terms.push_back({exps[0], exps[1], c});
  return BivariateLocalFactor(terms);
}

/// Variables X1..X{n+1}; the last one stands for p.
inline MultiPoly parse_multi(std::string_view text, std::size_t n) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n + 1; ++i) vars.push_back("X" + std::to_string(i));
  const auto e = parse_expression(text, vars);
  MultiPoly h(n);
  for (const auto& [exps, c] : e.terms) {
    Exponents m;
    for (const auto& x : exps) {
      if (!is_integer(x) || x < 0) throw ValidationError("multivariate exponents must be natural numbers");
      m.push_back(to_int64(numerator(x)));
    }
    if (!is_integer(c)) throw ValidationError("non-integer coefficient where integers are required");
    h.add_term(m, numerator(c));
  }
  return h;
}

enum class VarSet { Univariate, Bivariate, Multivariate };

using AnyPoly = std::variant<UniPoly, BivariateLocalFactor, MultiPoly>;

/// Guesses the variable set from identifiers: X1.. -> multivariate, x/y ->
/// bivariate, otherwise univariate. `max_index` receives the largest Xk index.
inline VarSet detect_varset(std::string_view text, std::size_t* max_index = nullptr) {
  VarSet vs = VarSet::Univariate;
  std::size_t top = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const auto start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    const auto id = text.substr(start, i - start);
    const bool indexed = id.size() > 1 && id[0] == 'X' &&
                         std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    if (indexed) {
      vs = VarSet::Multivariate;
      top = std::max<std::size_t>(top, std::stoul(std::string(id.substr(1))));
    } else if ((id == "x" || id == "y") && vs != VarSet::Multivariate) {
      vs = VarSet::Bivariate;
    }
  }
  if (max_index) *max_index = top;
  return vs;
}

inline AnyPoly parse_poly(std::string_view text, VarSet vars, std::size_t n = 1) {
  switch (vars) {
    case VarSet::Univariate:
      return parse_uni(text);
    case VarSet::Bivariate:
      return parse_bivariate(text);
    case VarSet::Multivariate:
      return parse_multi(text, n);
  }
  throw ValidationError("unknown variable set");
}

}  // namespace eulerprod
