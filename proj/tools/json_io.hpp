#pragma once

// JSON and CSV encodings of the library's result types.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "eulerprod/eulerprod.hpp"
#include "json.hpp"

namespace eulerprod::io {

using json = nlohmann::ordered_json;

/// 15 significant digits, as printed in every artifact.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// A double rounded to 15 significant digits; non-finite values become strings.
inline json num(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return std::strtod(fmt(x).c_str(), nullptr);
}

/// Rationals are always written "p/q".
inline json rat(const Rational& q) { return numerator(q).str() + "/" + denominator(q).str(); }

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline json integer(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return z.convert_to<std::int64_t>();
  return z.str();
}

inline json exponent(const Rational& e) {
  if (is_integer(e)) return integer(numerator(e));
  return rat(e);
}

inline json complex(std::complex<double> z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

inline json poly(const UniPoly& h) {
  json terms = json::array();
  for (std::size_t k = 0; k < h.coeffs().size(); ++k)
    if (h.coeffs()[k] != 0) terms.push_back({{"exp", {k}}, {"coef", rat(Rational(h.coeffs()[k]))}});
  return {{"vars", {"X"}}, {"terms", terms}};
}

inline json poly(const BivariateLocalFactor& w) {
  json terms = json::array();
  for (const auto& t : w.terms()) terms.push_back({{"exp", {exponent(t.u), exponent(t.v)}}, {"coef", rat(t.coef)}});
  return {{"vars", {"x", "y"}}, {"terms", terms}};
}

inline json poly(const MultiPoly& h) {
  json vars = json::array();
  for (std::size_t i = 0; i < h.vars(); ++i) vars.push_back(h.variable_name(i));
  json terms = json::array();
  for (const auto& [e, c] : h.terms()) terms.push_back({{"exp", e}, {"coef", rat(Rational(c))}});
  return {{"vars", vars}, {"terms", terms}};
}

inline json verdict(const CyclotomicVerdict& v) {
  json out;
  if (v.cyclotomic) {
    out["status"] = "cyclotomic";
    json factors = json::array();
    for (const auto& f : v.factorization->factors) factors.push_back({{"m", f.m}, {"gamma", integer(f.gamma)}});
    out["factors"] = factors;
    if (!v.factorization->indices.empty()) {
      json idx = json::array();
      for (const auto& [n, mult] : v.factorization->indices) idx.push_back({{"n", n}, {"multiplicity", mult}});
      out["cyclotomic_indices"] = idx;
    }
    return out;
  }
  out["status"] = "not_cyclotomic";
  if (const auto* r = std::get_if<RootWitness>(&v.witness))
    out["witness"] = {{"kind", "root"},
                      {"root", complex(r->root)},
                      {"modulus", num(r->modulus)},
                      {"residual", num(r->residual)}};
  else if (const auto* d = std::get_if<DepthWitness>(&v.witness))
    out["witness"] = {{"kind", "depth"}, {"depth", d->depth}, {"reason", d->reason}};
  return out;
}

inline json estermann(const EstermannReport& r) {
  return {{"outcome", r.outcome == EstermannOutcome::ContinuesToWholePlane ? "ContinuesToWholePlane"
                                                                            : "NaturalBoundaryAtImaginaryAxis"},
          {"statement", r.statement},
          {"verdict", verdict(r.verdict)}};
}

inline json factorization(const ZetaFactorization& f) {
  json factors = json::array();
  for (const auto& t : f.factors) factors.push_back({{"a", rat(t.a)}, {"b", rat(t.b)}, {"e", integer(t.e)}});
  json out{{"order", f.order}, {"factors", factors}};
  try {
    json zeta = json::array();
    for (const auto& z : zeta_form(f)) zeta.push_back({{"n", exponent(z.n)}, {"m", exponent(z.m)}, {"c", integer(z.c)}});
    out["zeta"] = zeta;
  } catch (const ValidationError& e) {
    out["zeta"] = nullptr;
    out["zeta_note"] = e.what();
  }
  return out;
}

inline json factorization(const MultiZetaFactorization& f) {
  json factors = json::array();
  for (const auto& t : f.factors) factors.push_back({{"m", t.m}, {"e", integer(t.e)}, {"gamma", integer(t.gamma)}});
  return {{"r", f.r},
          {"cutoff", f.cutoff},
          {"terminating", f.terminating},
          {"growing", f.growing},
          {"factors", factors}};
}

inline json zeros(const LocalZeroSet& z) {
  json list = json::array();
  for (const auto& x : z.zeros)
    list.push_back({{"re", num(x.re)},
                    {"im", num(x.im)},
                    {"multiplicity", x.multiplicity},
                    {"residual", num(x.residual)}});
  return {{"p", z.p}, {"period", num(z.period)}, {"degree", z.degree}, {"degenerate", z.degenerate}, {"zeros", list}};
}

inline std::string zeros_csv(const LocalZeroSet& z) {
  std::string out = "p,re,im,multiplicity,residual\n";
  for (const auto& x : z.zeros)
    out += std::to_string(z.p) + "," + fmt(x.re) + "," + fmt(x.im) + "," + std::to_string(x.multiplicity) + "," +
           fmt(x.residual) + "\n";
  return out;
}

inline json census(const ZeroCensus& c) {
  return {{"prime_bound", c.prime_bound},
          {"primes_tested", c.primes_tested},
          {"primes_with_zero_beyond", c.primes_with_zero_beyond},
          {"top_decade_primes", c.top_decade_primes},
          {"top_decade_with_zero_beyond", c.top_decade_with_zero_beyond},
          {"max_re", num(c.max_re)}};
}

inline json classification(const Classification& c) {
  json evidence{{"ghost_verdict", verdict(c.ghost_verdict)}};
  if (c.factorization) {
    evidence["factorization"] = factorization(*c.factorization);
    json crossing = json::array();
    for (const auto& t : c.crossing) crossing.push_back({{"a", rat(t.a)}, {"b", rat(t.b)}, {"e", integer(t.e)}});
    evidence["crossing"] = crossing;
    evidence["crossing_count"] = c.crossing.size();
    evidence["crossing_count_half_depth"] = c.crossing_half_depth;
  }
  if (c.census) evidence["census"] = census(*c.census);
  json confidence = c.confidence == Confidence::Exact
                        ? json{{"kind", "Exact"}}
                        : json{{"kind", "VerifiedToDepth"}, {"depth", c.depth}, {"prime_bound", c.prime_bound}};
  return {{"caseLabel", c.case_label},
          {"beta", rat(c.beta)},
          {"ghost", poly(c.ghost)},
          {"confidence", confidence},
          {"evidence", evidence}};
}

inline json cluster(const std::vector<ClusterRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"p", r.p}, {"found", r.found}};
    if (r.found) {
      row["re"] = num(r.re);
      row["im"] = num(r.im);
      row["distance"] = num(r.distance);
      row["min_offset"] = num(r.min_offset);
    }
    out.push_back(row);
  }
  return out;
}

inline std::string cluster_csv(const std::vector<ClusterRow>& rows) {
  std::string out = "p,found,re,im,distance,min_offset\n";
  for (const auto& r : rows)
    out += std::to_string(r.p) + "," + (r.found ? "1" : "0") + "," + fmt(r.re) + "," + fmt(r.im) + "," +
           fmt(r.distance) + "," + fmt(r.min_offset) + "\n";
  return out;
}

inline json domain(const DomainV& v) {
  json constraints = json::array();
  for (const auto& c : v.constraints) constraints.push_back({{"alpha", c.alpha}, {"k", c.k}});
  return {{"delta", rat(v.delta)}, {"constraints", constraints}};
}

inline std::string histogram_csv(const std::vector<std::uint64_t>& hist) {
  std::string out = "t,count\n";
  std::uint64_t acc = 0;
  for (std::size_t t = 1; t < hist.size(); ++t) {
    acc += hist[t];
    out += std::to_string(t) + "," + std::to_string(acc) + "\n";
  }
  return out;
}

inline std::string residual_csv(const std::vector<ResidualRow>& rows) {
  std::string out = "x,S,S_minus_main,S_minus_main_minus_H2,fujii_bound,log5_bound\n";
  for (const auto& r : rows)
    out += fmt(r.x) + "," + fmt(r.S) + "," + fmt(r.S_minus_main) + "," + fmt(r.S_minus_main_minus_H2) + "," +
           fmt(r.fujii_bound) + "," + fmt(r.log5_bound) + "\n";
  return out;
}

inline json residual(const std::vector<ResidualRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"x", num(r.x)},
                   {"S", num(r.S)},
                   {"S_minus_main", num(r.S_minus_main)},
                   {"S_minus_main_minus_H2", num(r.S_minus_main_minus_H2)},
                   {"fujii_bound", num(r.fujii_bound)},
                   {"log5_bound", num(r.log5_bound)}});
  return out;
}

inline std::string gsp6_csv(const GSp6Coefficients& c) {
  std::string out = "n,a_n\n";
  for (const auto& [n, a] : c.a) out += std::to_string(n) + "," + a.str() + "\n";
  return out;
}

inline json term_structure(const TermStructure& t) {
  json zeta = json::array();
  for (const auto& z : t.zeta_terms) zeta.push_back({{"n", exponent(z.n)}, {"m", exponent(z.m)}, {"c", integer(z.c)}});
  json poles = json::array();
  for (const auto& w : t.pole_exponents) poles.push_back(rat(w));
  json families = json::array();
  for (const auto& f : t.zero_families) families.push_back({{"shift", rat(f.shift)}, {"scale", rat(f.scale)}});
  return {{"boundary", rat(t.boundary)}, {"pole_exponents", poles}, {"zero_families", families}, {"zeta", zeta}};
}

inline json independence(const IndependenceReport& r) {
  return {{"min_margin", num(r.min_margin)},
          {"log10_bound", num(r.log10_bound)},
          {"log10_ratio", num(r.log10_ratio)},
          {"min_log10_ratio", num(r.min_log10_ratio)},
          {"quadruple", r.quadruple}};
}

}  // namespace eulerprod::io
