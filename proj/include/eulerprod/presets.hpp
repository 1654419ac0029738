#pragma once

// Local factors used in the bundled examples.

#include "eulerprod/parse.hpp"
#include "eulerprod/poly.hpp"

namespace eulerprod::presets {

inline constexpr const char* kGsp6 = "1 + x*y + x^2*y + x^3*y + x^4*y + x^5*y^2";

inline constexpr const char* kInnocent = "1 + y + x*y^2";

inline constexpr const char* kCaseFive = "1 - x^2*y + y";

/// Cubic-surface factor in variables (X, Y) with X = p^{-1/4}, Y = p^{3/4 - s}.
inline constexpr const char* kCubicXY =
    "1 + (1 - x^3*y)*(x^6*y^(-2) + x^5*y^(-1) + x^4 + x^2*y^2 + x*y^3 + y^4) - x^9*y^3";

inline BivariateLocalFactor gsp6() { return parse_bivariate(kGsp6); }

/// The cubic-surface factor rewritten for x -> p, y -> p^{-s}:
/// X^a Y^b = p^{(3b - a)/4} (p^{-s})^b.
inline BivariateLocalFactor cubic_surface() {
  return substitute_monomials(parse_bivariate(kCubicXY), Rational(-1, 4), Rational(0), Rational(3, 4), Rational(1));
}

}  // namespace eulerprod::presets
