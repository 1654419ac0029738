#pragma once

// Polynomial roots: companion-matrix eigenvalues refined by Aberth sweeps and
// Newton polishing in extended precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <cstddef>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eulerprod/rational.hpp"

namespace eulerprod {

using cld = std::complex<long double>;

struct PolishedRoot {
  std::complex<double> value;
  double residual;  // |P(u)| / sum |c_k| |u|^k
};

/// Residual of P at u relative to the size of its terms.
inline long double normalized_residual(const std::vector<long double>& c, cld u) {
  cld acc = 0;
  long double scale = 0;
  const long double r = std::abs(u);
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * u + c[k];
    scale = scale * r + std::abs(c[k]);
  }
  return scale == 0 ? 0 : std::abs(acc) / scale;
}

/// All complex roots (with multiplicity) of c[0] + c[1] u + ... + c[d] u^d.
/// Leading zeros are ignored; zero roots are returned exactly.
inline std::vector<PolishedRoot> polynomial_roots(std::vector<long double> c, int newton_steps = 8) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw ValidationError("zero polynomial has no isolated roots");
  std::vector<PolishedRoot> out;
  std::size_t low = 0;
  while (c[low] == 0) {
    out.push_back({0.0, 0.0});
    ++low;
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  const auto d = static_cast<Eigen::Index>(c.size()) - 1;
  if (d == 0) return out;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i)
    companion(i, d - 1) = static_cast<double>(-c[static_cast<std::size_t>(i)] / c.back());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ComputeError("companion eigenvalue iteration did not converge");

  std::vector<long double> dc(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) dc[k - 1] = c[k] * static_cast<long double>(k);
  auto newton_ratio = [&](cld u) {
    cld p = 0, q = 0;
    for (std::size_t k = c.size(); k-- > 0;) p = p * u + c[k];
    for (std::size_t k = dc.size(); k-- > 0;) q = q * u + dc[k];
    return std::pair{p, q};
  };
  auto aberth = [&](std::vector<cld> z) {
    for (int sweep = 0; sweep < 500; ++sweep) {
      long double change = 0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const auto [p, q] = newton_ratio(z[i]);
        if (p == cld(0) || q == cld(0)) continue;
        const cld ratio = p / q;
        cld repulsion = 0;
        for (std::size_t j = 0; j < z.size(); ++j)
          if (j != i && z[j] != z[i]) repulsion += cld(1) / (z[i] - z[j]);
        const cld step = ratio / (cld(1) - ratio * repulsion);
        if (!std::isfinite(std::abs(step))) continue;
        z[i] -= step;
        change = std::max(change, std::abs(step) / std::abs(z[i]));
      }
      if (!(change > 1e-19L)) break;
    }
    long double worst = 0;
    for (const auto& u : z) worst = std::max(worst, normalized_residual(c, u));
    return std::pair{z, worst};
  };

  // companion estimates, nudged off the real axis so conjugate pairs can split
  std::vector<cld> start(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    start[static_cast<std::size_t>(i)] =
        cld(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag()) * std::polar(1.0L, 1e-3L * (i + 1));
  auto [z, worst] = aberth(start);
  if (worst > 1e-15L) {
    // the double companion solve loses small roots when magnitudes span many
    // decades; restart from circles whose radii come from the Newton polygon
    std::vector<std::pair<long double, long double>> hull;  // (k, log |c_k|), upper hull
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const std::pair<long double, long double> pt{static_cast<long double>(k), std::log(std::abs(c[k]))};
      while (hull.size() >= 2) {
        const auto& a = hull[hull.size() - 2];
        const auto& b = hull.back();
        if ((b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first) >= 0)
          hull.pop_back();
        else
          break;
      }
      hull.push_back(pt);
    }
    std::vector<cld> circles;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const auto width = static_cast<std::size_t>(hull[e + 1].first - hull[e].first);
      const long double radius = std::exp((hull[e].second - hull[e + 1].second) / static_cast<long double>(width));
      for (std::size_t m = 0; m < width; ++m)
        circles.push_back(std::polar(radius, 2 * std::numbers::pi_v<long double> * m / width + 0.4L + 0.7L * e));
    }
    auto [alt, alt_worst] = aberth(circles);
    if (alt_worst < worst) z = std::move(alt);
  }

  for (auto u : z) {
    long double best = normalized_residual(c, u);
    for (int step = 0; step < newton_steps; ++step) {
      const auto [p, q] = newton_ratio(u);
      if (q == cld(0)) break;
      const cld next = u - p / q;
      const long double res = normalized_residual(c, next);
      if (!(res < best)) break;
      u = next;
      best = res;
    }
    out.push_back({std::complex<double>(static_cast<double>(u.real()), static_cast<double>(u.imag())),
                   static_cast<double>(best)});
  }
  return out;
}

inline std::vector<PolishedRoot> polynomial_roots(const std::vector<Integer>& coeffs, int newton_steps = 8) {
  std::vector<long double> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.push_back(x.convert_to<long double>());
  return polynomial_roots(std::move(c), newton_steps);
}

}  // namespace eulerprod
