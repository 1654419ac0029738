#pragma once

// Newton polyhedra, the tube domains V(h; delta), and the toric example
// h_{A_n} for the row A_n = (1, ..., 1, -n).

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "eulerprod/poly.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/series.hpp"

namespace eulerprod {

namespace detail {

// Phase-I simplex on A x = b, x >= 0 with Bland's rule. Returns feasibility.
inline bool lp_feasible(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i)
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& x : a[i]) x = -x;
    }
  // tableau columns: structural, artificial, rhs
  const std::size_t width = cols + rows + 1;
  std::vector<std::vector<Rational>> t(rows + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = a[i][j];
    t[i][cols + i] = 1;
    t[i][width - 1] = b[i];
    basis[i] = cols + i;
  }
  // objective row holds reduced costs of "minimize sum of artificials"
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < cols || j == width - 1) t[rows][j] -= t[i][j];
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t[rows][j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; cannot happen in phase I
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return t[rows][width - 1] == 0;
}

}  // namespace detail

/// Is v a convex combination of `points`?
inline bool in_convex_hull(const Exponents& v, const std::vector<Exponents>& points) {
  if (points.empty()) return false;
  const std::size_t n = v.size();
  std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(points.size()));
  std::vector<Rational> b(n + 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != n) throw ValidationError("dimension mismatch in support");
    for (std::size_t i = 0; i < n; ++i) a[i][j] = points[j][i];
    a[n][j] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = v[i];
  b[n] = 1;
  return detail::lp_feasible(std::move(a), std::move(b));
}

/// Vertices of the convex hull of `support`: points not interior to any
/// closed segment of the hull.
inline std::vector<Exponents> ext_points(const std::vector<Exponents>& support) {
  if (support.empty()) throw ValidationError("empty support");
  const auto dim = support[0].size();
  for (const auto& p : support)
    if (p.size() != dim) throw ValidationError("dimension mismatch in support");
  const std::set<Exponents> unique(support.begin(), support.end());
  const std::vector<Exponents> pts(unique.begin(), unique.end());
  std::vector<Exponents> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Exponents> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!in_convex_hull(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

struct DomainConstraint {
  Exponents alpha;
  std::int64_t k;
  friend bool operator==(const DomainConstraint&, const DomainConstraint&) = default;
  friend auto operator<=>(const DomainConstraint&, const DomainConstraint&) = default;
};

/// V(h; delta) = { s : Re <alpha, s> > k + delta for alpha in Ext(h_k) }.
struct DomainV {
  std::size_t n = 0;
  Rational delta;
  std::vector<DomainConstraint> constraints;
};

inline DomainV domain_V(const MultiPoly& h, const Rational& delta) {
  if (h.constant_term() != 1) throw ValidationError("h must have constant term 1");
  const auto blocks = h.blocks();
  if (blocks.empty()) throw ValidationError("h is constant");
  DomainV v{h.n(), delta, {}};
  for (const auto& [k, support] : blocks)
    for (auto& alpha : ext_points(support)) v.constraints.push_back({std::move(alpha), k});
  return v;
}

inline bool contains(const DomainV& v, const std::vector<std::complex<double>>& s) {
  if (s.size() != v.n) throw ValidationError("point has dimension " + std::to_string(s.size()) + ", expected " +
                                             std::to_string(v.n));
  const double shift = to_double(v.delta);
  for (const auto& c : v.constraints) {
    double dot = 0;
    for (std::size_t i = 0; i < v.n; ++i) dot += static_cast<double>(c.alpha[i]) * s[i].real();
    if (!(dot > static_cast<double>(c.k) + shift)) return false;
  }
  return true;
}

/// Truncation of the local series of h_{A_n}: coefficients for exponent
/// vectors in the box [0, cutoff]^{n+1}, stored densely in mixed radix.
class ToricSeries {
 public:
  ToricSeries(std::int64_t n, std::int64_t cutoff) : n_(n), cutoff_(cutoff) {
    std::size_t size = 1;
    for (std::int64_t i = 0; i <= n; ++i) {
      if (size > (std::size_t{1} << 26) / static_cast<std::size_t>(cutoff + 1))
        throw ValidationError("toric box too large");
      size *= static_cast<std::size_t>(cutoff + 1);
    }
    coeffs_.assign(size, 0);
  }

  std::int64_t n() const { return n_; }
  std::int64_t cutoff() const { return cutoff_; }
  std::size_t size() const { return coeffs_.size(); }

  bool in_box(const Exponents& a) const {
    if (a.size() != static_cast<std::size_t>(n_ + 1)) return false;
    return std::all_of(a.begin(), a.end(), [&](std::int64_t x) { return x >= 0 && x <= cutoff_; });
  }

  std::size_t index(const Exponents& a) const {
    std::size_t idx = 0;
    for (auto x : a) idx = idx * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(x);
    return idx;
  }

  Exponents exponents(std::size_t idx) const {
    Exponents a(static_cast<std::size_t>(n_ + 1));
    for (std::size_t i = a.size(); i-- > 0;) {
      a[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(cutoff_ + 1));
      idx /= static_cast<std::size_t>(cutoff_ + 1);
    }
    return a;
  }

  std::int64_t coefficient(const Exponents& a) const { return in_box(a) ? coeffs_[index(a)] : 0; }
  std::int64_t& at(std::size_t idx) { return coeffs_[idx]; }
  std::int64_t at(std::size_t idx) const { return coeffs_[idx]; }

 private:
  std::int64_t n_;
  std::int64_t cutoff_;
  std::vector<std::int64_t> coeffs_;
};

/// h_{A_n} = (1 - X_1...X_{n+1}) prod_i (1 - X_i^n X_{n+1})^{-1} S(X), where S
/// sums X^r X_{n+1}^{|r|/n} over r in [0, n-1]^n with n | |r|. The first
/// factor restricts to exponent vectors with min_{i<=n} alpha_i = 0.
inline ToricSeries toric_local_series(std::int64_t n, std::int64_t cutoff) {
  if (n < 2) throw ValidationError("n must be at least 2");
  if (cutoff < 1) throw ValidationError("cutoff must be at least 1");
  ToricSeries t(n, cutoff);
  // S(X)
  Exponents r(static_cast<std::size_t>(n), 0);
  while (true) {
    const auto sum = std::accumulate(r.begin(), r.end(), std::int64_t{0});
    if (sum % n == 0) {
      Exponents a = r;
      a.push_back(sum / n);
      if (t.in_box(a)) t.at(t.index(a)) += 1;
    }
    std::size_t i = 0;
    while (i < r.size() && ++r[i] == n) r[i++] = 0;
    if (i == r.size()) break;
  }
  // geometric factors, ascending so each shifted coefficient is complete
  for (std::int64_t i = 0; i < n; ++i) {
    Exponents shift(static_cast<std::size_t>(n + 1), 0);
    shift[static_cast<std::size_t>(i)] = n;
    shift.back() = 1;
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
      if (t.at(idx) == 0) continue;
      const auto a = t.exponents(idx) + shift;
      if (t.in_box(a)) t.at(t.index(a)) += t.at(idx);
    }
  }
  // (1 - X_1...X_{n+1}), descending so sources are read before they change
  const Exponents ones(static_cast<std::size_t>(n + 1), 1);
  for (std::size_t idx = t.size(); idx-- > 0;) {
    if (t.at(idx) == 0) continue;
    const auto a = t.exponents(idx) + ones;
    if (t.in_box(a)) t.at(t.index(a)) -= t.at(idx);
  }
  return t;
}

/// d_n = C(2n-1, n) - n - 1.
inline Integer toric_degree(std::int64_t n) {
  if (n < 2) throw ValidationError("n must be at least 2");
  Integer c = 1;
  for (std::int64_t i = 1; i <= n; ++i) c = c * (2 * n - 1 - n + i) / i;
  return c - n - 1;
}

/// Histogram over heights: entry t counts coprime positive tuples with
/// x_1...x_n = x_{n+1}^n and max x_i = t, for t <= tmax.
inline std::vector<std::uint64_t> toric_height_histogram(std::int64_t n, std::int64_t tmax) {
  if (n < 2) throw ValidationError("n must be at least 2");
  if (tmax < 1) throw ValidationError("t must be at least 1");
  long double work = 1;
  for (std::int64_t i = 0; i < n; ++i) work *= static_cast<long double>(tmax);
  if (work > 2e9L) throw ValidationError("t^n too large to enumerate");
  long double top = 1;
  for (std::int64_t i = 0; i < n; ++i) top *= static_cast<long double>(tmax);
  if (top > 9e18L) throw ValidationError("t^n overflows 64-bit arithmetic");

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(tmax) + 1, 0);
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 1);
  for (std::int64_t z = 1; z <= tmax; ++z) {
    std::uint64_t target = 1;
    for (std::int64_t i = 0; i < n; ++i) target *= static_cast<std::uint64_t>(z);
    // x_1..x_{n-1} free, x_n determined
    std::fill(x.begin(), x.end(), 1);
    while (true) {
      std::uint64_t prod = 1;
      bool over = false;
      for (std::int64_t i = 0; i + 1 < n && !over; ++i) {
        prod *= static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]);
        over = prod > target;
      }
      if (!over && target % prod == 0) {
        const std::uint64_t last = target / prod;
        if (last <= static_cast<std::uint64_t>(tmax)) {
          std::int64_t g = z;
          std::int64_t h = std::max<std::int64_t>(z, static_cast<std::int64_t>(last));
          g = std::gcd(g, static_cast<std::int64_t>(last));
          for (std::int64_t i = 0; i + 1 < n; ++i) {
            g = std::gcd(g, x[static_cast<std::size_t>(i)]);
            h = std::max(h, x[static_cast<std::size_t>(i)]);
          }
          if (g == 1) ++hist[static_cast<std::size_t>(h)];
        }
      }
      std::int64_t i = 0;
      while (i + 1 < n && ++x[static_cast<std::size_t>(i)] > tmax) x[static_cast<std::size_t>(i++)] = 1;
      if (i + 1 >= n) break;
    }
  }
  return hist;
}

inline std::uint64_t brute_count_toric(std::int64_t n, std::int64_t t) {
  const auto hist = toric_height_histogram(n, t);
  return std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
}

}  // namespace eulerprod
