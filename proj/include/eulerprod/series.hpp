#pragma once

// Truncated graded power series with exact rational coefficients.
//
// A key is an integer exponent vector. The first `graded` coordinates are
// summed to give the grade; truncation keeps grades <= order. Terms are kept
// in graded-lex order (grade first, then lexicographic on the whole key),
// which is also the elimination order used by the factorization routines.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "eulerprod/rational.hpp"

namespace eulerprod {

using Exponents = std::vector<std::int64_t>;

struct GradedOrder {
  std::size_t graded = 1;

  std::int64_t grade(const Exponents& e) const {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < graded && i < e.size(); ++i) g += e[i];
    return g;
  }

  bool operator()(const Exponents& a, const Exponents& b) const {
    const auto ga = grade(a);
    const auto gb = grade(b);
    if (ga != gb) return ga < gb;
    return a < b;
  }
};

inline Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Exponents scaled(const Exponents& a, std::int64_t k) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

class Series {
 public:
  using Terms = std::map<Exponents, Rational, GradedOrder>;

  /// Order used for exact (untruncated) polynomial arithmetic.
  static constexpr std::int64_t kUntruncated = std::numeric_limits<std::int64_t>::max() / 4;

  Series(std::size_t dim, std::size_t graded, std::int64_t order)
      : dim_(dim), order_(order), terms_(GradedOrder{graded}) {
    if (graded == 0 || graded > dim) throw ValidationError("graded coordinate count out of range");
  }

  static Series one(std::size_t dim, std::size_t graded, std::int64_t order) {
    Series s(dim, graded, order);
    s.add_term(Exponents(dim, 0), Rational(1));
    return s;
  }

  std::size_t dim() const { return dim_; }
  std::size_t graded() const { return terms_.key_comp().graded; }
  std::int64_t order() const { return order_; }
  bool truncated() const { return order_ < kUntruncated; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::int64_t grade(const Exponents& e) const { return terms_.key_comp().grade(e); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c*X^e; terms above the truncation order are dropped.
  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != dim_) throw ValidationError("exponent vector has wrong dimension");
    if (c == 0 || grade(e) > order_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Series truncated(std::int64_t order) const {
    Series r(dim_, graded(), std::min(order, order_));
    for (const auto& [e, c] : terms_)
      if (grade(e) <= r.order_) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
  }

  /// Largest grade carrying a nonzero term (-1 when empty).
  std::int64_t max_grade() const { return terms_.empty() ? -1 : grade(terms_.rbegin()->first); }

  Series& operator+=(const Series& o) {
    check_compatible(o);
    order_ = std::min(order_, o.order_);
    drop_above_order();
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Series& operator-=(const Series& o) {
    check_compatible(o);
    order_ = std::min(order_, o.order_);
    drop_above_order();
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Series& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Rational& k) { return a *= k; }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_compatible(b);
    Series r(a.dim_, a.graded(), std::min(a.order_, b.order_));
    for (const auto& [ea, ca] : a.terms_) {
      const auto ga = a.grade(ea);
      if (ga > r.order_) break;
      for (const auto& [eb, cb] : b.terms_) {
        if (ga + b.grade(eb) > r.order_) break;
        r.add_term(ea + eb, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.dim_ == b.dim_ && a.graded() == b.graded() && a.terms_ == b.terms_;
  }

  /// In-place multiplication by (1 - X^m).
  void multiply_one_minus(const Exponents& m) {
    std::vector<std::pair<Exponents, Rational>> shifted;
    shifted.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
      auto k = e + m;
      if (grade(k) > order_) break;
      shifted.emplace_back(std::move(k), -c);
    }
    for (const auto& [e, c] : shifted) add_term(e, c);
  }

  /// In-place multiplication by (1 - X^m)^{-1}; requires a finite order and grade(m) > 0.
  void multiply_geometric(const Exponents& m) {
    if (!truncated()) throw ValidationError("geometric factor needs a truncation order");
    if (grade(m) <= 0) throw ValidationError("geometric factor needs positive grade");
    // g = f + X^m g, accumulated in ascending order so each shifted term is
    // complete before it is itself shifted.
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      auto k = it->first + m;
      if (grade(k) > order_) continue;
      add_term(k, it->second);
    }
  }

 private:
  void check_compatible(const Series& o) const {
    if (dim_ != o.dim_ || graded() != o.graded())
      throw ValidationError("series have incompatible layouts");
  }

  void drop_above_order() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = grade(it->first) > order_ ? terms_.erase(it) : std::next(it);
  }

  std::size_t dim_;
  std::int64_t order_;
  Terms terms_;
};

namespace detail {

using Block = std::vector<std::pair<Exponents, Rational>>;

// Splits a series into homogeneous blocks indexed by grade 0..order.
inline std::vector<Block> blocks_by_grade(const Series& f) {
  std::vector<Block> blocks(static_cast<std::size_t>(f.order()) + 1);
  for (const auto& [e, c] : f.terms()) blocks[static_cast<std::size_t>(f.grade(e))].emplace_back(e, c);
  return blocks;
}

inline void accumulate_product(std::map<Exponents, Rational>& acc, const Block& a, const Block& b,
                               const Rational& scale) {
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto& slot = acc[ea + eb];
      slot += scale * ca * cb;
    }
}

inline Block to_block(const std::map<Exponents, Rational>& acc) {
  Block b;
  for (const auto& [e, c] : acc)
    if (c != 0) b.emplace_back(e, c);
  return b;
}

inline void require_unit_grade_zero(const Series& f) {
  if (!f.truncated()) throw ValidationError("series operation needs a finite truncation order");
  if (f.order() > (1 << 20)) throw ValidationError("truncation order too large");
  const Exponents zero(f.dim(), 0);
  for (const auto& [e, c] : f.terms()) {
    if (f.grade(e) != 0) break;
    if (e != zero || c != 1)
      throw ValidationError("constant term must be 1 and carry the only grade-0 term");
  }
  if (f.coefficient(zero) != 1) throw ValidationError("constant term must be 1");
}

}  // namespace detail

/// Formal logarithm of f (constant term 1) to f's truncation order.
///
/// Uses the Euler-operator identity D log f = (D f) / f, where D multiplies a
/// term by its grade; both 1/f and the quotient are built block by block.
inline Series log(const Series& f) {
  detail::require_unit_grade_zero(f);
  const auto order = static_cast<std::size_t>(f.order());
  const auto fb = detail::blocks_by_grade(f);
  std::vector<detail::Block> inv(order + 1);
  inv[0] = fb[0];
  Series out(f.dim(), f.graded(), f.order());
  for (std::size_t g = 1; g <= order; ++g) {
    std::map<Exponents, Rational> inv_acc;
    std::map<Exponents, Rational> log_acc;
    for (std::size_t j = 1; j <= g; ++j) {
      if (fb[j].empty() || inv[g - j].empty()) continue;
      detail::accumulate_product(inv_acc, fb[j], inv[g - j], Rational(-1));
      detail::accumulate_product(log_acc, fb[j], inv[g - j], Rational(j, g));
    }
    inv[g] = detail::to_block(inv_acc);
    for (const auto& [e, c] : log_acc) out.add_term(e, c);
  }
  return out;
}

/// Formal exponential of a series without grade-0 terms.
inline Series exp(const Series& L) {
  if (!L.truncated()) throw ValidationError("series operation needs a finite truncation order");
  for (const auto& [e, c] : L.terms())
    if (L.grade(e) == 0) throw ValidationError("exp needs a series without grade-0 terms");
  const auto order = static_cast<std::size_t>(L.order());
  const auto lb = detail::blocks_by_grade(L);
  std::vector<detail::Block> eb(order + 1);
  eb[0].emplace_back(Exponents(L.dim(), 0), Rational(1));
  Series out = Series::one(L.dim(), L.graded(), L.order());
  for (std::size_t g = 1; g <= order; ++g) {
    std::map<Exponents, Rational> acc;
    for (std::size_t j = 1; j <= g; ++j) {
      if (lb[j].empty() || eb[g - j].empty()) continue;
      detail::accumulate_product(acc, lb[j], eb[g - j], Rational(j, g));
    }
    eb[g] = detail::to_block(acc);
    for (const auto& [e, c] : eb[g]) out.add_term(e, c);
  }
  return out;
}

/// One factor (1 - X^m)^e of a product expansion.
struct SeriesFactor {
  Exponents m;
  Rational e;
};

/// Greedy elimination of a logarithm: repeatedly cancels the graded-lex least
/// surviving term c X^m with (1 - X^m)^{-c}. Returns the factors in
/// elimination order; their product agrees with exp(L) to L's order.
inline std::vector<SeriesFactor> eliminate(const Series& L) {
  if (!L.truncated()) throw ValidationError("elimination needs a finite truncation order");
  std::map<Exponents, Rational, GradedOrder> rest(L.terms().begin(), L.terms().end(),
                                                  GradedOrder{L.graded()});
  std::vector<SeriesFactor> out;
  for (auto it = rest.begin(); it != rest.end();) {
    if (it->second == 0) {
      it = rest.erase(it);
      continue;
    }
    const Exponents m = it->first;
    const auto gm = L.grade(m);
    if (gm <= 0) throw ValidationError("cannot eliminate a grade-0 term");
    const Rational e = -it->second;
    out.push_back({m, e});
    // L <- L + e * sum_k X^{km} / k
    for (std::int64_t k = 2; k * gm <= L.order(); ++k) {
      auto& slot = rest[scaled(m, k)];
      slot += e / k;
    }
    it = rest.erase(it);
  }
  return out;
}

/// Expands prod (1 - X^m)^e directly (repeated multiplication, no logarithms).
/// All exponents e must be integers.
inline Series expand_factors(std::span<const SeriesFactor> factors, std::size_t dim, std::size_t graded,
                             std::int64_t order) {
  Series s = Series::one(dim, graded, order);
  for (const auto& f : factors) {
    if (!is_integer(f.e)) throw ValidationError("factor exponent is not an integer");
    const auto e = to_int64(numerator(f.e));
    if (e > 0)
      for (std::int64_t i = 0; i < e; ++i) s.multiply_one_minus(f.m);
    else
      for (std::int64_t i = 0; i < -e; ++i) s.multiply_geometric(f.m);
  }
  return s;
}

/// Exact polynomial identity check: does prod (1 - X^m)^e equal h?
/// Negative exponents are moved to h's side, so no truncation is involved.
/// Gives up (returns false) when the positive side would exceed `grade_cap`.
inline bool reconstructs_exactly(std::span<const SeriesFactor> factors, const Series& h,
                                 std::int64_t grade_cap) {
  Series lhs = Series::one(h.dim(), h.graded(), Series::kUntruncated);
  Series rhs(h.dim(), h.graded(), Series::kUntruncated);
  for (const auto& [e, c] : h.terms()) rhs.add_term(e, c);
  std::int64_t lhs_grade = 0;
  for (const auto& f : factors) {
    if (!is_integer(f.e)) return false;
    const auto e = to_int64(numerator(f.e));
    const auto gm = h.grade(f.m);
    if (e > 0) {
      lhs_grade += e * gm;
      if (lhs_grade > grade_cap) return false;
      for (std::int64_t i = 0; i < e; ++i) lhs.multiply_one_minus(f.m);
    } else {
      for (std::int64_t i = 0; i < -e; ++i) {
        rhs.multiply_one_minus(f.m);
        if (rhs.max_grade() > grade_cap) return false;
      }
    }
  }
  return lhs == rhs;
}

}  // namespace eulerprod
