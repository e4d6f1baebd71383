#pragma once

// Sticky-insertion channel. Binary words are represented by their run-length
// vectors (compositions); b sticky insertions confuse two words exactly when
// their L1 distance is at most 2b. This header holds the exact pair-counting
// machinery, the closed-form critical point of the pair generating function,
// the asymptotic total-ball rate and the three rate bounds built from it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gvbound/acsv.hpp"
#include "gvbound/count.hpp"
#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/polynomial.hpp"
#include "gvbound/rate.hpp"

namespace gvbound::sticky {

// ---------------------------------------------------------------------------
// Compositions and confusability

class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p < 1) throw DomainError("Composition: parts must be >= 1");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  int n() const { return n_; }
  int r() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

inline int l1_distance(const Composition& u, const Composition& v) {
  if (u.r() != v.r()) {
    throw DimensionMismatch("l1_distance: compositions have " + std::to_string(u.r()) + " and " +
                            std::to_string(v.r()) + " parts");
  }
  int d = 0;
  for (int i = 0; i < u.r(); ++i) d += std::abs(u[i] - v[i]);
  return d;
}

inline void check_same_shape(const Composition& u, const Composition& v, const char* who) {
  if (u.n() != v.n() || u.r() != v.r()) {
    throw DimensionMismatch(std::string(who) + ": words must share length and run count");
  }
}

inline bool is_confusable(const Composition& u, const Composition& v, int b) {
  check_same_shape(u, v, "is_confusable");
  if (b < 0) throw DomainError("is_confusable: b must be non-negative");
  return l1_distance(u, v) <= 2 * b;
}

// Calls fn(parts) for every weak composition of total into k parts (parts >= 0).
inline void for_each_weak_composition(int total, int k,
                                      const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == k - 1) {
      parts[static_cast<std::size_t>(index)] = remaining;
      fn(parts);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[static_cast<std::size_t>(index)] = v;
      rec(index + 1, remaining - v);
    }
  };
  if (k == 0) {
    if (total == 0) fn(parts);
    return;
  }
  rec(0, total);
}

// All compositions of n into exactly r positive parts, lexicographic order.
inline std::vector<Composition> compositions(int n, int r) {
  std::vector<Composition> out;
  if (n < 0 || r < 0) return out;
  if (r == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  if (n < r) return out;
  for_each_weak_composition(n - r, r, [&](const std::vector<int>& w) {
    std::vector<int> parts = w;
    for (int& p : parts) p += 1;
    out.emplace_back(std::move(parts));
  });
  return out;
}

// Enumerates every word reachable from u and from v with exactly b unit
// increments and reports whether the two sets meet.
inline bool confusable_bruteforce(const Composition& u, const Composition& v, int b) {
  check_same_shape(u, v, "confusable_bruteforce");
  if (b < 0) throw DomainError("confusable_bruteforce: b must be non-negative");
  if (u.n() + b > 20) throw SizeLimit("confusable_bruteforce: n + b exceeds 20");
  const auto reach = [b](const Composition& w) {
    std::set<std::vector<int>> out;
    for_each_weak_composition(b, w.r(), [&](const std::vector<int>& inc) {
      std::vector<int> grown = w.parts();
      for (std::size_t i = 0; i < grown.size(); ++i) grown[i] += inc[i];
      out.insert(std::move(grown));
    });
    return out;
  };
  const auto from_u = reach(u);
  const auto from_v = reach(v);
  return std::any_of(from_u.begin(), from_u.end(),
                     [&](const std::vector<int>& w) { return from_v.contains(w); });
}

// ---------------------------------------------------------------------------
// Exact pair counting
//
// N(n1, n2, r, s) = #{(u, v) in S(n1, r) x S(n2, r) : D(u, v) = s}.
// Peeling the last run pair gives a recursion in r with unbounded sums over
// the run lengths; those collapse into running sums along diagonals:
//   A(n1,n2,s) = N_{r-1}(n1-1, n2-1, s) + A(n1-1, n2-1, s)   (equal last runs)
//   B(n1,n2,s) = A(n1, n2-1, s-1) + B(n1, n2-1, s-1)         (v's last run longer)
//   C(n1,n2,s) = A(n1-1, n2, s-1) + C(n1-1, n2, s-1)         (u's last run longer)
//   N_r = A + B + C,  N_0 = [n1 = n2 = s = 0].

struct PairDims {
  int n1_max = 0;
  int n2_max = 0;
  int r_max = 0;
  int s_max = 0;
};

template <CountValue V>
class Slab {
 public:
  Slab(int n1_max, int n2_max, int s_max)
      : n1_(n1_max + 1), n2_(n2_max + 1), s_(s_max + 1),
        cells_(static_cast<std::size_t>(n1_) * n2_ * s_) {}

  int n1_max() const { return n1_ - 1; }
  int n2_max() const { return n2_ - 1; }
  int s_max() const { return s_ - 1; }

  V& at(int n1, int n2, int s) { return cells_[index(n1, n2, s)]; }
  const V& at(int n1, int n2, int s) const { return cells_[index(n1, n2, s)]; }

  // Zero outside the stored range, matching N = 0 for negative indices.
  V get(int n1, int n2, int s) const {
    if (n1 < 0 || n2 < 0 || s < 0 || n1 >= n1_ || n2 >= n2_ || s >= s_) return V{};
    return at(n1, n2, s);
  }

  void clear() { std::fill(cells_.begin(), cells_.end(), V{}); }
  std::size_t cells() const { return cells_.size(); }

 private:
  std::size_t index(int n1, int n2, int s) const {
    return (static_cast<std::size_t>(n1) * n2_ + n2) * s_ + s;
  }

  int n1_, n2_, s_;
  std::vector<V> cells_;
};

inline std::size_t slab_cells(const PairDims& d) {
  return static_cast<std::size_t>(d.n1_max + 1) * (d.n2_max + 1) * (d.s_max + 1);
}

inline void validate_dims(const PairDims& d) {
  if (d.n1_max < 0 || d.n2_max < 0 || d.r_max < 0 || d.s_max < 0) {
    throw DomainError("pair counting: dimensions must be non-negative");
  }
}

// Runs the layer-by-layer DP and hands each finished layer N_r (r = 0..r_max)
// to fn(r, slab). Only the previous layer and the running-sum slabs are held.
template <CountValue V, typename Fn>
void for_each_layer(const PairDims& dims, Fn&& fn, std::size_t cell_budget = kDefaultCellBudget) {
  validate_dims(dims);
  const std::size_t cells = slab_cells(dims);
  if (cells > cell_budget / 5) {
    throw ResourceLimit("pair counting: " + std::to_string(5 * cells) +
                        " cells exceed the budget of " + std::to_string(cell_budget));
  }
  Slab<V> prev(dims.n1_max, dims.n2_max, dims.s_max);
  Slab<V> a = prev, b = prev, c = prev, cur = prev;
  prev.at(0, 0, 0) = V{std::uint64_t{1}};
  fn(0, std::as_const(prev));
  for (int r = 1; r <= dims.r_max; ++r) {
    for (int n1 = 0; n1 <= dims.n1_max; ++n1) {
      for (int n2 = 0; n2 <= dims.n2_max; ++n2) {
        for (int s = 0; s <= dims.s_max; ++s) {
          V av{}, bv{}, cv{};
          if (n1 > 0 && n2 > 0) {
            av = prev.at(n1 - 1, n2 - 1, s);
            av += a.at(n1 - 1, n2 - 1, s);
          }
          if (n2 > 0 && s > 0) {
            bv = a.at(n1, n2 - 1, s - 1);
            bv += b.at(n1, n2 - 1, s - 1);
          }
          if (n1 > 0 && s > 0) {
            cv = a.at(n1 - 1, n2, s - 1);
            cv += c.at(n1 - 1, n2, s - 1);
          }
          V total = av;
          total += bv;
          total += cv;
          a.at(n1, n2, s) = std::move(av);
          b.at(n1, n2, s) = std::move(bv);
          c.at(n1, n2, s) = std::move(cv);
          cur.at(n1, n2, s) = std::move(total);
        }
      }
    }
    std::swap(prev, cur);
    fn(r, std::as_const(prev));
  }
}

// Complete N(n1, n2, r, s) table for the given dimensions.
template <CountValue V>
class PairCountTable {
 public:
  static constexpr CountMode mode = CountTraits<V>::mode;

  explicit PairCountTable(const PairDims& dims, std::size_t cell_budget = kDefaultCellBudget)
      : dims_(dims) {
    validate_dims(dims);
    const std::size_t total = slab_cells(dims) * (static_cast<std::size_t>(dims.r_max) + 5);
    if (total > cell_budget) {
      throw ResourceLimit("PairCountTable: " + std::to_string(total) +
                          " cells exceed the budget of " + std::to_string(cell_budget));
    }
    layers_.reserve(static_cast<std::size_t>(dims.r_max) + 1);
    for_each_layer<V>(dims, [this](int, const Slab<V>& slab) { layers_.push_back(slab); },
                      cell_budget);
  }

  const PairDims& dims() const { return dims_; }

  // N(n1, n2, r, s); zero for negative indices.
  V operator()(int n1, int n2, int r, int s) const {
    if (n1 < 0 || n2 < 0 || r < 0 || s < 0) return V{};
    if (n1 > dims_.n1_max || n2 > dims_.n2_max || r > dims_.r_max || s > dims_.s_max) {
      throw DomainError("PairCountTable: index outside the computed dimensions");
    }
    return layers_[static_cast<std::size_t>(r)].at(n1, n2, s);
  }

 private:
  PairDims dims_;
  std::vector<Slab<V>> layers_;
};

template <CountValue V>
V count_pairs(int n1, int n2, int r, int s, std::size_t cell_budget = kDefaultCellBudget) {
  if (n1 < 0 || n2 < 0 || r < 0 || s < 0) return V{};
  V out{};
  for_each_layer<V>(
      PairDims{n1, n2, r, s},
      [&](int layer, const Slab<V>& slab) {
        if (layer == r) out = slab.at(n1, n2, s);
      },
      cell_budget);
  return out;
}

inline BigInt count_pairs_exact(int n1, int n2, int r, int s) {
  return count_pairs<BigInt>(n1, n2, r, s);
}

inline double count_pairs_log2(int n1, int n2, int r, int s) {
  return count_pairs<Log2Count>(n1, n2, r, s).log2();
}

// Enumeration oracle for N(n1, n2, r, s).
inline BigInt count_pairs_bruteforce(int n1, int n2, int r, int s) {
  if (n1 < 0 || n2 < 0 || r < 0 || s < 0) return 0;
  const auto size = [](int n, int k) -> BigInt {
    if (k == 0) return n == 0 ? 1 : 0;
    if (n < k) return 0;
    return binomial_exact(n - 1, k - 1);
  };
  if (size(n1, r) * size(n2, r) > 10'000'000) {
    throw SizeLimit("count_pairs_bruteforce: more than 1e7 pairs to enumerate");
  }
  const auto us = compositions(n1, r);
  const auto vs = compositions(n2, r);
  std::uint64_t count = 0;
  for (const auto& u : us) {
    for (const auto& v : vs) {
      if (l1_distance(u, v) == s) ++count;
    }
  }
  return count;
}

// |T(n, r, d)| = sum_{s <= d} N(n, n, r, s).
template <CountValue V>
V total_ball(int n, int r, std::int64_t d, std::size_t cell_budget = kDefaultCellBudget) {
  if (n < 0 || r < 0 || d < 0) throw DomainError("total_ball: arguments must be non-negative");
  const int s_cap = static_cast<int>(std::min<std::int64_t>(d, std::max(0, 2 * (n - r))));
  V total{};
  for_each_layer<V>(
      PairDims{n, n, r, s_cap},
      [&](int layer, const Slab<V>& slab) {
        if (layer != r) return;
        for (int s = 0; s <= s_cap; ++s) total += slab.at(n, n, s);
      },
      cell_budget);
  return total;
}

inline BigInt total_ball_exact(int n, int r, std::int64_t d) { return total_ball<BigInt>(n, r, d); }

// ---------------------------------------------------------------------------
// Asymptotics

class StickyParams {
 public:
  StickyParams(double rho, double beta) : rho_(rho), beta_(beta) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("sticky: rho must lie in (0,1), got " + detail::fmt(rho));
    if (!(beta >= 0.0)) throw DomainError("sticky: beta must be non-negative, got " + detail::fmt(beta));
  }
  static StickyParams from_delta(double rho, double delta) { return {rho, delta / 2.0}; }

  double rho() const { return rho_; }
  double beta() const { return beta_; }
  double delta() const { return 2.0 * beta_; }

 private:
  double rho_;
  double beta_;
};

// Denominator of sum N(n1,n2,r,s) x1^n1 x2^n2 y^r z^s in variables (x1, x2, y, z):
// (1 - x1 x2)(1 - x1 z)(1 - x2 z) - y x1 x2 (1 - x1 x2 z^2).
inline SparsePolynomial pair_denominator() {
  const auto x1 = SparsePolynomial::variable(4, 0);
  const auto x2 = SparsePolynomial::variable(4, 1);
  const auto y = SparsePolynomial::variable(4, 2);
  const auto z = SparsePolynomial::variable(4, 3);
  return (1.0 - x1 * x2) * (1.0 - x1 * z) * (1.0 - x2 * z) - y * x1 * x2 * (1.0 - x1 * x2 * z * z);
}

// Numerator of the same generating function.
inline double pair_numerator(double x1, double x2, double z) {
  return (1.0 - x1 * x2) * (1.0 - x1 * z) * (1.0 - x2 * z);
}

inline const acsv::CriticalSystem& pair_system() {
  static const acsv::CriticalSystem system(pair_denominator());
  return system;
}

struct StickyCriticalPoint {
  double x = 0.0;  // x1* = x2*
  double y = 0.0;
  double z = 0.0;
  // Critical-system residuals at (x, x, y, z) in direction (1, 1, rho, delta).
  std::vector<double> residuals;

  double residual_norm() const { return acsv::max_norm(residuals); }
};

inline acsv::Direction pair_direction(double rho, double delta) {
  return acsv::Direction({1.0, 1.0, rho, delta});
}

// Closed-form positive solution of the critical-point system.
inline StickyCriticalPoint critical_point_closed_form(const StickyParams& p) {
  const double rho = p.rho();
  const double delta = p.delta();
  if (!(delta > 0.0)) throw DomainError("critical_point_closed_form: delta must be positive");
  if (!(2.0 - delta - 2.0 * rho > 0.0)) {
    throw DomainError("critical_point_closed_form: need 2 - delta - 2 rho > 0 (rho=" + detail::fmt(rho) +
                      ", delta=" + detail::fmt(delta) + ")");
  }
  const double root = std::hypot(rho, delta);
  StickyCriticalPoint cp;
  cp.x = std::sqrt(1.0 - 2.0 * rho / (2.0 - delta));
  cp.z = (root - rho) / (cp.x * delta);
  cp.y = 2.0 * (root - delta) / (2.0 - delta - 2.0 * rho);
  const std::vector<double> point{cp.x, cp.x, cp.y, cp.z};
  cp.residuals = pair_system().residual(pair_direction(rho, delta), point);
  return cp;
}

// -2 log x* - rho log y* - delta log z*: exponential rate of N(n, n, rho n, delta n).
inline double pair_exponent(const StickyParams& p) {
  const auto cp = critical_point_closed_form(p);
  return -2.0 * std::log2(cp.x) - p.rho() * std::log2(cp.y) - p.delta() * std::log2(cp.z);
}

inline double beta_max(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("beta_max: rho must lie in (0,1), got " + detail::fmt(rho));
  return (1.0 - rho) / (2.0 - rho);
}

inline double capacity_runs(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("capacity_runs: rho must lie in [0,1], got " + detail::fmt(rho));
  return entropy(rho);
}

// Explicit ball-rate formula of the unsaturated branch (no knee clamp).
// Requires beta > 0 and rho + beta < 1.
inline double ball_rate_closed_form(double rho, double beta) {
  const double root = std::hypot(rho, 2.0 * beta);
  return -rho + xlog2x(2.0 * beta) - rho * std::log2(root - 2.0 * beta) -
         2.0 * beta * std::log2(root - rho) +
         (-1.0 + rho + beta) * std::log2(2.0 - 2.0 * rho - 2.0 * beta) +
         (1.0 - beta) * std::log2(2.0 - 2.0 * beta);
}

// Asymptotic total-ball rate for radius delta = 2 beta.
inline Rate ball_rate(const StickyParams& p) {
  const double rho = p.rho();
  const double beta = p.beta();
  if (beta == 0.0) return {entropy(rho), {}};
  if (beta >= beta_max(rho)) return {2.0 * entropy(rho), Flag::Saturated};
  return {ball_rate_closed_form(rho, beta), {}};
}

// 2 H(rho) - ball rate at a fixed run density.
inline Rate gv_rate_at(const StickyParams& p) {
  const Rate ball = ball_rate(p);
  return floor_at_zero({2.0 * entropy(p.rho()) - ball.value, ball.flags});
}

struct GvResult {
  Rate rate;               // the reported bound (larger of the two candidates)
  double rho_star = 0.0;   // its maximizing run density
  double closed_form_rho = 0.0;  // (3(1-b) - sqrt(9b^2 - 2b + 1)) / 4
  double closed_form_rate = 0.0;
  double plus_sign_rho = 0.0;    // (3(1-b) + sqrt(9b^2 - 2b + 1)) / 4
  double plus_sign_rate = 0.0;
  double numeric_rho = 0.0;
  double numeric_rate = 0.0;
};

// GV lower bound on the sticky-insertion code rate, maximized over rho.
inline GvResult gv_rate(double beta) {
  if (!(beta >= 0.0 && beta <= 0.5)) throw DomainError("sticky gv_rate: beta must lie in [0, 1/2], got " + detail::fmt(beta));
  if (beta == 0.5) {
    // Every rho saturates; the bound is 0 in the rho -> 0 limit.
    GvResult edge;
    edge.rate = {0.0, Flag::Boundary};
    return edge;
  }
  const auto value_at = [beta](double rho) {
    if (!(rho > 0.0 && rho < 1.0)) return 0.0;
    return gv_rate_at(StickyParams(rho, beta)).value;
  };
  GvResult out;
  const double disc = std::sqrt(9.0 * beta * beta - 2.0 * beta + 1.0);
  out.closed_form_rho = (3.0 * (1.0 - beta) - disc) / 4.0;
  out.closed_form_rate = value_at(out.closed_form_rho);
  out.plus_sign_rho = (3.0 * (1.0 - beta) + disc) / 4.0;
  out.plus_sign_rate = value_at(out.plus_sign_rho);

  // Beyond (1 - 2b)/(1 - b) the ball is saturated and the bound is zero.
  constexpr double eps = 1e-12;
  const double rho_hi = std::min(1.0 - eps, (1.0 - 2.0 * beta) / (1.0 - beta));
  const Maximum m = maximize_unimodal(value_at, eps, rho_hi);
  out.numeric_rho = m.argmax;
  out.numeric_rate = m.value;

  if (out.numeric_rate > out.closed_form_rate) {
    out.rho_star = out.numeric_rho;
    out.rate = gv_rate_at(StickyParams(out.numeric_rho, beta));
  } else {
    out.rho_star = out.closed_form_rho;
    out.rate = gv_rate_at(StickyParams(out.closed_form_rho, beta));
  }
  return out;
}

// Sphere-packing upper bound (1 + 2b)(1 - H((1 + b)/(1 + 2b))), attained at rho = 1/2.
inline double sp_rate(double beta) {
  if (!(beta >= 0.0)) throw DomainError("sticky sp_rate: beta must be non-negative, got " + detail::fmt(beta));
  return (1.0 + 2.0 * beta) * (1.0 - entropy((1.0 + beta) / (1.0 + 2.0 * beta)));
}

// Optimal run density of the crude bound, (1 - 4b)/3, clamped at 0.
inline double simple_lb_rho(double beta) { return std::max(0.0, (1.0 - 4.0 * beta) / 3.0); }

// Lower bound from the crude ball estimate |T| <= 2^r C(d + r - 1, r - 1).
// For beta >= 1/4 the optimum sits at rho = 0, where the bound is 0.
inline Rate simple_lb_rate(double beta) {
  if (!(beta >= 0.0)) throw DomainError("sticky simple_lb_rate: beta must be non-negative, got " + detail::fmt(beta));
  if (beta == 0.0) return {std::log2(3.0) - 1.0, {}};
  if (beta >= 0.25) return {0.0, Flag::Boundary};
  const double value = 2.0 * beta - 1.0 - (1.0 + 2.0 * beta) * std::log2((1.0 + 2.0 * beta) / 3.0) +
                       2.0 * beta * std::log2(beta);
  return floor_at_zero({value, {}});
}

}  // namespace gvbound::sticky
