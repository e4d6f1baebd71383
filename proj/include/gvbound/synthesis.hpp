#pragma once

// Constrained-synthesis channel. Strands over {A,C,G,T} are produced as
// subsequences of the periodic supersequence ACGTACGT...; a strand's
// synthesis time is the number of supersequence positions consumed. Codes
// are sets of strands with bounded time and pairwise Hamming distance.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gvbound/acsv.hpp"
#include "gvbound/count.hpp"
#include "gvbound/errors.hpp"
#include "gvbound/numeric.hpp"
#include "gvbound/polynomial.hpp"
#include "gvbound/rate.hpp"

namespace gvbound::synthesis {

inline constexpr std::string_view kAlphabet = "ACGT";

// Rank of a nucleotide in the supersequence period: A=1, C=2, G=3, T=4.
inline int rank_of(char c) {
  const auto pos = kAlphabet.find(c);
  if (pos == std::string_view::npos) throw DomainError(std::string("strand: invalid nucleotide '") + c + "'");
  return static_cast<int>(pos) + 1;
}

class Strand {
 public:
  Strand() = default;
  explicit Strand(std::string symbols) : symbols_(std::move(symbols)) {
    for (char c : symbols_) rank_of(c);
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  char operator[](std::size_t i) const { return symbols_[i]; }
  const std::string& str() const { return symbols_; }

  friend bool operator==(const Strand&, const Strand&) = default;

 private:
  std::string symbols_;
};

// Cycles spent between the previous symbol (rank prev, 0 before the first)
// and the next one: the cyclic gap in A<C<G<T order, in {1, 2, 3, 4}.
inline int step_cost(int prev_rank, int rank) { return ((rank - prev_rank - 1) % 4 + 4) % 4 + 1; }

inline int synthesis_time(const Strand& w) {
  if (w.empty()) throw DomainError("synthesis_time: empty strand");
  int prev = 0;
  int t = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int r = rank_of(w[i]);
    t += step_cost(prev, r);
    prev = r;
  }
  return t;
}

// First `cycles` symbols of ACGTACGT...
inline std::string alternating_supersequence(int cycles) {
  std::string s;
  s.reserve(static_cast<std::size_t>(std::max(cycles, 0)));
  for (int i = 0; i < cycles; ++i) s.push_back(kAlphabet[static_cast<std::size_t>(i % 4)]);
  return s;
}

// Whether w is a subsequence of the first `cycles` supersequence symbols.
inline bool is_producible(const Strand& w, int cycles) {
  const std::string s = alternating_supersequence(cycles);
  std::size_t j = 0;
  for (char c : s) {
    if (j < w.size() && w[j] == c) ++j;
  }
  return j == w.size();
}

inline int hamming_distance(const Strand& u, const Strand& v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("hamming_distance: strands have lengths " + std::to_string(u.size()) +
                            " and " + std::to_string(v.size()));
  }
  int d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

// Number of length-n strands with synthesis time exactly t, for t = 0..4n.
inline std::vector<BigInt> count_words_by_time(int n) {
  if (n < 0) throw DomainError("count_words_by_time: n must be non-negative");
  std::vector<BigInt> cur(1, BigInt{1});
  for (int k = 1; k <= n; ++k) {
    std::vector<BigInt> next(static_cast<std::size_t>(4 * k) + 1);
    for (std::size_t t = 0; t < cur.size(); ++t) {
      if (cur[t] == 0) continue;
      for (std::size_t i = 1; i <= 4; ++i) next[t + i] += cur[t];
    }
    cur = std::move(next);
  }
  return cur;
}

// |S(n, <= t_max)|.
inline BigInt count_words_exact(int n, std::int64_t t_max) {
  const auto by_time = count_words_by_time(n);
  BigInt total = 0;
  for (std::size_t t = 0; t < by_time.size() && static_cast<std::int64_t>(t) <= t_max; ++t) total += by_time[t];
  return total;
}

// ---------------------------------------------------------------------------
// Pair counting
//
// N(n, t, s) counts ordered strand pairs (u, v) of length n whose synthesis
// times sum to t and whose Hamming distance is s.

template <CountValue V>
class TimeDistanceGrid {
 public:
  TimeDistanceGrid(int t_max, int s_max)
      : t_(t_max + 1), s_(s_max + 1), cells_(static_cast<std::size_t>(t_) * s_) {}

  int t_max() const { return t_ - 1; }
  int s_max() const { return s_ - 1; }

  V& at(int t, int s) { return cells_[static_cast<std::size_t>(t) * s_ + s]; }
  const V& at(int t, int s) const { return cells_[static_cast<std::size_t>(t) * s_ + s]; }
  V get(int t, int s) const {
    if (t < 0 || s < 0 || t >= t_ || s >= s_) return V{};
    return at(t, s);
  }

  // Sum over t <= t_hi and s <= s_hi.
  V ball(int t_hi, int s_hi) const {
    V total{};
    for (int t = 0; t <= std::min(t_hi, t_max()); ++t)
      for (int s = 0; s <= std::min(s_hi, s_max()); ++s) total += at(t, s);
    return total;
  }
  V sum() const { return ball(t_max(), s_max()); }

 private:
  int t_, s_;
  std::vector<V> cells_;
};

struct PairCaps {
  int n_max = 0;
  int t_cap = -1;  // defaults to 8 n_max
  int s_cap = -1;  // defaults to n_max
};

namespace detail {

inline PairCaps resolve(PairCaps caps) {
  if (caps.n_max < 0) throw DomainError("synthesis pair counting: n must be non-negative");
  if (caps.t_cap < 0) caps.t_cap = 8 * caps.n_max;
  if (caps.s_cap < 0) caps.s_cap = caps.n_max;
  return caps;
}

inline void check_budget(const PairCaps& caps, std::size_t states, std::size_t budget) {
  const std::size_t cells = 2 * states * static_cast<std::size_t>(caps.t_cap + 1) * (caps.s_cap + 1);
  if (cells > budget) {
    throw ResourceLimit("synthesis pair counting: " + std::to_string(cells) +
                        " cells exceed the budget of " + std::to_string(budget));
  }
}

}  // namespace detail

// Strand-pair DP. The state carries the offset (rank(u_last) - rank(v_last))
// mod 4; appending symbols with costs i and j moves it to offset + i - j, and
// the new symbols coincide exactly when that offset is 0. Entries beyond the
// caps are dropped; since t and s never decrease this leaves every entry
// inside the caps exact. Calls fn(n, grid) for n = 0..n_max.
template <CountValue V, typename Fn>
void for_each_length(PairCaps caps, Fn&& fn, std::size_t cell_budget = kDefaultCellBudget) {
  caps = detail::resolve(caps);
  detail::check_budget(caps, 4, cell_budget);
  const int T = caps.t_cap;
  const int S = caps.s_cap;
  std::array<TimeDistanceGrid<V>, 4> cur{TimeDistanceGrid<V>(T, S), TimeDistanceGrid<V>(T, S),
                                         TimeDistanceGrid<V>(T, S), TimeDistanceGrid<V>(T, S)};
  cur[0].at(0, 0) = V{std::uint64_t{1}};
  const auto emit = [&](int n) {
    TimeDistanceGrid<V> total(T, S);
    for (const auto& g : cur)
      for (int t = 0; t <= T; ++t)
        for (int s = 0; s <= S; ++s) total.at(t, s) += g.at(t, s);
    fn(n, std::as_const(total));
  };
  emit(0);
  for (int n = 1; n <= caps.n_max; ++n) {
    std::array<TimeDistanceGrid<V>, 4> next{TimeDistanceGrid<V>(T, S), TimeDistanceGrid<V>(T, S),
                                            TimeDistanceGrid<V>(T, S), TimeDistanceGrid<V>(T, S)};
    for (int d = 0; d < 4; ++d) {
      for (int t = 0; t <= T; ++t) {
        for (int s = 0; s <= S; ++s) {
          const V& c = cur[static_cast<std::size_t>(d)].at(t, s);
          if constexpr (CountTraits<V>::mode == CountMode::Exact) {
            if (c == 0) continue;
          } else {
            if (c.is_zero()) continue;
          }
          for (int i = 1; i <= 4; ++i) {
            for (int j = 1; j <= 4; ++j) {
              const int d2 = ((d + i - j) % 4 + 4) % 4;
              const int t2 = t + i + j;
              const int s2 = s + (d2 != 0 ? 1 : 0);
              if (t2 > T || s2 > S) continue;
              next[static_cast<std::size_t>(d2)].at(t2, s2) += c;
            }
          }
        }
      }
    }
    cur = std::move(next);
    emit(n);
  }
}

// Cost-sequence pair DP:
//   M(n, t, s) = sum_i M(n-1, t-2i, s) + 2 sum_{i<j} M(n-1, t-i-j, s-1).
// A strand is in bijection with its sequence of per-symbol cycle costs, and
// this recursion counts pairs of cost sequences by how many positions carry
// different costs. Its generating function is 1 / H with H the synthesis
// pair denominator below, so the analytic rates describe M. It agrees with
// N for n <= 1 and for sums over s; the s-profiles differ for n >= 2.
template <CountValue V, typename Fn>
void for_each_length_cost_pairs(PairCaps caps, Fn&& fn, std::size_t cell_budget = kDefaultCellBudget) {
  caps = detail::resolve(caps);
  detail::check_budget(caps, 1, cell_budget);
  const int T = caps.t_cap;
  const int S = caps.s_cap;
  TimeDistanceGrid<V> cur(T, S);
  cur.at(0, 0) = V{std::uint64_t{1}};
  fn(0, std::as_const(cur));
  for (int n = 1; n <= caps.n_max; ++n) {
    TimeDistanceGrid<V> next(T, S);
    for (int t = 0; t <= T; ++t) {
      for (int s = 0; s <= S; ++s) {
        V v{};
        for (int i = 1; i <= 4; ++i) v += cur.get(t - 2 * i, s);
        for (int i = 1; i <= 3; ++i)
          for (int j = i + 1; j <= 4; ++j) v += cur.get(t - i - j, s - 1) * std::uint64_t{2};
        next.at(t, s) = std::move(v);
      }
    }
    cur = std::move(next);
    fn(n, std::as_const(cur));
  }
}

template <CountValue V>
TimeDistanceGrid<V> pair_counts(int n, std::size_t cell_budget = kDefaultCellBudget) {
  TimeDistanceGrid<V> out(0, 0);
  for_each_length<V>(PairCaps{n}, [&](int k, const TimeDistanceGrid<V>& g) { if (k == n) out = g; },
                     cell_budget);
  return out;
}

template <CountValue V>
TimeDistanceGrid<V> cost_pair_counts(int n, std::size_t cell_budget = kDefaultCellBudget) {
  TimeDistanceGrid<V> out(0, 0);
  for_each_length_cost_pairs<V>(PairCaps{n}, [&](int k, const TimeDistanceGrid<V>& g) { if (k == n) out = g; },
                                cell_budget);
  return out;
}

inline BigInt count_pairs_exact(int n, int t, int s) {
  if (n < 0 || t < 0 || s < 0) return 0;
  return pair_counts<BigInt>(n).get(t, s);
}

inline BigInt count_cost_pairs(int n, int t, int s) {
  if (n < 0 || t < 0 || s < 0) return 0;
  return cost_pair_counts<BigInt>(n).get(t, s);
}

// Enumeration oracle: every (t, s) bucket of Sigma^n x Sigma^n.
inline std::map<std::pair<int, int>, std::uint64_t> pair_buckets_bruteforce(int n) {
  if (n < 0) throw DomainError("pair_buckets_bruteforce: n must be non-negative");
  if (n > 6) throw SizeLimit("pair_buckets_bruteforce: 4^n exceeds 4096");
  std::vector<std::string> words{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> grown;
    for (const auto& w : words)
      for (char c : kAlphabet) grown.push_back(w + c);
    words = std::move(grown);
  }
  std::vector<int> times;
  times.reserve(words.size());
  for (const auto& w : words) times.push_back(n == 0 ? 0 : synthesis_time(Strand(w)));
  std::map<std::pair<int, int>, std::uint64_t> buckets;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      int d = 0;
      for (int i = 0; i < n; ++i) d += words[a][static_cast<std::size_t>(i)] != words[b][static_cast<std::size_t>(i)];
      ++buckets[{times[a] + times[b], d}];
    }
  }
  return buckets;
}

inline BigInt count_pairs_bruteforce(int n, int t, int s) {
  const auto buckets = pair_buckets_bruteforce(n);
  const auto it = buckets.find({t, s});
  return it == buckets.end() ? BigInt{0} : BigInt{it->second};
}

// ---------------------------------------------------------------------------
// Asymptotics

// Denominator of sum_n sum_t |S(n, =t)| x^n y^t: 1 - x (y + y^2 + y^3 + y^4).
inline SparsePolynomial word_denominator() {
  const auto x = SparsePolynomial::variable(2, 0);
  const auto y = SparsePolynomial::variable(2, 1);
  return 1.0 - x * (y + y * y + y * y * y + y * y * y * y);
}

// Denominator of sum M(n, t, s) x^n y^t z^s in variables (x, y, z):
// 1 - x y^2 (1 + y^2)((1 + y^4) + 2 z y (1 + y + y^2)).
inline SparsePolynomial pair_denominator() {
  const auto x = SparsePolynomial::variable(3, 0);
  const auto y = SparsePolynomial::variable(3, 1);
  const auto z = SparsePolynomial::variable(3, 2);
  const auto y2 = y * y;
  const auto y4 = y2 * y2;
  return 1.0 - x * y2 * (1.0 + y2) * ((1.0 + y4) + 2.0 * z * y * (1.0 + y + y2));
}

inline const acsv::CriticalSystem& pair_system() {
  static const acsv::CriticalSystem system(pair_denominator());
  return system;
}

inline constexpr double kRootScanMax = 10.0;
inline constexpr double kCapacityKnee = 2.5;

struct CapacityPoint {
  double x = 0.0;
  double y = 0.0;
};

// Critical point of the single-strand generating function for time density
// tau < 5/2: y is the positive root of (4-tau)y^3 + (3-tau)y^2 + (2-tau)y + (1-tau).
inline CapacityPoint capacity_point(double tau, double tol = kDefaultTolerance) {
  if (!(tau > 1.0 && tau < kCapacityKnee)) {
    throw DomainError("capacity_point: tau must lie in (1, 5/2), got " + gvbound::detail::fmt(tau));
  }
  const RealPolynomial cubic{1.0 - tau, 2.0 - tau, 3.0 - tau, 4.0 - tau};
  const double y = smallest_positive_root(cubic, kRootScanMax, tol).root;
  return {1.0 / (y + y * y + y * y * y + y * y * y * y), y};
}

// Capacity of strands with time budget tau * n, in bits per symbol.
inline double capacity(double tau, double tol = kDefaultTolerance) {
  if (!(tau > 1.0)) throw DomainError("synthesis capacity: tau must exceed 1, got " + gvbound::detail::fmt(tau));
  if (tau >= kCapacityKnee) return 2.0;
  const auto cp = capacity_point(tau, tol);
  return -std::log2(cp.x) - tau * std::log2(cp.y);
}

struct SynthesisCriticalPoint {
  double x_hat = 0.0;
  double y_hat = 0.0;
  double z_hat = 0.0;
  double time_density = 0.0;  // time coordinate of the pair direction
  double delta = 0.0;
  std::vector<double> residuals;  // critical system at (x, y, z), direction (1, time_density, delta)

  double residual_norm() const { return acsv::max_norm(residuals); }
};

// Polynomial whose smallest positive root is y-hat for pair direction
// (1, time_density, delta):
//   time_density (1+y^2)(1+y^4)(1+y+y^2) - 2(1+y+y^2)(1+2y^2+3y^4+4y^6)
//     - delta (1-y^4)(1+2y+4y^2+2y^3+y^4).
inline RealPolynomial y_hat_polynomial(double time_density, double delta) {
  const RealPolynomial a{1.0, 0.0, 1.0};                  // 1 + y^2
  const RealPolynomial b{1.0, 0.0, 0.0, 0.0, 1.0};        // 1 + y^4
  const RealPolynomial c{1.0, 1.0, 1.0};                  // 1 + y + y^2
  const RealPolynomial d{1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0};
  const RealPolynomial e{1.0, 0.0, 0.0, 0.0, -1.0};       // 1 - y^4
  const RealPolynomial f{1.0, 2.0, 4.0, 2.0, 1.0};
  return time_density * (a * b * c) - 2.0 * (c * d) - delta * (e * f);
}

// Critical point of the pair denominator in direction (1, time_density, delta).
inline SynthesisCriticalPoint pair_critical_point(double time_density, double delta,
                                                  double tol = kDefaultTolerance) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("pair_critical_point: delta must lie in (0,1), got " + gvbound::detail::fmt(delta));
  }
  if (!(time_density > 2.0)) {
    throw DomainError("pair_critical_point: time density must exceed 2, got " + gvbound::detail::fmt(time_density));
  }
  const double y = smallest_positive_root(y_hat_polynomial(time_density, delta), kRootScanMax, tol).root;
  const double y2 = y * y;
  const double y4 = y2 * y2;
  SynthesisCriticalPoint cp;
  cp.y_hat = y;
  cp.x_hat = (1.0 - delta) / (y2 * (1.0 + y2) * (1.0 + y4));
  cp.z_hat = delta * (1.0 + y4) / (2.0 * (1.0 - delta) * y * (1.0 + y + y2));
  cp.time_density = time_density;
  cp.delta = delta;
  const std::vector<double> point{cp.x_hat, cp.y_hat, cp.z_hat};
  cp.residuals = pair_system().residual(acsv::Direction({1.0, time_density, delta}), point);
  return cp;
}

// Channel-level critical point: strand pairs with combined time 2 tau n.
inline SynthesisCriticalPoint critical_point(double tau, double delta, double tol = kDefaultTolerance) {
  if (!(tau > 1.0 && tau < kCapacityKnee)) {
    throw DomainError("synthesis critical_point: tau must lie in (1, 5/2), got " + gvbound::detail::fmt(tau));
  }
  return pair_critical_point(2.0 * tau, delta, tol);
}

struct DeltaMax {
  double delta_max = 0.0;
  double y_min = 0.0;
};

// Radius density at which z-hat reaches 1 and the ball rate saturates at 2 Cap(tau).
// y_min is the smallest positive root of
//   y (1-y^4)(y^4+2y^3+4y^2+2y+1)
//     - (tau (1+y^2)(1+y^4) - (4y^6+3y^4+2y^2+1)) ((1+y^4) + 2y(1+y+y^2)).
inline DeltaMax delta_max(double tau, double tol = kDefaultTolerance) {
  if (!(tau > 1.0 && tau < kCapacityKnee)) {
    throw DomainError("delta_max: tau must lie in (1, 5/2), got " + gvbound::detail::fmt(tau));
  }
  const RealPolynomial y{0.0, 1.0};
  const RealPolynomial e{1.0, 0.0, 0.0, 0.0, -1.0};
  const RealPolynomial f{1.0, 2.0, 4.0, 2.0, 1.0};
  const RealPolynomial a{1.0, 0.0, 1.0};
  const RealPolynomial b{1.0, 0.0, 0.0, 0.0, 1.0};
  const RealPolynomial d{1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0};
  const RealPolynomial g{1.0, 2.0, 2.0, 2.0, 1.0};  // (1+y^4) + 2y(1+y+y^2)
  const RealPolynomial q = y * e * f - (tau * (a * b) - d) * g;
  const double ym = smallest_positive_root(q, kRootScanMax, tol).root;
  const double lin = 2.0 * ym * (1.0 + ym + ym * ym);
  return {lin / (1.0 + ym * ym * ym * ym + lin), ym};
}

// Upper bound on the total-ball rate T(tau, delta) of strand pairs.
inline Rate ball_rate_upper(double tau, double delta, double tol = kDefaultTolerance) {
  if (!(tau > 1.0)) throw DomainError("ball_rate_upper: tau must exceed 1, got " + gvbound::detail::fmt(tau));
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("ball_rate_upper: delta must lie in [0,1], got " + gvbound::detail::fmt(delta));
  }
  Rate out{0.0, Flag::UpperBound};
  if (tau >= kCapacityKnee) {
    if (delta <= 0.75) {
      out.value = 2.0 + entropy(delta) + delta * std::log2(3.0);
    } else {
      out.value = 4.0;
      out.flags.set(Flag::Saturated);
    }
    return out;
  }
  const double cap = capacity(tau, tol);
  if (delta == 0.0) {
    out.value = cap;
    return out;
  }
  if (delta >= delta_max(tau, tol).delta_max) {
    out.value = 2.0 * cap;
    out.flags.set(Flag::Saturated);
    return out;
  }
  const auto cp = critical_point(tau, delta, tol);
  out.value = -std::log2(cp.x_hat) - 2.0 * tau * std::log2(cp.y_hat) - delta * std::log2(cp.z_hat);
  return out;
}

// GV lower bound 2 Cap(tau) - T(tau, delta), floored at 0.
inline Rate gv_rate(double tau, double delta, double tol = kDefaultTolerance) {
  const Rate ball = ball_rate_upper(tau, delta, tol);
  return floor_at_zero({2.0 * capacity(tau, tol) - ball.value, ball.flags});
}

// Crude lower bound Cap(tau) - H(delta) - delta log2 3, floored at 0. The
// Hamming-ball exponent H(delta) + delta log2 3 peaks at delta = 3/4, where the
// ball already holds all 4^n strands; beyond it the exponent stays at 2.
inline Rate simple_lb_rate(double tau, double delta, double tol = kDefaultTolerance) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("synthesis simple_lb_rate: delta must lie in [0,1], got " + gvbound::detail::fmt(delta));
  }
  const double ball = delta <= 0.75 ? entropy(delta) + delta * std::log2(3.0) : 2.0;
  return floor_at_zero({capacity(tau, tol) - ball, {}});
}

}  // namespace gvbound::synthesis
