#pragma once

// Shared numeric primitives: binary entropy, guarded base-2 logarithms,
// exact binomials, bracketing root finders and a 1-D maximizer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gvbound/errors.hpp"

namespace gvbound {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kDefaultTolerance = 1e-12;

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace detail

// x * log2(x) with the 0 * log 0 = 0 convention.
inline double xlog2x(double x) {
  return x == 0.0 ? 0.0 : x * std::log2(x);
}

// Binary entropy in bits.
inline double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("entropy: probability must lie in [0,1], got " + detail::fmt(p));
  }
  return -xlog2x(p) - xlog2x(1.0 - p);
}

// log2 of a non-negative big integer; -inf for zero.
inline double log2_big(const BigInt& v) {
  if (v < 0) throw DomainError("log2_big: negative argument");
  if (v == 0) return -std::numeric_limits<double>::infinity();
  const std::size_t msb = boost::multiprecision::msb(v);
  if (msb < 53) return std::log2(v.convert_to<double>());
  const std::size_t shift = msb - 52;
  const BigInt top = v >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

// n choose k, exact.
inline BigInt binomial_exact(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("binomial_exact: need 0 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

struct BracketedRoot {
  double root = 0.0;
  double residual = 0.0;  // |f(root)|
  double lo = 0.0;
  double hi = 0.0;
};

// Bisection on [lo, hi]. Stops once the bracket is narrower than tol and
// |f(mid)| <= tol, or when f vanishes exactly at a probe.
inline BracketedRoot find_root_bisection(const std::function<double(double)>& f, double lo,
                                         double hi, double tol = kDefaultTolerance,
                                         int max_iterations = 400) {
  if (!(tol > 0.0)) throw DomainError("find_root_bisection: tol must be positive");
  if (!(lo < hi)) throw DomainError("find_root_bisection: need lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, lo, hi};
  if (fhi == 0.0) return {hi, 0.0, lo, hi};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSignChange("find_root_bisection: f has the same sign at " + detail::fmt(lo) +
                       " and " + detail::fmt(hi));
  }
  const double lo0 = lo;
  const double hi0 = hi;
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0, lo0, hi0};
    const bool tight = (hi - lo) <= tol;
    if ((tight && std::abs(fm) <= tol) || mid == lo || mid == hi) {
      if (std::abs(fm) > tol) {
        throw NonConvergence("find_root_bisection: bracket exhausted with |f| = " +
                             detail::fmt(std::abs(fm)));
      }
      return {mid, std::abs(fm), lo0, hi0};
    }
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw NonConvergence("find_root_bisection: no convergence after " +
                       std::to_string(max_iterations) + " iterations");
}

// Dense univariate polynomial, constant term first.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  RealPolynomial(std::initializer_list<double> coefficients) : c_(coefficients) { trim(); }
  explicit RealPolynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
    trim();
  }

  static RealPolynomial monomial(int degree, double coefficient = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coefficient;
    return RealPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }

  double operator()(double y) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
    return acc;
  }

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return RealPolynomial(std::move(c));
  }
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
    return a + b * -1.0;
  }
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RealPolynomial(std::move(c));
  }
  friend RealPolynomial operator*(const RealPolynomial& a, double s) {
    std::vector<double> c = a.c_;
    for (double& v : c) v *= s;
    return RealPolynomial(std::move(c));
  }
  friend RealPolynomial operator*(double s, const RealPolynomial& a) { return a * s; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

inline constexpr int kMaxScanHalvings = 10;

// Smallest positive real root of p on (0, scan_max]. The grid starts at
// scan_max/1024 and halves until a sign change shows up, the step drops below
// tol, or kMaxScanHalvings refinements have been tried (the finest grid has
// 2^20 cells); the leftmost bracket is then bisected.
inline BracketedRoot smallest_positive_root(const RealPolynomial& p, double scan_max,
                                            double tol = kDefaultTolerance) {
  if (p.is_zero()) throw DomainError("smallest_positive_root: polynomial is identically zero");
  if (!(scan_max > 0.0)) throw DomainError("smallest_positive_root: scan_max must be positive");
  const auto f = [&p](double y) { return p(y); };
  double step = scan_max / 1024.0;
  for (int level = 0; level <= kMaxScanHalvings && step >= tol; ++level, step *= 0.5) {
    double prev_y = 0.0;
    double prev_v = p(0.0);
    const auto points = static_cast<std::int64_t>(std::ceil(scan_max / step));
    for (std::int64_t k = 1; k <= points; ++k) {
      const double y = std::min(scan_max, static_cast<double>(k) * step);
      const double v = p(y);
      if (v == 0.0) return {y, 0.0, prev_y, y};
      if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
        return find_root_bisection(f, prev_y, y, tol);
      }
      prev_y = y;
      prev_v = v;
    }
  }
  throw NoRootFound("smallest_positive_root: no sign change on (0, " + detail::fmt(scan_max) +
                    "]");
}

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

// Maximizer of a unimodal function on [lo, hi] (Brent's golden-section /
// parabolic hybrid). The endpoints are also evaluated so that a monotone
// objective reports its boundary maximum.
inline Maximum maximize_unimodal(const std::function<double(double)>& f, double lo, double hi) {
  if (!(lo <= hi)) throw DomainError("maximize_unimodal: need lo <= hi");
  Maximum best{lo, f(lo)};
  if (const double fh = f(hi); fh > best.value) best = {hi, fh};
  if (lo == hi) return best;
  const auto neg = [&f](double x) { return -f(x); };
  boost::uintmax_t iterations = 500;
  const auto [x, fx] = boost::math::tools::brent_find_minima(
      neg, lo, hi, std::numeric_limits<double>::digits, iterations);
  if (-fx >= best.value) best = {x, -fx};
  return best;
}

}  // namespace gvbound
