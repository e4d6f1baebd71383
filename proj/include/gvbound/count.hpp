#pragma once

// Count representations shared by the pair-counting dynamic programs: exact
// big integers, or base-2 logarithms accumulated with log-sum-exp.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>

#include "gvbound/numeric.hpp"

namespace gvbound {

enum class CountMode { Exact, Log2 };

// A non-negative count stored as its base-2 logarithm; the default value is
// zero (log = -inf).
class Log2Count {
 public:
  Log2Count() = default;
  explicit Log2Count(std::uint64_t count)
      : log2_(count == 0 ? kNegInf : std::log2(static_cast<double>(count))) {}

  static Log2Count from_log2(double value) {
    Log2Count c;
    c.log2_ = value;
    return c;
  }

  double log2() const { return log2_; }
  bool is_zero() const { return log2_ == kNegInf; }

  Log2Count& operator+=(const Log2Count& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) {
      log2_ = other.log2_;
      return *this;
    }
    const double hi = std::max(log2_, other.log2_);
    const double lo = std::min(log2_, other.log2_);
    log2_ = hi + std::log2(1.0 + std::exp2(lo - hi));
    return *this;
  }
  friend Log2Count operator+(Log2Count a, const Log2Count& b) { return a += b; }
  friend Log2Count operator*(Log2Count a, std::uint64_t k) {
    if (k == 0) return Log2Count{};
    if (!a.is_zero()) a.log2_ += std::log2(static_cast<double>(k));
    return a;
  }

 private:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double log2_ = kNegInf;
};

template <typename V>
concept CountValue = requires(V a, const V b, std::uint64_t k) {
  V{};
  V{std::uint64_t{1}};
  a += b;
  { b * k } -> std::convertible_to<V>;
};

template <CountValue V>
struct CountTraits;

template <>
struct CountTraits<BigInt> {
  static constexpr CountMode mode = CountMode::Exact;
  static double log2(const BigInt& v) { return log2_big(v); }
};

template <>
struct CountTraits<Log2Count> {
  static constexpr CountMode mode = CountMode::Log2;
  static double log2(const Log2Count& v) { return v.log2(); }
};

template <CountValue V>
double count_log2(const V& v) {
  return CountTraits<V>::log2(v);
}

// Default cap on the number of cells a DP may allocate at once.
inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 26;

}  // namespace gvbound
