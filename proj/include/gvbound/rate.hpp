#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gvbound {

// Provenance of a rate value: which branch of a piecewise formula produced
// it and whether it was clamped.
enum class Flag : std::uint8_t {
  Saturated = 1u << 0,   // radius beyond the knee; ball rate = 2 * capacity
  Floored = 1u << 1,     // negative bound clamped to zero
  UpperBound = 1u << 2,  // value is an upper bound on the true ball rate
  Boundary = 1u << 3,    // optimizer pinned at the edge of its domain
};

class Flags {
 public:
  constexpr Flags() = default;
  constexpr Flags(Flag f) : bits_(static_cast<std::uint8_t>(f)) {}  // NOLINT(implicit)

  constexpr bool has(Flag f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr Flags& set(Flag f) {
    bits_ |= static_cast<std::uint8_t>(f);
    return *this;
  }
  constexpr Flags& operator|=(Flags o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr Flags operator|(Flags a, Flags b) { return a |= b; }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr bool operator==(Flags, Flags) = default;

  // Semicolon-joined token list, e.g. "saturated;floored".
  std::string to_string() const {
    std::string out;
    const auto add = [&out](const char* token) {
      if (!out.empty()) out += ';';
      out += token;
    };
    if (has(Flag::Saturated)) add("saturated");
    if (has(Flag::Floored)) add("floored");
    if (has(Flag::UpperBound)) add("upper-bound");
    if (has(Flag::Boundary)) add("boundary");
    return out;
  }

  // Inverse of to_string; unknown tokens are rejected.
  static Flags parse(std::string_view text) {
    Flags f;
    while (!text.empty()) {
      const auto cut = text.find(';');
      const std::string_view token = text.substr(0, cut);
      if (token == "saturated") f.set(Flag::Saturated);
      else if (token == "floored") f.set(Flag::Floored);
      else if (token == "upper-bound") f.set(Flag::UpperBound);
      else if (token == "boundary") f.set(Flag::Boundary);
      else if (!token.empty()) throw std::invalid_argument("unknown flag token '" + std::string(token) + "'");
      if (cut == std::string_view::npos) break;
      text.remove_prefix(cut + 1);
    }
    return f;
  }

 private:
  std::uint8_t bits_ = 0;
};

struct Rate {
  double value = 0.0;
  Flags flags;
};

// max(value, 0), recording the clamp.
inline Rate floor_at_zero(Rate r) {
  if (r.value < 0.0) {
    r.value = 0.0;
    r.flags.set(Flag::Floored);
  }
  return r;
}

}  // namespace gvbound
