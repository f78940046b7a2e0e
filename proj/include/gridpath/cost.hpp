#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace gridpath {

inline constexpr double kSqrt2 = 1.41421356237309504880;

// Exact path cost on an 8-connected uniform grid: `cardinals` unit moves plus
// `diagonals` moves of length sqrt(2). Ordering never goes through floating
// point, so ties between costs are detected exactly.
struct Cost {
  std::int32_t cardinals = 0;
  std::int32_t diagonals = 0;

  static constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

  constexpr Cost() = default;
  constexpr Cost(std::int32_t c, std::int32_t d) : cardinals(c), diagonals(d) {}

  static constexpr Cost infinity() { return Cost(kInf, kInf); }
  static constexpr Cost straight(std::int32_t n) { return Cost(n, 0); }
  static constexpr Cost diagonal(std::int32_t n) { return Cost(0, n); }

  constexpr bool is_infinite() const { return cardinals == kInf; }
  constexpr bool is_finite() const { return cardinals != kInf; }

  double value() const {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return cardinals + diagonals * kSqrt2;
  }

  friend constexpr Cost operator+(Cost a, Cost b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Cost(a.cardinals + b.cardinals, a.diagonals + b.diagonals);
  }
  constexpr Cost& operator+=(Cost b) { return *this = *this + b; }

  friend constexpr bool operator==(Cost a, Cost b) {
    return a.cardinals == b.cardinals && (a.is_infinite() || a.diagonals == b.diagonals);
  }

  friend constexpr std::strong_ordering operator<=>(Cost a, Cost b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    // a < b  <=>  (ca - cb) < (db - da) * sqrt(2)
    const std::int64_t lhs = std::int64_t{a.cardinals} - b.cardinals;
    const std::int64_t rhs = std::int64_t{b.diagonals} - a.diagonals;
    if (rhs == 0) return lhs <=> 0;
    if (lhs == 0) return rhs > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (lhs < 0 && rhs > 0) return std::strong_ordering::less;
    if (lhs > 0 && rhs < 0) return std::strong_ordering::greater;
    // Same sign: compare squares. sqrt(2) is irrational, so no equality here.
    const __int128 l2 = static_cast<__int128>(lhs) * lhs;
    const __int128 r2 = 2 * static_cast<__int128>(rhs) * rhs;
    if (lhs > 0) return l2 < r2 ? std::strong_ordering::less : std::strong_ordering::greater;
    return l2 > r2 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

inline std::ostream& operator<<(std::ostream& os, Cost c) {
  if (c.is_infinite()) return os << "inf";
  return os << "(" << c.cardinals << "," << c.diagonals << ")";
}

}  // namespace gridpath
