#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "gridpath/cost.hpp"

namespace gridpath {

// x is the column (grows east), y is the row (grows south).
struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Coord, Coord) = default;
  friend constexpr auto operator<=>(Coord a, Coord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline std::ostream& operator<<(std::ostream& os, Coord c) {
  return os << "(" << c.x << "," << c.y << ")";
}

// Clockwise from north; odd values are diagonals.
enum class Direction : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Direction, 8> kAllDirections = {
    Direction::N, Direction::NE, Direction::E, Direction::SE,
    Direction::S, Direction::SW, Direction::W, Direction::NW};
inline constexpr std::array<Direction, 4> kCardinals = {Direction::N, Direction::E,
                                                        Direction::S, Direction::W};
inline constexpr std::array<Direction, 4> kDiagonals = {Direction::NE, Direction::SE,
                                                        Direction::SW, Direction::NW};

// Incoming direction of a search node; nullopt marks the start node.
using Incoming = std::optional<Direction>;
inline constexpr Incoming kStart = std::nullopt;

constexpr int index(Direction d) { return static_cast<int>(d); }
constexpr Direction direction_from_index(int i) { return static_cast<Direction>(i & 7); }
constexpr bool is_diagonal(Direction d) { return (index(d) & 1) != 0; }
constexpr Direction opposite(Direction d) { return direction_from_index(index(d) + 4); }
constexpr Direction rotate(Direction d, int eighths) {
  return direction_from_index(index(d) + eighths + 8);
}

constexpr int dx(Direction d) {
  constexpr std::array<int, 8> table = {0, 1, 1, 1, 0, -1, -1, -1};
  return table[index(d)];
}
constexpr int dy(Direction d) {
  constexpr std::array<int, 8> table = {-1, -1, 0, 1, 1, 1, 0, -1};
  return table[index(d)];
}

constexpr Coord step(Coord c, Direction d, int n = 1) {
  return Coord{c.x + n * dx(d), c.y + n * dy(d)};
}

// The two cardinals of a diagonal (counter-clockwise one first); a cardinal
// decomposes into itself.
struct Components {
  Direction first;
  Direction second;
  int count;
};
constexpr Components components(Direction d) {
  if (is_diagonal(d)) return {rotate(d, -1), rotate(d, 1), 2};
  return {d, d, 1};
}

constexpr Direction diagonal_of(Direction a, Direction b) {
  // a and b are perpendicular cardinals
  const int ia = index(a), ib = index(b);
  return ((ia + 2) & 7) == ib ? direction_from_index(ia + 1) : direction_from_index(ib + 1);
}

std::string_view name(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

// Set of directions, bit i = direction index i.
class DirSet {
 public:
  constexpr DirSet() = default;
  constexpr explicit DirSet(std::uint8_t bits) : bits_(bits) {}
  constexpr DirSet(std::initializer_list<Direction> ds) {
    for (Direction d : ds) insert(d);
  }

  constexpr bool contains(Direction d) const { return (bits_ >> index(d)) & 1u; }
  constexpr void insert(Direction d) { bits_ |= static_cast<std::uint8_t>(1u << index(d)); }
  constexpr void erase(Direction d) { bits_ &= static_cast<std::uint8_t>(~(1u << index(d))); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return __builtin_popcount(bits_); }
  constexpr std::uint8_t bits() const { return bits_; }

  friend constexpr DirSet operator&(DirSet a, DirSet b) { return DirSet(a.bits_ & b.bits_); }
  friend constexpr DirSet operator|(DirSet a, DirSet b) { return DirSet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(DirSet, DirSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

std::ostream& operator<<(std::ostream& os, DirSet s);

// Traversability grid backed by a cell array plus two blocked-bit arrays, one
// row-major and one column-major. Both bit arrays carry kPad bits of blocked
// padding on each side of every line and a fully blocked line beyond each
// edge, so word windows never read outside the allocation.
class GridMap {
 public:
  static constexpr int kWordBits = 64;
  static constexpr int kPad = kWordBits;

  GridMap() : GridMap(1, 1) {}
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool in_bounds(Coord c) const {
    return static_cast<unsigned>(c.x) < static_cast<unsigned>(width_) &&
           static_cast<unsigned>(c.y) < static_cast<unsigned>(height_);
  }
  bool traversable(Coord c) const { return in_bounds(c) && cells_[flat(c)] != 0; }
  bool blocked(Coord c) const { return !traversable(c); }

  std::size_t flat(Coord c) const {
    return static_cast<std::size_t>(c.y) * width_ + static_cast<std::size_t>(c.x);
  }
  Coord unflat(std::size_t i) const {
    return Coord{static_cast<int>(i % width_), static_cast<int>(i / width_)};
  }

  // Permanent change of a cell; throws std::out_of_range outside the map.
  void set_blocked(Coord c, bool blocked);

  // Temporary obstacle, undone by the matching unset_obstacle (LIFO). Setting
  // an already blocked cell is recorded as a no-op so the unset leaves it
  // blocked. Returns whether the cell changed.
  bool set_obstacle(Coord c);
  void unset_obstacle(Coord c);

  // 64 blocked bits of row y starting at column x (bit i <-> column x+i).
  // Valid for -kPad <= x <= width and -1 <= y <= height.
  std::uint64_t row_window(int y, int x) const {
    return window(row_bits_, static_cast<std::size_t>(y + 1) * row_stride_, x + kPad);
  }
  // 64 blocked bits of column x starting at row y (bit i <-> row y+i).
  std::uint64_t col_window(int x, int y) const {
    return window(col_bits_, static_cast<std::size_t>(x + 1) * col_stride_, y + kPad);
  }

  bool row_bit(int y, int x) const { return row_window(y, x) & 1u; }
  bool col_bit(int x, int y) const { return col_window(x, y) & 1u; }

  std::size_t traversable_count() const { return traversable_; }
  std::uint64_t checksum() const;

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_ &&
           a.row_bits_ == b.row_bits_ && a.col_bits_ == b.col_bits_;
  }

 private:
  static std::uint64_t window(const std::vector<std::uint64_t>& bits, std::size_t line_base,
                              int bit) {
    const std::size_t w = line_base + static_cast<std::size_t>(bit >> 6);
    const int s = bit & 63;
    if (s == 0) return bits[w];
    return (bits[w] >> s) | (bits[w + 1] << (64 - s));
  }
  void write_bits(Coord c, bool blocked);

  struct ObstacleRecord {
    Coord cell;
    bool changed;
  };

  int width_ = 0;
  int height_ = 0;
  std::size_t row_stride_ = 0;
  std::size_t col_stride_ = 0;
  std::size_t traversable_ = 0;
  std::vector<std::uint8_t> cells_;  // 1 = traversable
  std::vector<std::uint64_t> row_bits_;
  std::vector<std::uint64_t> col_bits_;
  std::vector<ObstacleRecord> obstacle_stack_;
};

// Legal single move: destination traversable and, for diagonals, no corner cut.
bool can_step(const GridMap& map, Coord from, Direction d);

Cost octile_distance(Coord a, Coord b);

// Cost of one move in direction d.
constexpr Cost move_cost(Direction d) { return is_diagonal(d) ? Cost(0, 1) : Cost(1, 0); }

}  // namespace gridpath
