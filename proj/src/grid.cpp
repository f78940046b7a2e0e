#include "gridpath/grid.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gridpath {

namespace {

constexpr std::array<std::string_view, 8> kNames = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};

std::size_t stride_for(int length) {
  // padding on both sides plus one spare word for unaligned window reads
  return static_cast<std::size_t>((length + 2 * GridMap::kPad + 63) / 64 + 1);
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t line_base, int bit, bool value) {
  const std::size_t w = line_base + static_cast<std::size_t>(bit >> 6);
  const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
  if (value) {
    bits[w] |= mask;
  } else {
    bits[w] &= ~mask;
  }
}

}  // namespace

std::string_view name(Direction d) { return kNames[index(d)]; }

std::optional<Direction> parse_direction(std::string_view s) {
  for (int i = 0; i < 8; ++i) {
    if (kNames[i] == s) return direction_from_index(i);
  }
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, DirSet s) {
  os << "{";
  bool first = true;
  for (Direction d : kAllDirections) {
    if (!s.contains(d)) continue;
    if (!first) os << ",";
    os << name(d);
    first = false;
  }
  return os << "}";
}

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("map dimensions must be positive, got " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
  row_stride_ = stride_for(width);
  col_stride_ = stride_for(height);
  cells_.assign(static_cast<std::size_t>(width) * height, 1);
  traversable_ = cells_.size();
  row_bits_.assign(row_stride_ * static_cast<std::size_t>(height + 2), ~std::uint64_t{0});
  col_bits_.assign(col_stride_ * static_cast<std::size_t>(width + 2), ~std::uint64_t{0});
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) write_bits({x, y}, false);
  }
}

void GridMap::write_bits(Coord c, bool blocked) {
  set_bit(row_bits_, static_cast<std::size_t>(c.y + 1) * row_stride_, c.x + kPad, blocked);
  set_bit(col_bits_, static_cast<std::size_t>(c.x + 1) * col_stride_, c.y + kPad, blocked);
}

void GridMap::set_blocked(Coord c, bool blocked) {
  if (!in_bounds(c)) {
    throw std::out_of_range("cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                            ") outside map");
  }
  std::uint8_t& cell = cells_[flat(c)];
  const std::uint8_t next = blocked ? 0 : 1;
  if (cell == next) return;
  cell = next;
  if (blocked) {
    --traversable_;
  } else {
    ++traversable_;
  }
  write_bits(c, blocked);
}

bool GridMap::set_obstacle(Coord c) {
  if (!in_bounds(c)) {
    throw std::out_of_range("obstacle (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                            ") outside map");
  }
  const bool changed = cells_[flat(c)] != 0;
  if (changed) set_blocked(c, true);
  obstacle_stack_.push_back({c, changed});
  return changed;
}

void GridMap::unset_obstacle(Coord c) {
  if (obstacle_stack_.empty() || obstacle_stack_.back().cell != c) {
    throw std::invalid_argument("unset_obstacle does not match the most recent set_obstacle");
  }
  if (obstacle_stack_.back().changed) set_blocked(c, false);
  obstacle_stack_.pop_back();
}

std::uint64_t GridMap::checksum() const {
  // FNV-1a over both bit arrays and the cell flags
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (auto w : row_bits_) mix(w);
  for (auto w : col_bits_) mix(w);
  for (auto c : cells_) mix(c);
  return h;
}

bool can_step(const GridMap& map, Coord from, Direction d) {
  const Coord to = step(from, d);
  if (!map.traversable(to)) return false;
  if (!is_diagonal(d)) return true;
  const auto [a, b, n] = components(d);
  return map.traversable(step(from, a)) && map.traversable(step(from, b));
}

Cost octile_distance(Coord a, Coord b) {
  const int ddx = std::abs(a.x - b.x);
  const int ddy = std::abs(a.y - b.y);
  return Cost(std::abs(ddx - ddy), std::min(ddx, ddy));
}

}  // namespace gridpath
