#include "gridpath/canonical.hpp"

#include <array>
#include <stdexcept>

namespace gridpath {

namespace {

constexpr bool open(std::uint8_t mask, Direction d) { return (mask >> index(d)) & 1u; }

bool legal_move(std::uint8_t mask, Direction d) {
  if (!open(mask, d)) return false;
  if (!is_diagonal(d)) return true;
  const auto [a, b, n] = components(d);
  return open(mask, a) && open(mask, b);
}

// The move parent -> cell in direction d, seen from the cell: the parent is
// the neighbour opposite(d); a diagonal also needs the two cells the move
// squeezes between.
bool legal_arrival(std::uint8_t mask, Direction d) {
  if (!open(mask, opposite(d))) return false;
  if (!is_diagonal(d)) return true;
  const auto [a, b, n] = components(d);
  return open(mask, opposite(a)) && open(mask, opposite(b));
}

DirSet local_rule(std::uint8_t mask, Incoming incoming) {
  DirSet out;
  if (!incoming) {
    for (Direction d : kAllDirections) {
      if (legal_move(mask, d)) out.insert(d);
    }
    return out;
  }
  const Direction d = *incoming;
  if (!legal_arrival(mask, d)) return out;

  if (is_diagonal(d)) {
    const auto [a, b, n] = components(d);
    if (open(mask, a)) out.insert(a);
    if (open(mask, b)) out.insert(b);
    if (legal_move(mask, d)) out.insert(d);
    return out;
  }

  if (open(mask, d)) out.insert(d);
  for (int side : {-2, 2}) {
    const Direction s = rotate(d, side);
    const Direction behind = rotate(d, side > 0 ? 3 : -3);
    if (open(mask, behind) || !open(mask, s)) continue;
    out.insert(s);
    if (open(mask, d) && open(mask, rotate(d, side / 2))) out.insert(rotate(d, side / 2));
  }
  return out;
}

struct Tables {
  // [0] is the start row, [1 + i] arrival in direction i
  std::array<std::array<std::uint8_t, 256>, 9> succ{};

  Tables() {
    for (int m = 0; m < 256; ++m) {
      const auto mask = static_cast<std::uint8_t>(m);
      succ[0][m] = local_rule(mask, kStart).bits();
      for (Direction d : kAllDirections) succ[1 + index(d)][m] = local_rule(mask, d).bits();
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t neighbourhood(const GridMap& map, Coord c) {
  std::uint8_t mask = 0;
  for (Direction d : kAllDirections) {
    if (map.traversable(step(c, d))) mask |= static_cast<std::uint8_t>(1u << index(d));
  }
  return mask;
}

DirSet successors_from_mask(std::uint8_t mask, Incoming incoming) {
  const int row = incoming ? 1 + index(*incoming) : 0;
  return DirSet(tables().succ[row][mask]);
}

DirSet successors(const GridMap& map, Coord c, Incoming incoming) {
  return successors_from_mask(neighbourhood(map, c), incoming);
}

bool is_jump_point_mask(std::uint8_t mask, Direction d) {
  DirSet s = successors_from_mask(mask, d);
  s.erase(d);
  return !s.empty();
}

bool is_jump_point(const GridMap& map, Coord c, Direction d) {
  return is_jump_point_mask(neighbourhood(map, c), d);
}

bool is_corner_point_mask(std::uint8_t mask) {
  for (Direction d : kCardinals) {
    if (is_jump_point_mask(mask, d)) return true;
  }
  return false;
}

bool is_corner_point(const GridMap& map, Coord c) {
  return is_corner_point_mask(neighbourhood(map, c));
}

DirSet intersect_successors(const GridMap& map, Coord c, DirSet incomings) {
  if (incomings.empty()) throw std::invalid_argument("intersect_successors needs an arrival");
  const std::uint8_t mask = neighbourhood(map, c);
  DirSet out(0xff);
  for (Direction d : kAllDirections) {
    if (incomings.contains(d)) out = out & successors_from_mask(mask, d);
  }
  return out;
}

}  // namespace gridpath
