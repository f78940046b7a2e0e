#include "gridpath/blockscan.hpp"

#include <bit>
#include <stdexcept>

namespace gridpath {

namespace {

// Scan along one line of either bit array. `pos` is the coordinate along the
// line, `line` selects the row (horizontal) or column (vertical), and the
// neighbouring lines line-1 / line+1 supply the forced-neighbour pattern.
template <bool Vertical>
ScanResult scan_line(const GridMap& map, Coord start, int step_sign, Coord target) {
  const int line = Vertical ? start.x : start.y;
  const int from = Vertical ? start.y : start.x;
  auto window = [&map](int l, int p) {
    return Vertical ? map.col_window(l, p) : map.row_window(l, p);
  };
  auto make = [line](int p) { return Vertical ? Coord{line, p} : Coord{p, line}; };

  const bool target_on_line = (Vertical ? target.x : target.y) == line;
  const int target_pos = Vertical ? target.y : target.x;

  ScanResult r;
  if (step_sign > 0) {
    for (int c0 = from + 1;; c0 += 64) {
      const std::uint64_t up = window(line - 1, c0), up_prev = window(line - 1, c0 - 1);
      const std::uint64_t dn = window(line + 1, c0), dn_prev = window(line + 1, c0 - 1);
      const std::uint64_t mid = window(line, c0);
      const std::uint64_t forced = (up_prev & ~up) | (dn_prev & ~dn);
      const std::uint64_t stops = forced | mid;
      if (stops == 0) {
        if (target_on_line && target_pos >= c0 && target_pos < c0 + 64) {
          r = {ScanKind::Target, target, target_pos - from};
          return r;
        }
        continue;
      }
      const int k = std::countr_zero(stops);
      const bool dead = (mid >> k) & 1u;
      const int pos = dead ? c0 + k - 1 : c0 + k;
      if (target_on_line && target_pos > from && target_pos <= pos) {
        return {ScanKind::Target, target, target_pos - from};
      }
      return {dead ? ScanKind::DeadEnd : ScanKind::JumpPoint, make(pos), pos - from};
    }
  }
  // Decreasing direction: the window ends at c0 (bit 63 <-> c0) and the
  // previously visited cell of each bit sits one position higher.
  for (int c0 = from - 1;; c0 -= 64) {
    const int lo = c0 - 63;
    const std::uint64_t up = window(line - 1, lo), up_prev = window(line - 1, lo + 1);
    const std::uint64_t dn = window(line + 1, lo), dn_prev = window(line + 1, lo + 1);
    const std::uint64_t mid = window(line, lo);
    const std::uint64_t forced = (up_prev & ~up) | (dn_prev & ~dn);
    const std::uint64_t stops = forced | mid;
    if (stops == 0) {
      if (target_on_line && target_pos <= c0 && target_pos > c0 - 64) {
        return {ScanKind::Target, target, from - target_pos};
      }
      continue;
    }
    const int k = 63 - std::countl_zero(stops);
    const bool dead = (mid >> k) & 1u;
    const int pos = dead ? lo + k + 1 : lo + k;
    if (target_on_line && target_pos < from && target_pos >= pos) {
      return {ScanKind::Target, target, from - target_pos};
    }
    return {dead ? ScanKind::DeadEnd : ScanKind::JumpPoint, make(pos), from - pos};
  }
}

}  // namespace

ScanResult scan(const GridMap& map, Coord start, Direction dir, Coord target) {
  switch (dir) {
    case Direction::E: return scan_line<false>(map, start, +1, target);
    case Direction::W: return scan_line<false>(map, start, -1, target);
    case Direction::S: return scan_line<true>(map, start, +1, target);
    case Direction::N: return scan_line<true>(map, start, -1, target);
    default: throw std::invalid_argument("scan direction must be cardinal");
  }
}

ScanResult scan_limited(GridMap& map, Coord start, Direction dir, Coord target, int limit) {
  if (limit < 0) throw std::invalid_argument("scan limit must be non-negative");
  const Coord wall = step(start, dir, limit + 1);
  const bool inside = map.in_bounds(wall);
  const bool placed = inside && map.set_obstacle(wall);
  ScanResult r = scan(map, start, dir, target);
  if (inside) map.unset_obstacle(wall);
  r.limit_hit = placed && r.kind == ScanKind::DeadEnd && r.steps == limit;
  return r;
}

}  // namespace gridpath
