#pragma once

#include <cstdint>

#include "gridpath/grid.hpp"

namespace gridpath {

enum class ScanKind : std::uint8_t { JumpPoint, DeadEnd, Target };

struct ScanResult {
  ScanKind kind = ScanKind::DeadEnd;
  Coord stop;      // jump point / target; last reached cell for a dead end
  int steps = 0;   // cells moved from the start cell
  bool limit_hit = false;

  friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

// Straight travel from `start` in cardinal `dir`, one 64-cell word per
// iteration, until the first jump point, the target, or a blocked cell ahead.
ScanResult scan(const GridMap& map, Coord start, Direction dir, Coord target);

// scan() capped at `limit` steps by a temporary obstacle on the first
// forbidden cell. A stop caused by that obstacle is a DeadEnd with
// limit_hit set. The map is restored before returning.
ScanResult scan_limited(GridMap& map, Coord start, Direction dir, Coord target, int limit);

}  // namespace gridpath
