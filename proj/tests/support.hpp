#pragma once

// Shared helpers for the test suites: ASCII maps and the reference oracles
// (brute-force canonical evaluator, naive per-cell scanner).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gridpath/blockscan.hpp"
#include "gridpath/canonical.hpp"
#include "gridpath/grid.hpp"

namespace testing {

using namespace gridpath;

// Rows of '.' (open) and '@' (blocked); all rows must be the same length.
inline GridMap ascii_map(const std::vector<std::string>& rows) {
  GridMap m(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (rows[y][x] == '@') m.set_blocked({x, y}, true);
    }
  }
  return m;
}

// ---- Definition-1 oracle on a 3x3 neighbourhood ------------------------
// The 3x3 block is indexed by (dx, dy) in [-1,1]^2; bit index(d) of `mask`
// tells whether the neighbour in direction d is open, the centre is open.

inline bool nb_open(std::uint8_t mask, int ox, int oy) {
  if (ox == 0 && oy == 0) return true;
  if (ox < -1 || ox > 1 || oy < -1 || oy > 1) return false;
  for (Direction d : kAllDirections) {
    if (dx(d) == ox && dy(d) == oy) return (mask >> index(d)) & 1u;
  }
  return false;
}

inline bool nb_move(std::uint8_t mask, int fx, int fy, int tx, int ty) {
  const int mx = tx - fx, my = ty - fy;
  if (std::abs(mx) > 1 || std::abs(my) > 1 || (mx == 0 && my == 0)) return false;
  if (!nb_open(mask, fx, fy) || !nb_open(mask, tx, ty)) return false;
  if (mx != 0 && my != 0) return nb_open(mask, fx + mx, fy) && nb_open(mask, fx, fy + my);
  return true;
}

struct PathKey {
  Cost length;
  int rank;  // 1-based position of the first diagonal move, 99 when none
};

inline bool better(const PathKey& a, const PathKey& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.rank < b.rank;
}

// Successor set by direct application of the length-and-rank test: n is a
// successor of the centre x for the arrival parent -> x unless some other
// path of at most two moves inside the block reaches n from the parent and
// is shorter, or equally long with an earlier diagonal.
inline DirSet brute_force_successors(std::uint8_t mask, Incoming incoming) {
  DirSet out;
  if (!incoming) {
    for (Direction d : kAllDirections) {
      if (nb_move(mask, 0, 0, dx(d), dy(d))) out.insert(d);
    }
    return out;
  }
  const int px = -dx(*incoming), py = -dy(*incoming);
  if (!nb_move(mask, px, py, 0, 0)) return out;
  const bool in_diag = is_diagonal(*incoming);
  for (Direction d : kAllDirections) {
    const int nx = dx(d), ny = dy(d);
    if (nx == px && ny == py) continue;
    if (!nb_move(mask, 0, 0, nx, ny)) continue;
    const bool out_diag = is_diagonal(d);
    const PathKey through_x{move_cost(*incoming) + move_cost(d), in_diag ? 1 : (out_diag ? 2 : 99)};
    bool pruned = false;
    // one-move alternative
    if (nb_move(mask, px, py, nx, ny)) {
      const bool diag = std::abs(nx - px) == 1 && std::abs(ny - py) == 1;
      const PathKey k{diag ? Cost(0, 1) : Cost(1, 0), diag ? 1 : 99};
      pruned = better(k, through_x);
    }
    // two-move alternatives through any other cell of the block
    for (int mx = -1; mx <= 1 && !pruned; ++mx) {
      for (int my = -1; my <= 1 && !pruned; ++my) {
        if ((mx == 0 && my == 0) || (mx == px && my == py) || (mx == nx && my == ny)) continue;
        if (!nb_move(mask, px, py, mx, my) || !nb_move(mask, mx, my, nx, ny)) continue;
        const bool d1 = mx != px && my != py;
        const bool d2 = nx != mx && ny != my;
        const PathKey k{(d1 ? Cost(0, 1) : Cost(1, 0)) + (d2 ? Cost(0, 1) : Cost(1, 0)),
                        d1 ? 1 : (d2 ? 2 : 99)};
        pruned = better(k, through_x);
      }
    }
    if (!pruned) out.insert(d);
  }
  return out;
}

// ---- naive scanner ------------------------------------------------------

inline ScanResult naive_scan(const GridMap& map, Coord start, Direction dir, Coord target,
                             int limit = -1) {
  Coord cur = start;
  int steps = 0;
  while (true) {
    if (limit >= 0 && steps == limit) {
      const Coord wall = step(cur, dir);
      const bool artificial = map.traversable(wall);
      return {ScanKind::DeadEnd, cur, steps, artificial};
    }
    const Coord next = step(cur, dir);
    if (!map.traversable(next)) return {ScanKind::DeadEnd, cur, steps, false};
    cur = next;
    ++steps;
    if (cur == target) return {ScanKind::Target, cur, steps, false};
    if (is_jump_point(map, cur, dir)) return {ScanKind::JumpPoint, cur, steps, false};
  }
}

// ---- random instances ---------------------------------------------------

inline GridMap random_map(std::mt19937_64& rng, int w, int h, double density) {
  GridMap m(w, h);
  std::bernoulli_distribution blocked(density);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (blocked(rng)) m.set_blocked({x, y}, true);
    }
  }
  return m;
}

inline std::optional<Coord> random_open_cell(std::mt19937_64& rng, const GridMap& m) {
  if (m.traversable_count() == 0) return std::nullopt;
  std::uniform_int_distribution<int> px(0, m.width() - 1), py(0, m.height() - 1);
  while (true) {
    const Coord c{px(rng), py(rng)};
    if (m.traversable(c)) return c;
  }
}

}  // namespace testing
