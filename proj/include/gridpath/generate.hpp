#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridpath/grid.hpp"

namespace gridpath {

using Query = std::pair<Coord, Coord>;

// s x s open map with a one-cell-thick anti-diagonal wall covering fraction
// `blockage` of the diagonal (centred, gaps at both ends), then
// floor(density * traversable) random traversable cells blocked.
GridMap gen_synthetic(int side, double blockage, double density, std::uint64_t seed);

// Blocks floor(density * traversable) uniformly chosen traversable cells,
// never touching `protected_cells`. Returns the number of cells blocked.
std::size_t add_random_obstacles(GridMap& map, double density, std::uint64_t seed,
                                 std::span<const Coord> protected_cells = {});

// n (start, target) pairs: starts from the top-left side/4 quadrant, targets
// from the bottom-right one. Throws std::runtime_error if a quadrant has
// fewer than n traversable cells.
std::vector<Query> gen_clustered_queries(const GridMap& map, int n, std::uint64_t seed);

// n random pairs of traversable cells anywhere on the map.
std::vector<Query> gen_random_queries(const GridMap& map, int n, std::uint64_t seed);

// Perfect maze (spanning tree of 1-wide corridors) from a randomized DFS.
// Corridor cells sit at odd coordinates; the side is rounded down to odd.
GridMap gen_maze(int side, std::uint64_t seed);

// Uniform random obstacles at the given density; used by the property suites.
GridMap gen_random_map(int width, int height, double density, std::uint64_t seed);

}  // namespace gridpath
