#pragma once

#include <cstdint>

#include "gridpath/grid.hpp"

namespace gridpath {

// Bit i set <=> the neighbour in direction i is traversable.
std::uint8_t neighbourhood(const GridMap& map, Coord c);

// Diagonal-first successor set for a cell whose 3x3 neighbourhood is `mask`.
// An arrival that is itself illegal (parent blocked or corner cut) yields {}.
DirSet successors_from_mask(std::uint8_t mask, Incoming incoming);

DirSet successors(const GridMap& map, Coord c, Incoming incoming);

// A cell reached by straight travel in `d` is a jump point when it has a
// successor other than d (a forced neighbour).
bool is_jump_point(const GridMap& map, Coord c, Direction d);
bool is_jump_point_mask(std::uint8_t mask, Direction d);

// Jump point for at least one legal cardinal arrival.
bool is_corner_point(const GridMap& map, Coord c);
bool is_corner_point_mask(std::uint8_t mask);

// Intersection of the successor sets over every arrival in `incomings`.
// Throws std::invalid_argument on an empty set.
DirSet intersect_successors(const GridMap& map, Coord c, DirSet incomings);

}  // namespace gridpath
