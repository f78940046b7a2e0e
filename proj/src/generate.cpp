#include "gridpath/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace gridpath {

namespace {

void check_fraction(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                std::to_string(v));
  }
}

std::size_t fraction_of(double fraction, std::size_t n) {
  // guard against 0.1 * 260 evaluating to 25.999...
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

// First k entries of `pool` become a uniform sample without replacement.
template <class T>
void partial_shuffle(std::vector<T>& pool, std::size_t k, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k && i + 1 < pool.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
}

}  // namespace

std::size_t add_random_obstacles(GridMap& map, double density, std::uint64_t seed,
                                 std::span<const Coord> protected_cells) {
  check_fraction(density, "obstacle density");
  const std::size_t wanted = fraction_of(density, map.traversable_count());
  if (wanted == 0) return 0;

  std::vector<std::uint8_t> keep(map.cell_count(), 0);
  for (Coord c : protected_cells) {
    if (map.in_bounds(c)) keep[map.flat(c)] = 1;
  }
  std::vector<Coord> pool;
  pool.reserve(map.traversable_count());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const Coord c{x, y};
      if (map.traversable(c) && !keep[map.flat(c)]) pool.push_back(c);
    }
  }
  const std::size_t k = std::min(wanted, pool.size());
  std::mt19937_64 rng(seed);
  partial_shuffle(pool, k, rng);
  for (std::size_t i = 0; i < k; ++i) map.set_blocked(pool[i], true);
  return k;
}

GridMap gen_synthetic(int side, double blockage, double density, std::uint64_t seed) {
  if (side < 8) throw std::invalid_argument("synthetic map side must be >= 8");
  check_fraction(blockage, "blockage");
  check_fraction(density, "obstacle density");

  GridMap map(side, side);
  const int wall = static_cast<int>(fraction_of(blockage, static_cast<std::size_t>(side)));
  const int first = (side - wall) / 2;
  for (int x = first; x < first + wall; ++x) map.set_blocked({x, side - 1 - x}, true);
  add_random_obstacles(map, density, seed);
  return map;
}

namespace {

std::vector<Coord> traversable_in(const GridMap& map, int x0, int y0, int x1, int y1) {
  std::vector<Coord> out;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (map.traversable({x, y})) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace

std::vector<Query> gen_clustered_queries(const GridMap& map, int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("query count must be non-negative");
  const int qw = std::max(1, map.width() / 4);
  const int qh = std::max(1, map.height() / 4);
  auto starts = traversable_in(map, 0, 0, qw, qh);
  auto targets = traversable_in(map, map.width() - qw, map.height() - qh, map.width(), map.height());
  if (starts.size() < static_cast<std::size_t>(n) || targets.size() < static_cast<std::size_t>(n)) {
    throw std::runtime_error("not enough traversable cells in the corner quadrants for " +
                             std::to_string(n) + " queries");
  }
  std::mt19937_64 rng(seed);
  partial_shuffle(starts, static_cast<std::size_t>(n), rng);
  partial_shuffle(targets, static_cast<std::size_t>(n), rng);
  std::vector<Query> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.emplace_back(starts[i], targets[i]);
  return out;
}

std::vector<Query> gen_random_queries(const GridMap& map, int n, std::uint64_t seed) {
  auto cells = traversable_in(map, 0, 0, map.width(), map.height());
  if (cells.empty()) throw std::runtime_error("map has no traversable cells");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
  std::vector<Query> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Coord s = cells[pick(rng)];
    const Coord t = cells[pick(rng)];
    out.emplace_back(s, t);
  }
  return out;
}

GridMap gen_maze(int side, std::uint64_t seed) {
  if (side < 3) throw std::invalid_argument("maze side must be >= 3");
  if (side % 2 == 0) --side;
  GridMap map(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) map.set_blocked({x, y}, true);
  }
  const int cells = side / 2;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(cells) * cells, 0);
  auto at = [cells](int cx, int cy) { return static_cast<std::size_t>(cy) * cells + cx; };

  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  seen[at(0, 0)] = 1;
  map.set_blocked({1, 1}, false);
  constexpr std::array<std::pair<int, int>, 4> kMoves = {{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
  while (!stack.empty()) {
    auto [cx, cy] = stack.back();
    std::array<int, 4> options{};
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      const int nx = cx + kMoves[k].first, ny = cy + kMoves[k].second;
      if (nx >= 0 && ny >= 0 && nx < cells && ny < cells && !seen[at(nx, ny)]) options[count++] = k;
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    std::uniform_int_distribution<int> pick(0, count - 1);
    const auto [mx, my] = kMoves[options[pick(rng)]];
    const int nx = cx + mx, ny = cy + my;
    seen[at(nx, ny)] = 1;
    map.set_blocked({2 * cx + 1 + mx, 2 * cy + 1 + my}, false);
    map.set_blocked({2 * nx + 1, 2 * ny + 1}, false);
    stack.emplace_back(nx, ny);
  }
  return map;
}

GridMap gen_random_map(int width, int height, double density, std::uint64_t seed) {
  GridMap map(width, height);
  add_random_obstacles(map, density, seed);
  return map;
}

}  // namespace gridpath
