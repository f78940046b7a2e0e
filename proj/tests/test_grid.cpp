#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "gridpath/generate.hpp"
#include "gridpath/map_io.hpp"
#include "support.hpp"

using namespace gridpath;

TEST_CASE("cost ordering is exact") {
  CHECK(Cost(0, 5) == octile_distance({0, 0}, {5, 5}));
  CHECK(Cost(4, 3) == octile_distance({0, 0}, {7, 3}));
  CHECK(Cost(0, 0) == octile_distance({3, 4}, {3, 4}));
  CHECK(Cost(5, 0) < Cost(0, 4));   // 5 < 5.657
  CHECK(Cost(0, 7) < Cost(10, 0));  // 9.899 < 10
  CHECK(Cost(3, 2) > Cost(5, 0));
  CHECK(Cost(1, 1) + Cost(2, 3) == Cost(3, 4));
  CHECK(Cost::infinity() > Cost(1000000, 1000000));
  CHECK((Cost::infinity() + Cost(1, 0)).is_infinite());

  // random pairs agree with double evaluation whenever the gap is visible
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(0, 200000);
  for (int i = 0; i < 200000; ++i) {
    const Cost a(v(rng), v(rng)), b(v(rng), v(rng));
    const double da = a.cardinals + a.diagonals * std::sqrt(2.0L);
    const double db = b.cardinals + b.diagonals * std::sqrt(2.0L);
    if (std::abs(da - db) > 1e-9 * std::max(1.0, std::abs(da))) {
      REQUIRE((a < b) == (da < db));
    }
    // strict total order: exactly one of <, ==, >
    REQUIRE(int(a < b) + int(a == b) + int(a > b) == 1);
  }
}

TEST_CASE("octile distance is a metric") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-300, 300);
  for (int i = 0; i < 20000; ++i) {
    const Coord a{c(rng), c(rng)}, b{c(rng), c(rng)}, d{c(rng), c(rng)};
    REQUIRE(octile_distance(a, b) == octile_distance(b, a));
    REQUIRE((octile_distance(a, b) == Cost(0, 0)) == (a == b));
    REQUIRE(octile_distance(a, d) <= octile_distance(a, b) + octile_distance(b, d));
  }
}

TEST_CASE("directions") {
  CHECK(components(Direction::NE).first == Direction::N);
  CHECK(components(Direction::NE).second == Direction::E);
  CHECK(components(Direction::SW).count == 2);
  CHECK(components(Direction::W).count == 1);
  CHECK(components(Direction::W).first == Direction::W);
  CHECK(opposite(Direction::NW) == Direction::SE);
  for (Direction d : kDiagonals) {
    const auto [a, b, n] = components(d);
    CHECK(diagonal_of(a, b) == d);
    CHECK(diagonal_of(b, a) == d);
  }
  CHECK(parse_direction("SE") == Direction::SE);
  CHECK_FALSE(parse_direction("X").has_value());
}

TEST_CASE("can_step forbids corner cutting") {
  // blocked cell north of the mover: the NE move from the south-west is illegal
  const GridMap m = testing::ascii_map({
      ".@.",
      "...",
      "...",
  });
  CHECK_FALSE(can_step(m, {0, 1}, Direction::NE));
  CHECK(can_step(m, {1, 2}, Direction::NE));
  CHECK(can_step(m, {1, 2}, Direction::N));
  CHECK_FALSE(can_step(m, {1, 1}, Direction::N));
  CHECK_FALSE(can_step(m, {0, 0}, Direction::W));  // off the map

  const GridMap open(8, 8);
  for (Direction d : kDiagonals) CHECK(can_step(open, {4, 4}, d));
}

TEST_CASE("bitmaps mirror the cell flags") {
  GridMap m(8, 8);
  m.set_obstacle({3, 3});
  CHECK(m.row_bit(3, 3));
  CHECK(m.col_bit(3, 3));
  m.unset_obstacle({3, 3});
  CHECK_FALSE(m.row_bit(3, 3));

  // padding reads as blocked everywhere around the map
  for (int i = -1; i <= 8; ++i) {
    CHECK(m.row_bit(-1, i));
    CHECK(m.row_bit(8, i));
    CHECK(m.row_bit(i, -1));
    CHECK(m.row_bit(i, 8));
    CHECK(m.col_bit(i, -1));
    CHECK(m.col_bit(-1, i));
  }
  CHECK(m.row_window(2, -64) == ~std::uint64_t{0});
  CHECK((m.row_window(2, 0) & 0xff) == 0);
  CHECK((m.row_window(2, 0) >> 8) == (~std::uint64_t{0} >> 8));

  CHECK_THROWS_AS(m.set_obstacle({8, 0}), std::out_of_range);
  CHECK_THROWS_AS(m.unset_obstacle({1, 1}), std::invalid_argument);
}

TEST_CASE("random obstacle sequences keep both bitmaps consistent") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> dim(1, 150);
    const int w = dim(rng), h = dim(rng);
    GridMap m = testing::random_map(rng, w, h, 0.3);
    const GridMap original = m;
    std::vector<bool> shadow(m.cell_count());
    for (std::size_t i = 0; i < shadow.size(); ++i) shadow[i] = m.traversable(m.unflat(i));

    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    std::vector<std::pair<Coord, bool>> stack;
    for (int op = 0; op < 400; ++op) {
      if (!stack.empty() && (op % 3 == 2)) {
        auto [c, before] = stack.back();
        stack.pop_back();
        m.unset_obstacle(c);
        shadow[m.flat(c)] = before;
      } else {
        const Coord c{px(rng), py(rng)};
        stack.emplace_back(c, shadow[m.flat(c)]);
        m.set_obstacle(c);
        shadow[m.flat(c)] = false;
      }
      bool consistent = true;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const bool open = shadow[m.flat({x, y})];
          consistent &= m.traversable({x, y}) == open && m.row_bit(y, x) == !open &&
                        m.col_bit(x, y) == !open;
        }
      }
      REQUIRE(consistent);
    }
    while (!stack.empty()) {
      m.unset_obstacle(stack.back().first);
      stack.pop_back();
    }
    REQUIRE(m == original);
    REQUIRE(m.checksum() == original.checksum());
  }
}

TEST_CASE("map parser") {
  const GridMap m = load_map("type octile\nheight 2\nwidth 2\nmap\n.@\n@.\n");
  CHECK(m.traversable({0, 0}));
  CHECK(m.blocked({1, 0}));
  CHECK(m.blocked({0, 1}));
  CHECK(m.traversable({1, 1}));

  std::string open = "type octile\nheight 8\nwidth 8\nmap\n";
  for (int i = 0; i < 8; ++i) open += "........\n";
  CHECK(load_map(open).traversable_count() == 64);

  const GridMap terrain = load_map("type octile\nheight 1\nwidth 7\nmap\n.GSTW@O\n");
  CHECK(terrain.traversable_count() == 3);
  CHECK(terrain.blocked({3, 0}));

  CHECK_THROWS_AS(load_map("type grid\nheight 1\nwidth 1\nmap\n.\n"), ParseError);
  CHECK_THROWS_AS(load_map("type octile\nheight 2\nwidth 2\nmap\n..\n"), ParseError);
  CHECK_THROWS_AS(load_map("type octile\nheight 1\nwidth 2\nmap\n...\n"), ParseError);
  try {
    load_map("type octile\nheight 2\nwidth 2\nmap\n..\n.x\n", "bad.map");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("bad.map:6") == 0);
  }

  const GridMap g = gen_synthetic(32, 0.5, 0.1, 9);
  CHECK(load_map(write_map(g)) == g);
}

TEST_CASE("synthetic generator") {
  const GridMap open = gen_synthetic(8, 0, 0, 123);
  CHECK(open.traversable_count() == 64);

  // anti-diagonal wall, centred, one cell thick
  const GridMap wall = gen_synthetic(16, 0.5, 0, 1);
  CHECK(wall.traversable_count() == 16 * 16 - 8);
  for (int x = 0; x < 16; ++x) CHECK(wall.blocked({x, 15 - x}) == (x >= 4 && x < 12));

  const GridMap g = gen_synthetic(512, 0.75, 0.001, 42);
  const std::size_t after_wall = 512 * 512 - 384;
  const std::size_t expected = after_wall - after_wall / 1000;
  CHECK(g.traversable_count() == expected);

  CHECK(gen_synthetic(64, 0.75, 0.1, 5) == gen_synthetic(64, 0.75, 0.1, 5));
  CHECK_FALSE(gen_synthetic(64, 0.75, 0.1, 5) == gen_synthetic(64, 0.75, 0.1, 6));
  CHECK_THROWS_AS(gen_synthetic(4, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(16, 1.5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(16, 0, -0.1, 1), std::invalid_argument);
}

TEST_CASE("clustered queries") {
  const GridMap g = gen_synthetic(64, 0.75, 0.1, 3);
  const auto q = gen_clustered_queries(g, 100, 8);
  CHECK(q.size() == 100);
  for (auto [s, t] : q) {
    CHECK(g.traversable(s));
    CHECK(g.traversable(t));
    CHECK(s.x < 16);
    CHECK(s.y < 16);
    CHECK(t.x >= 48);
    CHECK(t.y >= 48);
  }
  CHECK(q == gen_clustered_queries(g, 100, 8));

  const GridMap open(8, 8);
  const auto one = gen_clustered_queries(open, 1, 0);
  CHECK(one.size() == 1);
  CHECK_THROWS(gen_clustered_queries(open, 5, 0));  // 2x2 quadrants
}

TEST_CASE("protected cells are never blocked") {
  GridMap m(64, 64);
  std::vector<Coord> keep;
  for (int i = 0; i < 64; ++i) keep.push_back({i, i});
  CHECK(add_random_obstacles(m, 0.5, 4, keep) == 2048);
  for (Coord c : keep) CHECK(m.traversable(c));
}

TEST_CASE("maze is a spanning tree of corridors") {
  const GridMap m = gen_maze(41, 5);
  // cells at odd coordinates are open; count edges of the corridor graph
  std::size_t nodes = 0, edges = 0;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.traversable({x, y})) continue;
      ++nodes;
      if (m.traversable({x + 1, y})) ++edges;
      if (m.traversable({x, y + 1})) ++edges;
      // no 2x2 open block anywhere, so diagonal moves are never legal
      CHECK_FALSE((m.traversable({x + 1, y}) && m.traversable({x, y + 1}) &&
                   m.traversable({x + 1, y + 1})));
    }
  }
  CHECK(edges + 1 == nodes);
  CHECK(nodes == 20 * 20 + (20 * 20 - 1));
}
