#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/blockscan.hpp"
#include "gridpath/grid.hpp"

namespace gridpath {

enum class Algorithm : std::uint8_t { AStar, Dijkstra, JPS, CJPS };

std::string_view name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct SearchOptions {
  bool diagonal_caching = false;      // -g
  bool backwards_scanning = false;    // -b
  bool intersection_pruning = false;
  bool record_expansions = false;
  bool record_insertions = false;
  bool record_scans = false;

  // "-g", "-b", "-g-b", "-i" ... concatenated in a fixed order; "" for none.
  std::string flag_string() const;
};

// One pop of the open list. parent_g is the g the parent was expanded with.
struct Expansion {
  Coord coord;
  Cost g;
  std::optional<Coord> parent;
  Cost parent_g;
};

struct ScanEvent {
  Coord from;
  Direction dir;
  int limit;  // -1 for an unlimited scan
  ScanResult result;
};

struct QueryMetrics {
  bool found = false;
  Cost length = Cost::infinity();
  std::uint64_t expansions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t subopt = 0;
  std::uint64_t propagated = 0;
  std::uint64_t scan_steps = 0;
  std::uint64_t time_ns = 0;

  std::uint64_t hp_opt() const { return expansions + insertions; }
};

struct PathResult {
  bool found = false;
  Cost length = Cost::infinity();
  std::vector<Coord> jump_points;
  std::vector<Coord> full_path;
};

// A node placed on (or improved in) the open list.
struct Generated {
  Coord coord;
  Cost g;
  Direction incoming;
};

struct SearchResult {
  PathResult path;
  QueryMetrics metrics;
  std::vector<Expansion> expansions;  // when record_expansions
  std::vector<Generated> insertions;  // when record_insertions, start excluded
  std::vector<ScanEvent> scans;       // when record_scans
};

// L for a constraint whose anchor has g_a and whose jump point v, dist_av
// cells away, has g_v.
int compute_L(Cost g_a, Cost g_v, int dist_av);

// Upper bound on the g of p: the stored value or a path through v and p'.
Cost estimate_gbar(Cost stored_g, Cost dist_vpprime, Cost g_v = Cost(0, 0));

// Cell-by-cell path through consecutive jump points, each pair joined by a
// diagonal run followed by a straight run. Throws std::logic_error when a
// move on the way is illegal.
std::vector<Coord> expand_path(const GridMap& map, const std::vector<Coord>& jump_points);

// Exact distances from `source` to every cell (index GridMap::flat),
// Cost::infinity() for unreachable cells.
std::vector<Cost> dijkstra_table(const GridMap& map, Coord source);

// Search engine owning its map (constrained scans place temporary obstacles
// on it) and all per-query scratch state. Scratch arrays are reset lazily
// through a per-query stamp.
class Engine {
 public:
  explicit Engine(GridMap map);

  const GridMap& map() const { return map_; }
  void set_map(GridMap map);

  SearchResult run(Algorithm algo, Coord start, Coord target, const SearchOptions& opts = {});

  // Hooks for driving single expansions by hand. begin() starts a query
  // without touching the open list; seed_g() stores g for a cell as if it had
  // been generated earlier; expand() runs one JPS/CJPS expansion of `c` and
  // returns what it put on the open list.
  void begin(Algorithm algo, Coord start, Coord target, const SearchOptions& opts = {});
  void seed_g(Coord c, Cost g);
  std::vector<Generated> expand(Coord c, Cost g, Incoming incoming);
  Cost stored_g(Coord c) const;
  Cost corner_g(Coord c) const;
  const std::vector<ScanEvent>& scan_log() const { return scans_; }

 private:
  struct Node {
    std::uint32_t stamp = 0;
    bool closed = false;
    DirSet incoming;       // arrival directions with equal g
    bool is_start = false;
    std::int32_t parent = -1;
    Cost g = Cost::infinity();
    Cost parent_g = Cost::infinity();
    Cost corner = Cost::infinity();
  };

  struct HeapEntry {
    Cost f;
    Cost g;
    std::uint32_t idx;
  };

  struct Constraint {
    bool active = false;
    int anchor = 0;  // diagonal step index of the anchor
    Coord v;
    Cost g_v;
    int dist = 0;
    int L = 0;
  };

  Node& node(std::size_t idx);
  const Node* peek(std::size_t idx) const;
  Cost stored(Coord c) const;

  void push(std::size_t idx, Cost g);
  bool generate(Coord p, Cost g, Direction incoming, std::size_t parent);

  void expand_astar(std::size_t idx);
  void expand_jps(std::size_t idx);
  void diagonal_recursion(std::size_t idx, Direction d, const std::array<const ScanResult*, 2>& seeds);
  // Returns false when the whole diagonal recursion must stop.
  bool constrained_scan(std::size_t parent, Coord a_i, Cost g_i, int i, Direction c,
                        Direction other, Constraint& con);
  void handle_free_scan(std::size_t parent, Coord from, Cost g_from, int i, Direction c,
                        const ScanResult& r, Constraint* con);
  void backwards_label(Coord origin, Cost g_origin, Direction c, const ScanResult& r);
  ScanResult do_scan(Coord from, Direction c, Coord target, int limit);

  Cost heuristic(Coord c) const;

  GridMap map_;
  std::vector<Node> nodes_;
  std::uint32_t stamp_ = 0;
  std::vector<HeapEntry> heap_;

  Algorithm algo_ = Algorithm::AStar;
  SearchOptions opts_;
  Coord start_, target_;
  QueryMetrics metrics_;
  std::vector<Expansion> log_;
  std::vector<ScanEvent> scans_;
  std::vector<Generated> inserted_;
  std::vector<Generated>* capture_ = nullptr;
};

// One-shot helpers on a copy of the map.
SearchResult astar(const GridMap& map, Coord start, Coord target, const SearchOptions& opts = {});
SearchResult jps(const GridMap& map, Coord start, Coord target, const SearchOptions& opts = {});
SearchResult cjps(const GridMap& map, Coord start, Coord target, const SearchOptions& opts = {});

}  // namespace gridpath
