#include "gridpath/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "gridpath/canonical.hpp"

namespace gridpath {

namespace {

constexpr std::array<std::string_view, 4> kAlgoNames = {"astar", "dijkstra", "jps", "cjps"};

Direction direction_of(int sx, int sy) {
  for (Direction d : kAllDirections) {
    if (dx(d) == sx && dy(d) == sy) return d;
  }
  throw std::logic_error("no direction for a zero offset");
}

int sign(int v) { return (v > 0) - (v < 0); }

// Open-list order: smaller f first, then larger g, then row-major position.
// std heap functions want "a comes after b".
bool after(Cost fa, Cost ga, std::uint32_t ia, Cost fb, Cost gb, std::uint32_t ib) {
  if (auto c = fa <=> fb; c != 0) return c > 0;
  if (auto c = ga <=> gb; c != 0) return c < 0;
  return ia > ib;
}

}  // namespace

std::string_view name(Algorithm a) { return kAlgoNames[static_cast<int>(a)]; }

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (std::size_t i = 0; i < kAlgoNames.size(); ++i) {
    if (kAlgoNames[i] == s) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

std::string SearchOptions::flag_string() const {
  std::string out;
  if (diagonal_caching) out += "-g";
  if (backwards_scanning) out += "-b";
  if (intersection_pruning) out += "-i";
  return out;
}

int compute_L(Cost g_a, Cost g_v, int dist_av) {
  if (g_a + Cost::straight(dist_av) <= g_v) return 0;
  if (g_a + Cost::diagonal(dist_av) > g_v + Cost::straight(dist_av)) return dist_av;
  // from_a(L) - from_v(L) falls strictly as L grows, so the first L where
  // the anchor side wins can be found by bisection.
  auto a_wins = [&](int L) {
    return g_a + Cost(dist_av - L, L) < g_v + Cost::straight(L);
  };
  if (!a_wins(dist_av)) return dist_av;  // exact tie at the far end
  int lo = 0, hi = dist_av;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (a_wins(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

Cost estimate_gbar(Cost stored_g, Cost dist_vpprime, Cost g_v) {
  const Cost via_v = g_v + dist_vpprime + Cost::straight(1);
  return std::min(stored_g, via_v);
}

std::vector<Coord> expand_path(const GridMap& map, const std::vector<Coord>& jump_points) {
  std::vector<Coord> path;
  if (jump_points.empty()) return path;
  path.push_back(jump_points.front());
  auto walk = [&](Direction d, int n) {
    for (int k = 0; k < n; ++k) {
      const Coord cur = path.back();
      if (!can_step(map, cur, d)) {
        std::ostringstream msg;
        msg << "illegal move " << name(d) << " from " << cur << " while expanding path";
        throw std::logic_error(msg.str());
      }
      path.push_back(step(cur, d));
    }
  };
  for (std::size_t i = 1; i < jump_points.size(); ++i) {
    const Coord a = jump_points[i - 1], b = jump_points[i];
    const int ddx = b.x - a.x, ddy = b.y - a.y;
    const int diag = std::min(std::abs(ddx), std::abs(ddy));
    if (diag > 0) walk(direction_of(sign(ddx), sign(ddy)), diag);
    const int rest = std::max(std::abs(ddx), std::abs(ddy)) - diag;
    if (rest > 0) {
      const bool horizontal = std::abs(ddx) > std::abs(ddy);
      walk(direction_of(horizontal ? sign(ddx) : 0, horizontal ? 0 : sign(ddy)), rest);
    }
  }
  return path;
}

std::vector<Cost> dijkstra_table(const GridMap& map, Coord source) {
  if (!map.traversable(source)) throw std::invalid_argument("dijkstra source is not traversable");
  std::vector<Cost> dist(map.cell_count(), Cost::infinity());
  // Heap keys are doubles for speed; labels stay exact. A key rounding the
  // wrong way can only pop a node early, and any later improvement pushes it
  // again, so the final labels are still exact.
  using Entry = std::pair<double, std::uint32_t>;
  std::vector<Entry> open;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  const int w = map.width();
  std::array<std::ptrdiff_t, 8> offset{};
  for (Direction d : kAllDirections) {
    const Coord o = step(Coord{0, 0}, d);
    offset[index(d)] = static_cast<std::ptrdiff_t>(o.y) * w + o.x;
  }
  const std::size_t src = map.flat(source);
  dist[src] = Cost(0, 0);
  open.emplace_back(0.0, static_cast<std::uint32_t>(src));
  while (!open.empty()) {
    std::pop_heap(open.begin(), open.end(), cmp);
    const auto [key, idx] = open.back();
    open.pop_back();
    const Cost g = dist[idx];
    if (key != g.value()) continue;
    const Coord c = map.unflat(idx);
    for (Direction d : kAllDirections) {
      if (!can_step(map, c, d)) continue;
      const std::size_t n = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(idx) + offset[index(d)]);
      const Cost ng = g + move_cost(d);
      if (ng < dist[n]) {
        dist[n] = ng;
        open.emplace_back(ng.value(), static_cast<std::uint32_t>(n));
        std::push_heap(open.begin(), open.end(), cmp);
      }
    }
  }
  return dist;
}

Engine::Engine(GridMap map) { set_map(std::move(map)); }

void Engine::set_map(GridMap map) {
  map_ = std::move(map);
  nodes_.assign(map_.cell_count(), Node{});
  stamp_ = 0;
}

Engine::Node& Engine::node(std::size_t idx) {
  Node& n = nodes_[idx];
  if (n.stamp != stamp_) {
    n = Node{};
    n.stamp = stamp_;
  }
  return n;
}

const Engine::Node* Engine::peek(std::size_t idx) const {
  const Node& n = nodes_[idx];
  return n.stamp == stamp_ ? &n : nullptr;
}

Cost Engine::stored(Coord c) const {
  const Node* n = peek(map_.flat(c));
  return n ? std::min(n->g, n->corner) : Cost::infinity();
}

Cost Engine::stored_g(Coord c) const {
  const Node* n = peek(map_.flat(c));
  return n ? n->g : Cost::infinity();
}

Cost Engine::corner_g(Coord c) const {
  const Node* n = peek(map_.flat(c));
  return n ? n->corner : Cost::infinity();
}

Cost Engine::heuristic(Coord c) const {
  if (algo_ == Algorithm::Dijkstra) return Cost(0, 0);
  return octile_distance(c, target_);
}

void Engine::begin(Algorithm algo, Coord start, Coord target, const SearchOptions& opts) {
  if (!map_.traversable(start) || !map_.traversable(target)) {
    throw std::invalid_argument("start and target must be traversable cells");
  }
  if (++stamp_ == 0) {
    for (Node& n : nodes_) n.stamp = 0;
    stamp_ = 1;
  }
  algo_ = algo;
  opts_ = opts;
  start_ = start;
  target_ = target;
  heap_.clear();
  metrics_ = QueryMetrics{};
  log_.clear();
  scans_.clear();
  inserted_.clear();
}

void Engine::seed_g(Coord c, Cost g) {
  Node& n = node(map_.flat(c));
  n.g = g;
}

void Engine::push(std::size_t idx, Cost g) {
  heap_.push_back({g + heuristic(map_.unflat(idx)), g, static_cast<std::uint32_t>(idx)});
  std::push_heap(heap_.begin(), heap_.end(), [](const HeapEntry& a, const HeapEntry& b) {
    return after(a.f, a.g, a.idx, b.f, b.g, b.idx);
  });
  ++metrics_.insertions;
}

bool Engine::generate(Coord p, Cost g, Direction incoming, std::size_t parent) {
  const std::size_t idx = map_.flat(p);
  const Cost parent_g = nodes_[parent].g;
  Node& n = node(idx);
  // corner caches hold costs of real paths; the target is never cut by them
  if (p != target_ && g > n.corner) return false;
  if (g < n.g) {
    n.g = g;
    n.parent = static_cast<std::int32_t>(parent);
    n.parent_g = parent_g;
    n.incoming = DirSet{incoming};
    n.is_start = false;
    n.closed = false;
    push(idx, g);
    if (capture_) capture_->push_back({p, g, incoming});
    if (opts_.record_insertions) inserted_.push_back({p, g, incoming});
    return true;
  }
  if (g == n.g && opts_.intersection_pruning && !n.closed && !n.is_start) {
    n.incoming.insert(incoming);
  }
  return false;
}

ScanResult Engine::do_scan(Coord from, Direction c, Coord target, int limit) {
  const ScanResult r =
      limit < 0 ? scan(map_, from, c, target) : scan_limited(map_, from, c, target, limit);
  metrics_.scan_steps += static_cast<std::uint64_t>(r.steps);
  if (opts_.record_scans) scans_.push_back({from, c, limit, r});
  return r;
}

SearchResult Engine::run(Algorithm algo, Coord start, Coord target, const SearchOptions& opts) {
  begin(algo, start, target, opts);
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t start_idx = map_.flat(start);
  Node& s = node(start_idx);
  s.g = Cost(0, 0);
  s.is_start = true;
  push(start_idx, s.g);

  const std::size_t target_idx = map_.flat(target);
  bool found = false;
  auto cmp = [](const HeapEntry& a, const HeapEntry& b) {
    return after(a.f, a.g, a.idx, b.f, b.g, b.idx);
  };
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    const HeapEntry e = heap_.back();
    heap_.pop_back();
    Node& n = node(e.idx);
    if (n.closed || e.g != n.g) continue;
    n.closed = true;
    ++metrics_.expansions;
    if (opts_.record_expansions) {
      std::optional<Coord> parent;
      if (n.parent >= 0) parent = map_.unflat(static_cast<std::size_t>(n.parent));
      log_.push_back({map_.unflat(e.idx), n.g, parent, n.parent_g});
    }
    if (e.idx == target_idx) {
      found = true;
      break;
    }
    if (algo_ == Algorithm::AStar || algo_ == Algorithm::Dijkstra) {
      expand_astar(e.idx);
    } else {
      expand_jps(e.idx);
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  metrics_.time_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());

  SearchResult out;
  if (found) {
    const Node& t = nodes_[target_idx];
    out.path.found = true;
    out.path.length = t.g;
    for (std::int32_t at = static_cast<std::int32_t>(target_idx); at >= 0;
         at = nodes_[static_cast<std::size_t>(at)].parent) {
      out.path.jump_points.push_back(map_.unflat(static_cast<std::size_t>(at)));
    }
    std::reverse(out.path.jump_points.begin(), out.path.jump_points.end());
    out.path.full_path = expand_path(map_, out.path.jump_points);
  }
  metrics_.found = found;
  metrics_.length = out.path.length;
  out.metrics = metrics_;
  out.expansions = std::move(log_);
  out.scans = std::move(scans_);
  out.insertions = std::move(inserted_);
  log_.clear();
  scans_.clear();
  inserted_.clear();
  return out;
}

std::vector<Generated> Engine::expand(Coord c, Cost g, Incoming incoming) {
  const std::size_t idx = map_.flat(c);
  Node& n = node(idx);
  n.g = g;
  n.is_start = !incoming.has_value();
  n.incoming = incoming ? DirSet{*incoming} : DirSet{};
  n.closed = true;
  std::vector<Generated> out;
  capture_ = &out;
  if (algo_ == Algorithm::AStar || algo_ == Algorithm::Dijkstra) {
    expand_astar(idx);
  } else {
    expand_jps(idx);
  }
  capture_ = nullptr;
  return out;
}

void Engine::expand_astar(std::size_t idx) {
  const Coord c = map_.unflat(idx);
  const Cost g = nodes_[idx].g;
  for (Direction d : kAllDirections) {
    if (can_step(map_, c, d)) generate(step(c, d), g + move_cost(d), d, idx);
  }
}

void Engine::expand_jps(std::size_t idx) {
  const Coord a = map_.unflat(idx);
  const Node& n = nodes_[idx];
  const Cost g = n.g;
  const std::uint8_t mask = neighbourhood(map_, a);

  DirSet succ;
  if (n.is_start) {
    succ = successors_from_mask(mask, kStart);
  } else {
    succ = DirSet(0xff);
    for (Direction d : kAllDirections) {
      if (n.incoming.contains(d)) succ = succ & successors_from_mask(mask, d);
    }
  }

  std::array<ScanResult, 8> seeds{};
  std::array<bool, 8> seeded{};
  for (Direction c : kCardinals) {
    if (!succ.contains(c)) continue;
    seeds[index(c)] = do_scan(a, c, target_, -1);
    seeded[index(c)] = true;
    handle_free_scan(idx, a, g, 0, c, seeds[index(c)], nullptr);
  }
  for (Direction d : kDiagonals) {
    if (!succ.contains(d)) continue;
    const auto [c1, c2, count] = components(d);
    diagonal_recursion(idx, d,
                       {seeded[index(c1)] ? &seeds[index(c1)] : nullptr,
                        seeded[index(c2)] ? &seeds[index(c2)] : nullptr});
  }
}

void Engine::diagonal_recursion(std::size_t idx, Direction d,
                                const std::array<const ScanResult*, 2>& seeds) {
  const Coord a = map_.unflat(idx);
  const Cost g = nodes_[idx].g;
  const auto [c1, c2, count] = components(d);
  const std::array<Direction, 2> comp = {c1, c2};
  const bool constrained = algo_ == Algorithm::CJPS;

  // One constraint per component direction, seeded from the anchor's own
  // cardinal scans.
  std::array<Constraint, 2> con{};
  if (constrained) {
    for (int k = 0; k < 2; ++k) {
      const ScanResult* r = seeds[k];
      if (!r || r->kind != ScanKind::JumpPoint) continue;
      const Cost g_v = stored(r->stop);
      const int L = compute_L(g, g_v, r->steps);
      if (L > 0) con[k] = {true, 0, r->stop, g_v, r->steps, L};
    }
  }

  Coord cur = a;
  Cost gc = g;
  for (int i = 1; can_step(map_, cur, d); ++i) {
    cur = step(cur, d);
    gc += Cost::diagonal(1);
    if (cur == target_) {
      generate(target_, gc, d, idx);
      return;
    }
    if (opts_.diagonal_caching) {
      if (stored(cur) < gc) return;
      if (is_corner_point(map_, cur)) {
        Node& n = node(map_.flat(cur));
        n.corner = std::min(n.corner, gc);
      }
    }
    for (int k = 0; k < 2; ++k) {
      if (constrained) {
        if (!constrained_scan(idx, cur, gc, i, comp[k], comp[1 - k], con[k])) return;
      } else {
        handle_free_scan(idx, cur, gc, i, comp[k], do_scan(cur, comp[k], target_, -1), nullptr);
      }
    }
  }
}

bool Engine::constrained_scan(std::size_t parent, Coord a_i, Cost g_i, int i, Direction c,
                              Direction other, Constraint& con) {
  if (con.active && i - con.anchor > con.L) con.active = false;
  if (!con.active) {
    handle_free_scan(parent, a_i, g_i, i, c, do_scan(a_i, c, target_, -1), &con);
    return true;
  }

  const int limit = con.dist - (i - con.anchor);
  const ScanResult r = do_scan(a_i, c, target_, limit);
  if (r.kind == ScanKind::Target) {
    generate(target_, g_i + Cost::straight(r.steps), c, parent);
    con.active = false;
    return true;
  }

  // p' is p's neighbour in the row/column scanned one diagonal step earlier.
  const Coord p = r.stop;
  const Coord p_prev = step(p, opposite(other));
  const Cost gbar = estimate_gbar(stored(p), octile_distance(con.v, p_prev), con.g_v);
  const Cost to_p = Cost::straight(r.steps);

  if (r.limit_hit) {
    if (gbar + to_p < g_i) return false;  // a_i itself is better reached through p
    if (gbar < g_i + to_p) return true;   // crossing the blockage is better from v
    con.active = false;
    ScanResult rest = do_scan(p, c, target_, -1);
    rest.steps += r.steps;
    handle_free_scan(parent, a_i, g_i, i, c, rest, &con);
    return true;
  }

  if (r.kind == ScanKind::JumpPoint) {
    const Cost cand = g_i + to_p;
    if (!(gbar < cand)) generate(p, cand, c, parent);
    if (opts_.backwards_scanning) backwards_label(a_i, g_i, c, r);
  }
  if (r.steps == 0) {
    con.active = false;
    return true;
  }
  const Cost g_p = std::min(gbar, stored(p));
  const int L = compute_L(g_i, g_p, r.steps);
  if (L > 0) {
    con = {true, i, p, g_p, r.steps, L};
  } else {
    con.active = false;
  }
  return true;
}

void Engine::handle_free_scan(std::size_t parent, Coord from, Cost g_from, int i, Direction c,
                              const ScanResult& r, Constraint* con) {
  if (r.kind == ScanKind::Target) {
    generate(target_, g_from + Cost::straight(r.steps), c, parent);
    return;
  }
  if (r.kind != ScanKind::JumpPoint) return;
  generate(r.stop, g_from + Cost::straight(r.steps), c, parent);
  if (opts_.backwards_scanning) backwards_label(from, g_from, c, r);
  if (con) {
    const Cost g_v = stored(r.stop);
    const int L = compute_L(g_from, g_v, r.steps);
    if (L > 0) *con = {true, i, r.stop, g_v, r.steps, L};
  }
}

void Engine::backwards_label(Coord origin, Cost g_origin, Direction c, const ScanResult& r) {
  // The forward scan passed at most two corner points (one per neighbour
  // line); walk back from the jump point and give them the g of this scan.
  const Direction back = opposite(c);
  const Coord nowhere{-1, -1};
  Coord cur = r.stop;
  int remaining = r.steps - 1;
  for (int labelled = 0; labelled < 2 && remaining > 0; ++labelled) {
    const ScanResult b = do_scan(cur, back, nowhere, remaining);
    if (b.kind != ScanKind::JumpPoint) break;
    const int from_origin = std::abs(b.stop.x - origin.x) + std::abs(b.stop.y - origin.y);
    Node& n = node(map_.flat(b.stop));
    n.corner = std::min(n.corner, g_origin + Cost::straight(from_origin));
    remaining -= b.steps;
    cur = b.stop;
  }
}

SearchResult astar(const GridMap& map, Coord start, Coord target, const SearchOptions& opts) {
  Engine e(map);
  return e.run(Algorithm::AStar, start, target, opts);
}

SearchResult jps(const GridMap& map, Coord start, Coord target, const SearchOptions& opts) {
  Engine e(map);
  return e.run(Algorithm::JPS, start, target, opts);
}

SearchResult cjps(const GridMap& map, Coord start, Coord target, const SearchOptions& opts) {
  Engine e(map);
  return e.run(Algorithm::CJPS, start, target, opts);
}

}  // namespace gridpath
