#include "gridpath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "gridpath/map_io.hpp"

namespace gridpath {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<ScenarioQuery> load_scen(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::vector<ScenarioQuery> out;
  int lineno = 0;
  bool header = false;
  for (std::string_view line : split(text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != "version 1" && line != "version 1.0") {
        throw ParseError(src, lineno, "expected 'version 1'");
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    if (f.size() != 9) {
      throw ParseError(src, lineno, "expected 9 tab-separated fields, found " +
                                        std::to_string(f.size()));
    }
    ScenarioQuery q;
    q.map_name = std::string(f[1]);
    const bool ok = parse_number(f[0], q.bucket) && parse_number(f[2], q.width) &&
                    parse_number(f[3], q.height) && parse_number(f[4], q.start.x) &&
                    parse_number(f[5], q.start.y) && parse_number(f[6], q.target.x) &&
                    parse_number(f[7], q.target.y) && parse_number(f[8], q.reference_length);
    if (!ok) throw ParseError(src, lineno, "malformed numeric field");
    auto inside = [&q](Coord c) { return c.x >= 0 && c.y >= 0 && c.x < q.width && c.y < q.height; };
    if (!inside(q.start) || !inside(q.target)) {
      throw ParseError(src, lineno, "endpoint outside the stated map size");
    }
    out.push_back(std::move(q));
  }
  if (!header) throw ParseError(src, 1, "expected 'version 1'");
  return out;
}

std::vector<ScenarioQuery> load_scen_file(const std::string& path) {
  return load_scen(read_text_file(path), path);
}

std::string write_scen(std::string_view map_name, const GridMap& map,
                       const std::vector<Query>& queries, const std::vector<Cost>& lengths) {
  std::string out = "version 1\n";
  char buf[64];
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const double len = i < lengths.size() ? lengths[i].value() : 0.0;
    const int bucket = std::isfinite(len) ? static_cast<int>(len / 4) : 0;
    std::snprintf(buf, sizeof buf, "%.8f", std::isfinite(len) ? len : -1.0);
    out += std::to_string(bucket) + "\t" + std::string(map_name) + "\t" +
           std::to_string(map.width()) + "\t" + std::to_string(map.height()) + "\t" +
           std::to_string(queries[i].first.x) + "\t" + std::to_string(queries[i].first.y) + "\t" +
           std::to_string(queries[i].second.x) + "\t" + std::to_string(queries[i].second.y) +
           "\t" + buf + "\n";
  }
  return out;
}

GridMap simulate_dynamic(const GridMap& map, double r, std::uint64_t seed,
                         std::span<const Coord> protected_cells) {
  GridMap out = map;
  add_random_obstacles(out, r, seed, protected_cells);
  return out;
}

SuboptCounts count_suboptimal(const std::vector<Expansion>& log, const std::vector<Cost>& truth,
                              const GridMap& map) {
  SuboptCounts out;
  for (const Expansion& e : log) {
    const Cost best = truth.at(map.flat(e.coord));
    if (best.is_infinite()) {
      std::ostringstream msg;
      msg << "expansion of " << e.coord << " which the truth table cannot reach";
      throw std::runtime_error(msg.str());
    }
    if (!(e.g > best)) continue;
    ++out.subopt;
    if (e.parent && e.parent_g > truth.at(map.flat(*e.parent))) ++out.propagated;
  }
  return out;
}

std::uint64_t count_suboptimal_insertions(const std::vector<Generated>& inserted,
                                          const std::vector<Cost>& truth, const GridMap& map) {
  std::uint64_t n = 0;
  for (const Generated& g : inserted) {
    if (g.g > truth.at(map.flat(g.coord))) ++n;
  }
  return n;
}

std::string AlgoConfig::label() const { return std::string(name(algo)) + opts.flag_string(); }

AlgoConfig AlgoConfig::parse(std::string_view label) {
  AlgoConfig cfg;
  const std::size_t dash = label.find('-');
  const auto algo = parse_algorithm(label.substr(0, dash));
  if (!algo) throw std::invalid_argument("unknown algorithm '" + std::string(label) + "'");
  cfg.algo = *algo;
  std::string_view rest = dash == std::string_view::npos ? "" : label.substr(dash);
  while (!rest.empty()) {
    if (rest.substr(0, 2) == "-g") {
      cfg.opts.diagonal_caching = true;
    } else if (rest.substr(0, 2) == "-b") {
      cfg.opts.backwards_scanning = true;
    } else if (rest.substr(0, 2) == "-i") {
      cfg.opts.intersection_pruning = true;
    } else {
      throw std::invalid_argument("unknown variant flag in '" + std::string(label) + "'");
    }
    rest.remove_prefix(2);
  }
  return cfg;
}

namespace {

struct Cell {
  std::size_t query;
  std::size_t algo;
};

std::vector<ReportRow> run_map(const SuiteMap& m, const std::vector<AlgoConfig>& algos,
                               const SuiteOptions& opts) {
  Engine engine(m.map);
  const std::size_t nq = m.queries.size(), na = algos.size();
  std::vector<ReportRow> rows(nq * na);
  std::vector<std::vector<std::uint64_t>> times(nq * na);

  // Counts and correctness come from one recorded pass per cell.
  for (std::size_t q = 0; q < nq; ++q) {
    const auto [s, t] = m.queries[q];
    std::vector<Cost> truth;
    if (opts.verify || opts.count_subopt) truth = dijkstra_table(m.map, s);
    std::optional<Cost> agreed;
    for (std::size_t a = 0; a < na; ++a) {
      SearchOptions so = algos[a].opts;
      so.record_expansions = opts.count_subopt;
      so.record_insertions = opts.count_subopt;
      SearchResult res = engine.run(algos[a].algo, s, t, so);
      const Cost length = res.path.length;
      std::ostringstream where;
      where << m.name << " query " << q << " " << s << "->" << t << " " << algos[a].label();
      if (!truth.empty()) {
        const Cost expected = truth[m.map.flat(t)];
        if (res.path.found != expected.is_finite() || (res.path.found && length != expected)) {
          std::ostringstream msg;
          msg << "optimality check failed: " << where.str() << " returned " << length
              << ", Dijkstra says " << expected;
          throw SuiteError(msg.str());
        }
      } else if (agreed && *agreed != length) {
        std::ostringstream msg;
        msg << "algorithms disagree: " << where.str() << " returned " << length << " vs " << *agreed;
        throw SuiteError(msg.str());
      }
      agreed = length;

      ReportRow& row = rows[q * na + a];
      row.domain = m.domain;
      row.map = m.name;
      row.algo = std::string(name(algos[a].algo));
      row.flags = algos[a].opts.flag_string();
      row.r = m.r;
      row.seed = m.seed;
      row.query_id = static_cast<int>(q);
      row.found = res.path.found;
      row.length = res.path.found ? length.value() : std::numeric_limits<double>::infinity();
      row.expansions = res.metrics.expansions;
      row.insertions = res.metrics.insertions;
      row.hp_opt = res.metrics.hp_opt();
      row.scan_steps = res.metrics.scan_steps;
      if (opts.count_subopt) {
        const SuboptCounts c = count_suboptimal(res.expansions, truth, m.map);
        row.subopt = c.subopt;
        row.propagated = c.propagated;
        row.subopt_ins = count_suboptimal_insertions(res.insertions, truth, m.map);
      }
      if (opts.repetitions <= 0) times[q * na + a].push_back(res.metrics.time_ns);
    }
  }

  // Timing passes: shuffled cell order, warm-up discarded, median kept.
  std::vector<Cell> cells;
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) cells.push_back({q, a});
  }
  std::mt19937_64 rng(opts.order_seed ^ std::hash<std::string>{}(m.name));
  const int passes = std::max(0, opts.repetitions) + (opts.warmup && opts.repetitions > 0 ? 1 : 0);
  for (int pass = 0; pass < passes; ++pass) {
    std::shuffle(cells.begin(), cells.end(), rng);
    const bool keep = !(opts.warmup && pass == 0);
    for (const Cell& c : cells) {
      const auto [s, t] = m.queries[c.query];
      const SearchResult res = engine.run(algos[c.algo].algo, s, t, algos[c.algo].opts);
      const ReportRow& row = rows[c.query * na + c.algo];
      if (res.metrics.expansions != row.expansions || res.metrics.insertions != row.insertions) {
        throw std::logic_error("non-deterministic search counts in " + m.name);
      }
      if (keep) times[c.query * na + c.algo].push_back(res.metrics.time_ns);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& ts = times[i];
    if (ts.empty()) continue;
    std::nth_element(ts.begin(), ts.begin() + ts.size() / 2, ts.end());
    rows[i].time_ns = ts[ts.size() / 2];
  }
  return rows;
}

}  // namespace

SuiteReport run_suite(const std::vector<SuiteMap>& maps, const std::vector<AlgoConfig>& algos,
                      const SuiteOptions& opts) {
  std::vector<std::vector<ReportRow>> per_map(maps.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || maps.size() <= 1) {
    for (std::size_t i = 0; i < maps.size(); ++i) per_map[i] = run_map(maps[i], algos, opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i; (i = next++) < maps.size();) {
          try {
            per_map[i] = run_map(maps[i], algos, opts);
          } catch (...) {
            std::lock_guard lock(err_mu);
            if (!err) err = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (err) std::rethrow_exception(err);
  }
  SuiteReport report;
  for (auto& rows : per_map) {
    report.rows.insert(report.rows.end(), std::make_move_iterator(rows.begin()),
                       std::make_move_iterator(rows.end()));
  }
  return report;
}

const char* const kCsvHeader =
    "domain,map,algo,flags,r,seed,query_id,found,length,expansions,insertions,hp_opt,subopt,"
    "propagated,subopt_ins,scan_steps,time_ns";

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << kCsvHeader << "\n";
  for (const ReportRow& r : rows) {
    for (const std::string* f : {&r.domain, &r.map, &r.algo, &r.flags}) {
      if (f->find_first_of(",\n") != std::string::npos) {
        throw std::invalid_argument("CSV field contains a separator: " + *f);
      }
    }
    os << r.domain << ',' << r.map << ',' << r.algo << ',' << r.flags << ',' << format_double(r.r)
       << ',' << r.seed << ',' << r.query_id << ',' << (r.found ? 1 : 0) << ','
       << format_double(r.length) << ',' << r.expansions << ',' << r.insertions << ',' << r.hp_opt
       << ',' << r.subopt << ',' << r.propagated << ',' << r.subopt_ins << ',' << r.scan_steps << ',' << r.time_ns << "\n";
  }
}

std::vector<ReportRow> parse_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  int lineno = 0;
  for (std::string_view line : split(text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (lineno == 1) {
      if (line != kCsvHeader) throw ParseError("<csv>", 1, "unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 17) throw ParseError("<csv>", lineno, "expected 17 fields");
    ReportRow r;
    r.domain = f[0];
    r.map = f[1];
    r.algo = f[2];
    r.flags = f[3];
    int found = 0;
    const bool ok = parse_number(f[4], r.r) && parse_number(f[5], r.seed) &&
                    parse_number(f[6], r.query_id) && parse_number(f[7], found) &&
                    parse_number(f[8], r.length) && parse_number(f[9], r.expansions) &&
                    parse_number(f[10], r.insertions) && parse_number(f[11], r.hp_opt) &&
                    parse_number(f[12], r.subopt) && parse_number(f[13], r.propagated) &&
                    parse_number(f[14], r.subopt_ins) && parse_number(f[15], r.scan_steps) &&
                    parse_number(f[16], r.time_ns);
    if (!ok) throw ParseError("<csv>", lineno, "malformed numeric field");
    r.found = found != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

Quantiles quantiles(std::vector<double> v) {
  Quantiles q;
  if (v.empty()) return q;
  std::sort(v.begin(), v.end());
  auto at = [&v](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
  };
  q.min = v.front();
  q.q25 = at(0.25);
  q.q50 = at(0.5);
  q.q75 = at(0.75);
  q.max = v.back();
  return q;
}

namespace {

double ratio(double base, double cand) {
  if (cand == 0) return base == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return base / cand;
}

FactorSummary summarize(std::string scope, const std::string& baseline, const std::string& candidate,
                        const std::vector<std::pair<const ReportRow*, const ReportRow*>>& pairs) {
  FactorSummary f;
  f.scope = std::move(scope);
  f.baseline = baseline;
  f.candidate = candidate;
  f.queries = pairs.size();
  double hb = 0, hc = 0, eb = 0, ec = 0, sb = 0, sc = 0, xb = 0, xc = 0, tb = 0, tc = 0;
  std::vector<double> hq, tq;
  for (auto [b, c] : pairs) {
    hb += static_cast<double>(b->hp_opt);
    hc += static_cast<double>(c->hp_opt);
    eb += static_cast<double>(b->expansions);
    ec += static_cast<double>(c->expansions);
    sb += static_cast<double>(b->subopt_ops());
    sc += static_cast<double>(c->subopt_ops());
    xb += static_cast<double>(b->subopt);
    xc += static_cast<double>(c->subopt);
    tb += static_cast<double>(b->time_ns);
    tc += static_cast<double>(c->time_ns);
    hq.push_back(ratio(static_cast<double>(b->hp_opt), static_cast<double>(c->hp_opt)));
    tq.push_back(ratio(static_cast<double>(b->time_ns), static_cast<double>(c->time_ns)));
  }
  f.hp_opt = ratio(hb, hc);
  f.expansions = ratio(eb, ec);
  f.subopt = ratio(sb, sc);
  f.subopt_expd = ratio(xb, xc);
  f.time = ratio(tb, tc);
  f.hp_opt_per_query = quantiles(hq);
  f.time_per_query = quantiles(tq);
  return f;
}

}  // namespace

std::vector<FactorSummary> improvement_factors(const std::vector<ReportRow>& rows,
                                               const std::string& baseline,
                                               const std::string& candidate) {
  using Key = std::pair<std::string, int>;
  std::map<Key, const ReportRow*> base, cand;
  std::vector<std::string> order;
  for (const ReportRow& r : rows) {
    const std::string label = r.label();
    if (label != baseline && label != candidate) continue;
    const Key key{r.domain + "/" + r.map, r.query_id};
    if (std::find(order.begin(), order.end(), key.first) == order.end()) order.push_back(key.first);
    // a self-comparison puts the same row on both sides
    if (label == baseline) base[key] = &r;
    if (label == candidate) cand[key] = &r;
  }
  std::map<std::string, std::vector<std::pair<const ReportRow*, const ReportRow*>>> by_map;
  std::vector<std::pair<const ReportRow*, const ReportRow*>> all;
  for (const auto& [key, b] : base) {
    auto it = cand.find(key);
    if (it == cand.end() || !b->found || !it->second->found) continue;
    by_map[key.first].emplace_back(b, it->second);
    all.emplace_back(b, it->second);
  }
  std::vector<FactorSummary> out;
  for (const std::string& m : order) {
    auto it = by_map.find(m);
    if (it != by_map.end()) out.push_back(summarize(m, baseline, candidate, it->second));
  }
  out.push_back(summarize("all", baseline, candidate, all));
  return out;
}

double subopt_proportion(const std::vector<ReportRow>& rows, const std::string& label) {
  double s = 0, e = 0;
  for (const ReportRow& r : rows) {
    if (r.label() != label) continue;
    s += static_cast<double>(r.subopt);
    e += static_cast<double>(r.expansions);
  }
  return e == 0 ? 0.0 : s / e;
}

std::string format_factor_table(const std::vector<FactorSummary>& factors) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-36s %7s %8s %8s %8s %8s %8s | %s\n", "map", "queries", "hp-opt",
                "expd", "subopt", "sub-expd", "time", "hp-opt per query min/25/50/75/max");
  os << buf;
  for (const FactorSummary& f : factors) {
    std::snprintf(buf, sizeof buf,
                  "%-36s %7zu %8.2f %8.2f %8.2f %8.2f %8.2f | %.2f %.2f %.2f %.2f %.2f\n",
                  f.scope.c_str(), f.queries, f.hp_opt, f.expansions, f.subopt, f.subopt_expd, f.time,
                  f.hp_opt_per_query.min, f.hp_opt_per_query.q25, f.hp_opt_per_query.q50,
                  f.hp_opt_per_query.q75, f.hp_opt_per_query.max);
    os << buf;
  }
  return os.str();
}

}  // namespace gridpath
