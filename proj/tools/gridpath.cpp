// gridpath: solve, generate and benchmark grid pathfinding instances.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridpath/bench.hpp"
#include "gridpath/generate.hpp"
#include "gridpath/map_io.hpp"
#include "gridpath/search.hpp"

using namespace gridpath;

namespace {

struct SyntheticSpec {
  int side = 512;
  double b = 0.75;
  double r = 0.0;
  std::optional<std::uint64_t> seed;
};

// "s=64,b=0.75,r=0.01,seed=7"; any key may be omitted.
SyntheticSpec parse_synthetic(const std::string& text) {
  SyntheticSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--synthetic", "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      if (key == "s") spec.side = std::stoi(val);
      else if (key == "b") spec.b = std::stod(val);
      else if (key == "r") spec.r = std::stod(val);
      else if (key == "seed") spec.seed = std::stoull(val);
      else throw CLI::ValidationError("--synthetic", "unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--synthetic", "bad value for '" + key + "': " + val);
    }
  }
  if (spec.side <= 0) throw CLI::ValidationError("--synthetic", "s must be positive");
  return spec;
}

struct Common {
  std::string synthetic;
  std::string map_path;
  std::string scen_path;
  int queries = 100;
  int maps = 1;
  double dynamic = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
};

void add_sources(CLI::App* cmd, Common& c) {
  auto* syn = cmd->add_option("--synthetic", c.synthetic, "synthetic map: s=..,b=..,r=..,seed=..");
  auto* map = cmd->add_option("--map", c.map_path, "MovingAI .map file")->check(CLI::ExistingFile);
  syn->excludes(map);
  auto* scen = cmd->add_option("--scen", c.scen_path, "MovingAI .scen file")->check(CLI::ExistingFile);
  auto* q = cmd->add_option("--queries", c.queries, "number of generated queries")->check(CLI::PositiveNumber);
  scen->excludes(q);
  scen->excludes(syn);
  cmd->add_option("--maps", c.maps, "synthetic maps with consecutive seeds")->check(CLI::PositiveNumber);
  cmd->add_option("--dynamic", c.dynamic, "block this fraction of a loaded map's free cells")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", c.seed, "seed when the map spec has none (else GRIDPATH_SEED)");
  cmd->add_option("--jobs", c.jobs, "worker threads across maps")->check(CLI::PositiveNumber);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GRIDPATH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw std::runtime_error(std::string("GRIDPATH_SEED is not a number: ") + env);
    }
  }
  const std::uint64_t drawn = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
  std::cerr << "seed " << drawn << "\n";
  return drawn;
}

std::vector<SuiteMap> build_maps(const Common& c, bool need_queries = true) {
  std::vector<SuiteMap> out;
  if (!c.synthetic.empty()) {
    const SyntheticSpec spec = parse_synthetic(c.synthetic);
    const std::uint64_t seed0 = spec.seed ? *spec.seed : resolve_seed(c.seed);
    for (int k = 0; k < c.maps; ++k) {
      SuiteMap sm;
      sm.domain = "synthetic";
      sm.seed = seed0 + static_cast<std::uint64_t>(k);
      sm.r = spec.r;
      std::ostringstream nm;
      nm << "s" << spec.side << "_b" << spec.b << "_r" << spec.r << "_seed" << sm.seed;
      sm.name = nm.str();
      sm.map = gen_synthetic(spec.side, spec.b, spec.r, sm.seed);
      if (need_queries) sm.queries = gen_clustered_queries(sm.map, c.queries, sm.seed);
      out.push_back(std::move(sm));
    }
    return out;
  }
  if (c.map_path.empty()) throw CLI::RequiredError("--map or --synthetic");

  SuiteMap sm;
  sm.domain = std::filesystem::path(c.map_path).parent_path().filename().string();
  if (sm.domain.empty()) sm.domain = "file";
  sm.name = std::filesystem::path(c.map_path).stem().string();
  sm.map = load_map_file(c.map_path);
  if (!c.scen_path.empty()) {
    for (const ScenarioQuery& q : load_scen_file(c.scen_path)) {
      if (q.width != sm.map.width() || q.height != sm.map.height()) {
        throw std::runtime_error(c.scen_path + ": scenario is for a " + std::to_string(q.width) + "x" +
                                 std::to_string(q.height) + " map, " + c.map_path + " is " +
                                 std::to_string(sm.map.width()) + "x" + std::to_string(sm.map.height()));
      }
      sm.queries.emplace_back(q.start, q.target);
    }
  }
  const bool seeded = c.dynamic > 0 || (need_queries && c.scen_path.empty());
  const std::uint64_t seed = seeded ? resolve_seed(c.seed) : 0;
  sm.seed = seed;
  if (need_queries && c.scen_path.empty()) sm.queries = gen_random_queries(sm.map, c.queries, seed);
  if (c.dynamic > 0) {
    std::vector<Coord> keep;
    for (const auto& [s, t] : sm.queries) {
      keep.push_back(s);
      keep.push_back(t);
    }
    sm.map = simulate_dynamic(sm.map, c.dynamic, seed, keep);
    sm.r = c.dynamic;
  }
  out.push_back(std::move(sm));
  return out;
}

std::size_t total_queries(const std::vector<SuiteMap>& maps) {
  std::size_t n = 0;
  for (const auto& m : maps) n += m.queries.size();
  return n;
}

void emit_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, rows);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error(path + ": cannot open for writing");
  write_csv(f, rows);
}

AlgoConfig algo_from_flags(const std::string& algo, bool g, bool b, bool inter) {
  AlgoConfig cfg = AlgoConfig::parse(algo);
  cfg.opts.diagonal_caching |= g;
  cfg.opts.backwards_scanning |= b;
  cfg.opts.intersection_pruning |= inter;
  return cfg;
}

std::vector<AlgoConfig> all_configs() {
  std::vector<AlgoConfig> out = {AlgoConfig::parse("astar"), AlgoConfig::parse("dijkstra")};
  for (const char* a : {"jps", "cjps"}) {
    for (const char* f : {"", "-g", "-b", "-g-b", "-i", "-g-i", "-b-i", "-g-b-i"}) {
      out.push_back(AlgoConfig::parse(std::string(a) + f));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid pathfinding: A*, Dijkstra, JPS and constrained JPS"};
  app.require_subcommand(1);

  Common c;
  std::string algo = "cjps";
  bool g = false, b = false, inter = false, verify = false, subopt = false;
  int reps = 0;

  auto* run = app.add_subcommand("run", "solve queries and write per-query CSV");
  add_sources(run, c);
  run->add_option("--algo", algo, "astar, dijkstra, jps, cjps (flags may be appended, e.g. cjps-g)");
  run->add_flag("-g,--diagonal-caching", g, "cache g at corner points during diagonal scans");
  run->add_flag("-b,--backwards", b, "label corner points with a backwards scan");
  run->add_flag("-i,--intersection", inter, "intersect successor sets of equal-cost arrivals");
  run->add_flag("--verify", verify, "check every length against Dijkstra");
  run->add_flag("--subopt", subopt, "count suboptimal expansions (needs Dijkstra per query)");
  run->add_option("--reps", reps, "timing repetitions per query (0: time the counting pass)");
  run->add_option("--out", c.out, "CSV path (default stdout)");

  std::string baseline = "jps", candidate = "cjps";
  bool no_subopt = false;
  auto* bench = app.add_subcommand("bench", "compare two algorithms and print improvement factors");
  add_sources(bench, c);
  bench->add_option("--baseline", baseline, "baseline label");
  bench->add_option("--candidate", candidate, "candidate label");
  bench->add_option("--reps", reps, "timing repetitions per query");
  bench->add_flag("--no-subopt", no_subopt, "skip suboptimal-expansion counting");
  bench->add_option("--out", c.out, "also write the per-query CSV here");

  std::string gen_maze_side;
  auto* gen = app.add_subcommand("gen", "write a generated .map (and optionally a .scen)");
  gen->add_option("--synthetic", c.synthetic, "synthetic map: s=..,b=..,r=..,seed=..");
  gen->add_option("--maze", gen_maze_side, "perfect maze of this side instead");
  gen->add_option("--queries", c.queries, "queries in the .scen")->check(CLI::PositiveNumber);
  gen->add_option("--seed", c.seed, "seed when the map spec has none (else GRIDPATH_SEED)");
  gen->add_option("--out", c.out, ".map output path")->required();
  std::string scen_out;
  gen->add_option("--scen", scen_out, ".scen output path with optimal lengths");

  std::string only;
  auto* ver = app.add_subcommand("verify", "check every algorithm/flag combination against Dijkstra");
  add_sources(ver, c);
  ver->add_option("--algo", only, "restrict to one label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      const auto maps = build_maps(c);
      SuiteOptions so;
      so.repetitions = reps;
      so.warmup = reps > 0;
      so.verify = verify;
      so.count_subopt = subopt;
      so.jobs = c.jobs;
      std::vector<AlgoConfig> algos = {algo_from_flags(algo, g, b, inter)};
      try {
        const SuiteReport rep = run_suite(maps, algos, so);
        emit_csv(c.out, rep.rows);
      } catch (const SuiteError& e) {
        std::cerr << e.what() << "\nverification FAILED\n";
        return 1;
      }
      if (verify) {
        const auto n = total_queries(maps);
        std::cerr << "verified " << n << "/" << n << " optimal\n";
      }
      return 0;
    }

    if (*bench) {
      const auto maps = build_maps(c);
      SuiteOptions so;
      so.repetitions = reps;
      so.warmup = reps > 0;
      so.count_subopt = !no_subopt;
      so.verify = true;
      so.jobs = c.jobs;
      const AlgoConfig base = AlgoConfig::parse(baseline), cand = AlgoConfig::parse(candidate);
      std::vector<AlgoConfig> algos = {base};
      if (cand.label() != base.label()) algos.push_back(cand);
      const SuiteReport rep = run_suite(maps, algos, so);
      if (!c.out.empty()) emit_csv(c.out, rep.rows);
      std::cout << base.label() << " / " << cand.label() << " (>1 favours " << cand.label() << ")\n";
      std::cout << format_factor_table(improvement_factors(rep.rows, base.label(), cand.label()));
      if (!no_subopt) {
        std::cout << "subopt proportion: " << base.label() << " " << subopt_proportion(rep.rows, base.label())
                  << ", " << cand.label() << " " << subopt_proportion(rep.rows, cand.label()) << "\n";
      }
      return 0;
    }

    if (*gen) {
      GridMap map;
      std::string name;
      std::uint64_t seed = 0;
      if (!gen_maze_side.empty()) {
        if (!c.synthetic.empty()) throw CLI::ValidationError("gen", "--maze and --synthetic are exclusive");
        seed = resolve_seed(c.seed);
        map = gen_maze(std::stoi(gen_maze_side), seed);
      } else if (!c.synthetic.empty()) {
        const SyntheticSpec spec = parse_synthetic(c.synthetic);
        seed = spec.seed ? *spec.seed : resolve_seed(c.seed);
        map = gen_synthetic(spec.side, spec.b, spec.r, seed);
      } else {
        throw CLI::RequiredError("--synthetic or --maze");
      }
      write_map_file(map, c.out);
      if (!scen_out.empty()) {
        const auto queries = gen_clustered_queries(map, c.queries, seed);
        std::vector<Cost> lengths;
        for (const auto& [s, t] : queries) lengths.push_back(dijkstra_table(map, s)[map.flat(t)]);
        std::ofstream f(scen_out);
        if (!f) throw std::runtime_error(scen_out + ": cannot open for writing");
        f << write_scen(std::filesystem::path(c.out).filename().string(), map, queries, lengths);
      }
      return 0;
    }

    if (*ver) {
      const auto maps = build_maps(c);
      std::vector<AlgoConfig> algos = only.empty() ? all_configs() : std::vector{AlgoConfig::parse(only)};
      SuiteOptions so;
      so.repetitions = 0;
      so.count_subopt = false;
      so.jobs = c.jobs;
      try {
        run_suite(maps, algos, so);
      } catch (const SuiteError& e) {
        std::cerr << e.what() << "\nverification FAILED\n";
        return 1;
      }
      const auto n = total_queries(maps);
      std::cout << algos.size() << " configurations, verified " << n << "/" << n << " optimal\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
