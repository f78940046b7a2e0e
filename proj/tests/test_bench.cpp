#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gridpath/bench.hpp"
#include "gridpath/map_io.hpp"
#include "support.hpp"

using namespace gridpath;

TEST_CASE("scenario parser") {
  const auto q = load_scen("version 1\n0\tm.map\t8\t8\t0\t0\t7\t7\t9.89949494\n");
  REQUIRE(q.size() == 1);
  CHECK(q[0].map_name == "m.map");
  CHECK(q[0].start == Coord{0, 0});
  CHECK(q[0].target == Coord{7, 7});
  CHECK(std::abs(q[0].reference_length - 7 * std::sqrt(2.0)) < 1e-6);

  CHECK(load_scen("version 1\n").empty());
  CHECK_THROWS_AS(load_scen("0\tm.map\t8\t8\t0\t0\t7\t7\t1\n"), ParseError);
  try {
    load_scen("version 1\n0\tm.map\t8\t8\t0\t0\t7\t7\t1\n0\tm.map\t8\t8\t0\t0\t7\n", "x.scen");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(load_scen("version 1\n0\tm.map\t8\t8\t0\t0\t9\t7\t1\n"), ParseError);

  const GridMap m = gen_synthetic(16, 0, 0, 0);
  const std::vector<Query> qs = {{{0, 0}, {15, 15}}, {{1, 2}, {3, 4}}};
  const auto text = write_scen("s.map", m, qs, {Cost(0, 15), Cost(0, 2)});
  const auto back = load_scen(text);
  REQUIRE(back.size() == 2);
  CHECK(back[1].start == Coord{1, 2});
  CHECK(std::abs(back[0].reference_length - 15 * std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("dynamic simulation") {
  const GridMap open(512, 512);
  CHECK(simulate_dynamic(open, 0, 1) == open);
  const GridMap d = simulate_dynamic(open, 0.001, 1);
  CHECK(open.traversable_count() - d.traversable_count() == 262);

  const std::vector<Coord> endpoints = {{0, 0}, {511, 511}, {100, 100}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GridMap x = simulate_dynamic(open, 0.3, seed, endpoints);
    for (Coord c : endpoints) CHECK(x.traversable(c));
  }
  CHECK(simulate_dynamic(open, 0.01, 5) == simulate_dynamic(open, 0.01, 5));
}

TEST_CASE("suboptimality accounting") {
  const GridMap m(4, 1);
  const auto truth = dijkstra_table(m, {0, 0});
  std::vector<Expansion> log = {
      {{0, 0}, Cost(0, 0), std::nullopt, Cost::infinity()},
      {{1, 0}, Cost(2, 0), Coord{0, 0}, Cost(0, 0)},  // suboptimal, parent fine
      {{2, 0}, Cost(3, 0), Coord{1, 0}, Cost(2, 0)},  // suboptimal, parent suboptimal
      {{3, 0}, Cost(3, 0), Coord{2, 0}, Cost(2, 0)},  // optimal
  };
  const auto c = count_suboptimal(log, truth, m);
  CHECK(c.subopt == 2);
  CHECK(c.propagated == 1);

  const std::vector<Generated> ins = {{{1, 0}, Cost(1, 0), Direction::E},
                                      {{2, 0}, Cost(3, 0), Direction::E},
                                      {{3, 0}, Cost(2, 1), Direction::E}};
  CHECK(count_suboptimal_insertions(ins, truth, m) == 2);

  GridMap split(3, 1);
  split.set_blocked({1, 0}, true);
  const auto t2 = dijkstra_table(split, {0, 0});
  CHECK_THROWS(count_suboptimal({{{2, 0}, Cost(1, 0), std::nullopt, Cost(0, 0)}}, t2, split));
}

TEST_CASE("algorithm labels") {
  CHECK(AlgoConfig::parse("cjps-g").label() == "cjps-g");
  CHECK(AlgoConfig::parse("jps-b").opts.backwards_scanning);
  CHECK(AlgoConfig::parse("cjps").algo == Algorithm::CJPS);
  CHECK_THROWS(AlgoConfig::parse("bfs"));
  CHECK_THROWS(AlgoConfig::parse("jps-x"));
}

TEST_CASE("suite: rows, determinism, self comparison, CSV round trip") {
  SuiteMap sm;
  sm.domain = "synthetic";
  sm.name = "s64";
  sm.map = gen_synthetic(64, 0.75, 0.01, 3);
  sm.queries = gen_clustered_queries(sm.map, 6, 1);
  sm.r = 0.01;
  sm.seed = 3;

  SuiteOptions opts;
  opts.repetitions = 1;
  const std::vector<AlgoConfig> algos = {AlgoConfig::parse("jps"), AlgoConfig::parse("cjps")};
  const SuiteReport a = run_suite({sm}, algos, opts);
  CHECK(a.rows.size() == 12);
  const SuiteReport b = run_suite({sm}, algos, opts);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].expansions == b.rows[i].expansions);
    CHECK(a.rows[i].subopt == b.rows[i].subopt);
    CHECK(a.rows[i].scan_steps == b.rows[i].scan_steps);
    CHECK(a.rows[i].propagated <= a.rows[i].subopt);
    CHECK(a.rows[i].subopt_ins <= a.rows[i].insertions);
    CHECK(a.rows[i].subopt <= a.rows[i].expansions);
    CHECK(a.rows[i].hp_opt == a.rows[i].expansions + a.rows[i].insertions);
  }

  const auto self = improvement_factors(a.rows, "jps", "jps");
  for (const auto& f : self) {
    CHECK(f.hp_opt == doctest::Approx(1.0));
    CHECK(f.expansions == doctest::Approx(1.0));
    CHECK(f.hp_opt_per_query.min == doctest::Approx(1.0));
    CHECK(f.hp_opt_per_query.max == doctest::Approx(1.0));
  }
  const auto jc = improvement_factors(a.rows, "jps", "cjps");
  CHECK(jc.back().scope == "all");
  CHECK(jc.back().queries == 6);
  CHECK(format_factor_table(jc).find("all") != std::string::npos);

  std::ostringstream csv;
  write_csv(csv, a.rows);
  CHECK(parse_csv(csv.str()) == a.rows);

  SuiteMap one = sm;
  one.queries.resize(1);
  const SuiteReport single = run_suite({one}, algos, opts);
  CHECK(single.rows.size() == 2);

  // parallel workers give the same counts in the same order
  SuiteOptions par = opts;
  par.jobs = 2;
  SuiteMap other = sm;
  other.name = "s64b";
  const SuiteReport p = run_suite({sm, other}, algos, par);
  CHECK(p.rows.size() == 24);
  CHECK(p.rows[0].expansions == a.rows[0].expansions);
}

TEST_CASE("quantiles") {
  const Quantiles q = quantiles({5, 1, 3, 2, 4});
  CHECK(q.min == 1);
  CHECK(q.q25 == 2);
  CHECK(q.q50 == 3);
  CHECK(q.q75 == 4);
  CHECK(q.max == 5);
  CHECK(quantiles({1, 2}).q50 == doctest::Approx(1.5));
}
