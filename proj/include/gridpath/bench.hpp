#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/generate.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/search.hpp"

namespace gridpath {

struct ScenarioQuery {
  int bucket = 0;
  std::string map_name;
  int width = 0;
  int height = 0;
  Coord start;
  Coord target;
  double reference_length = 0.0;
};

// MovingAI `.scen` (version 1, nine tab-separated fields per row).
std::vector<ScenarioQuery> load_scen(std::string_view text, std::string_view source = "<scen>");
std::vector<ScenarioQuery> load_scen_file(const std::string& path);
std::string write_scen(std::string_view map_name, const GridMap& map,
                       const std::vector<Query>& queries, const std::vector<Cost>& lengths);

// Copy of `map` with floor(r * traversable) random cells blocked, never
// touching `protected_cells`.
GridMap simulate_dynamic(const GridMap& map, double r, std::uint64_t seed,
                         std::span<const Coord> protected_cells = {});

struct SuboptCounts {
  std::uint64_t subopt = 0;
  std::uint64_t propagated = 0;
};

// An expansion is suboptimal when its g exceeds the true distance; it is
// propagated when its parent was expanded suboptimally too. Throws
// std::runtime_error for an expansion of a cell the truth table cannot reach.
SuboptCounts count_suboptimal(const std::vector<Expansion>& log, const std::vector<Cost>& truth,
                              const GridMap& map);

// Open-list insertions whose g exceeds the true distance.
std::uint64_t count_suboptimal_insertions(const std::vector<Generated>& inserted,
                                          const std::vector<Cost>& truth, const GridMap& map);

struct AlgoConfig {
  Algorithm algo = Algorithm::JPS;
  SearchOptions opts;

  // "jps", "cjps-g", "jps-b", "cjps-i", ...
  std::string label() const;
  static AlgoConfig parse(std::string_view label);
};

struct SuiteMap {
  std::string domain;
  std::string name;
  GridMap map;
  std::vector<Query> queries;
  double r = 0.0;
  std::uint64_t seed = 0;
};

struct SuiteOptions {
  int repetitions = 1;
  bool warmup = true;
  bool count_subopt = true;  // needs a Dijkstra table per query
  bool verify = true;        // compare every length with the Dijkstra table
  std::uint64_t order_seed = 0;
  int jobs = 1;
};

struct ReportRow {
  std::string domain;
  std::string map;
  std::string algo;
  std::string flags;
  double r = 0.0;
  std::uint64_t seed = 0;
  int query_id = 0;
  bool found = false;
  double length = 0.0;
  std::uint64_t expansions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t hp_opt = 0;
  std::uint64_t subopt = 0;
  std::uint64_t propagated = 0;
  std::uint64_t subopt_ins = 0;
  std::uint64_t scan_steps = 0;
  std::uint64_t time_ns = 0;

  std::string label() const { return algo + flags; }
  // heap operations (expansions + insertions) on suboptimal nodes
  std::uint64_t subopt_ops() const { return subopt + subopt_ins; }
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SuiteReport {
  std::vector<ReportRow> rows;
};

class SuiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs every (query, algorithm) cell `repetitions` times in shuffled order
// after an optional warm-up pass, keeps the median time, and checks each
// answer against the Dijkstra truth (SuiteError on any mismatch).
SuiteReport run_suite(const std::vector<SuiteMap>& maps, const std::vector<AlgoConfig>& algos,
                      const SuiteOptions& opts = {});

extern const char* const kCsvHeader;
void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_csv(std::string_view text);

struct Quantiles {
  double min = 0, q25 = 0, q50 = 0, q75 = 0, max = 0;
};
Quantiles quantiles(std::vector<double> values);

// Metric(baseline) / Metric(candidate) summed over queries both solved.
struct FactorSummary {
  std::string scope;  // map name, or "all"
  std::string baseline;
  std::string candidate;
  std::size_t queries = 0;
  double hp_opt = 1.0;
  double expansions = 1.0;
  double subopt = 1.0;       // heap operations on suboptimal nodes
  double subopt_expd = 1.0;  // suboptimal expansions only
  double time = 1.0;
  Quantiles hp_opt_per_query;
  Quantiles time_per_query;
};

std::vector<FactorSummary> improvement_factors(const std::vector<ReportRow>& rows,
                                               const std::string& baseline,
                                               const std::string& candidate);

// sum(subopt) / sum(expansions) over the rows of one algorithm label.
double subopt_proportion(const std::vector<ReportRow>& rows, const std::string& label);

std::string format_factor_table(const std::vector<FactorSummary>& factors);

}  // namespace gridpath
