#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gridpath/bench.hpp"
#include "gridpath/canonical.hpp"
#include "gridpath/generate.hpp"
#include "gridpath/map_io.hpp"
#include "gridpath/search.hpp"

namespace py = pybind11;
using namespace gridpath;

// Coordinates cross the boundary as (x, y) tuples, costs as floats with the
// exact (cardinal, diagonal) step counts alongside where it matters.
namespace {

using XY = std::pair<int, int>;

Coord to_coord(const XY& p) { return Coord{p.first, p.second}; }
XY from_coord(Coord c) { return {c.x, c.y}; }

std::vector<XY> from_coords(const std::vector<Coord>& cs) {
  std::vector<XY> out;
  out.reserve(cs.size());
  for (Coord c : cs) out.push_back(from_coord(c));
  return out;
}

std::vector<std::pair<XY, XY>> from_queries(const std::vector<Query>& qs) {
  std::vector<std::pair<XY, XY>> out;
  for (const auto& [s, t] : qs) out.emplace_back(from_coord(s), from_coord(t));
  return out;
}

std::vector<Query> to_queries(const std::vector<std::pair<XY, XY>>& qs) {
  std::vector<Query> out;
  for (const auto& [s, t] : qs) out.emplace_back(to_coord(s), to_coord(t));
  return out;
}

Incoming to_incoming(const std::optional<std::string>& d) {
  if (!d) return kStart;
  const auto parsed = parse_direction(*d);
  if (!parsed) throw py::value_error("unknown direction '" + *d + "'");
  return *parsed;
}

std::vector<std::string> names(DirSet s) {
  std::vector<std::string> out;
  for (Direction d : kAllDirections) {
    if (s.contains(d)) out.emplace_back(name(d));
  }
  return out;
}

py::tuple exact(Cost c) {
  if (c.is_infinite()) return py::make_tuple(py::none(), py::none());
  return py::make_tuple(c.cardinals, c.diagonals);
}

py::dict row_dict(const ReportRow& r) {
  py::dict d;
  d["domain"] = r.domain;
  d["map"] = r.map;
  d["algo"] = r.algo;
  d["flags"] = r.flags;
  d["r"] = r.r;
  d["seed"] = r.seed;
  d["query_id"] = r.query_id;
  d["found"] = r.found;
  d["length"] = r.length;
  d["expansions"] = r.expansions;
  d["insertions"] = r.insertions;
  d["hp_opt"] = r.hp_opt;
  d["subopt"] = r.subopt;
  d["propagated"] = r.propagated;
  d["subopt_ins"] = r.subopt_ins;
  d["scan_steps"] = r.scan_steps;
  d["time_ns"] = r.time_ns;
  return d;
}

std::vector<ReportRow> rows_from(const py::list& rows) {
  std::vector<ReportRow> out;
  for (const auto& item : rows) {
    const py::dict d = item.cast<py::dict>();
    ReportRow r;
    r.domain = d["domain"].cast<std::string>();
    r.map = d["map"].cast<std::string>();
    r.algo = d["algo"].cast<std::string>();
    r.flags = d["flags"].cast<std::string>();
    r.r = d["r"].cast<double>();
    r.seed = d["seed"].cast<std::uint64_t>();
    r.query_id = d["query_id"].cast<int>();
    r.found = d["found"].cast<bool>();
    r.length = d["length"].cast<double>();
    r.expansions = d["expansions"].cast<std::uint64_t>();
    r.insertions = d["insertions"].cast<std::uint64_t>();
    r.hp_opt = d["hp_opt"].cast<std::uint64_t>();
    r.subopt = d["subopt"].cast<std::uint64_t>();
    r.propagated = d["propagated"].cast<std::uint64_t>();
    r.subopt_ins = d["subopt_ins"].cast<std::uint64_t>();
    r.scan_steps = d["scan_steps"].cast<std::uint64_t>();
    r.time_ns = d["time_ns"].cast<std::uint64_t>();
    out.push_back(std::move(r));
  }
  return out;
}

py::dict result_dict(const SearchResult& r) {
  py::dict d;
  d["found"] = r.path.found;
  d["length"] = r.path.length.value();
  d["exact_length"] = exact(r.path.length);
  d["jump_points"] = from_coords(r.path.jump_points);
  d["path"] = from_coords(r.path.full_path);
  d["expansions"] = r.metrics.expansions;
  d["insertions"] = r.metrics.insertions;
  d["hp_opt"] = r.metrics.hp_opt();
  d["scan_steps"] = r.metrics.scan_steps;
  d["time_ns"] = r.metrics.time_ns;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gridpath, m) {
  m.doc() = "Grid pathfinding: A*, Dijkstra, JPS and constrained JPS on 8-connected grids";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SuiteError>(m, "SuiteError", PyExc_RuntimeError);

  py::class_<GridMap>(m, "GridMap")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_static("from_text", [](const std::string& text) { return load_map(text); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_map_file(path); }, py::arg("path"))
      .def("to_text", [](const GridMap& g) { return write_map(g); })
      .def("save", [](const GridMap& g, const std::string& path) { write_map_file(g, path); }, py::arg("path"))
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def_property_readonly("traversable_count", &GridMap::traversable_count)
      .def("traversable", [](const GridMap& g, const XY& c) { return g.traversable(to_coord(c)); })
      .def("set_blocked",
           [](GridMap& g, const XY& c, bool blocked) { g.set_blocked(to_coord(c), blocked); },
           py::arg("cell"), py::arg("blocked") = true)
      .def("checksum", &GridMap::checksum)
      .def("__eq__", [](const GridMap& a, const GridMap& b) { return a == b; })
      .def("__repr__", [](const GridMap& g) {
        return "<GridMap " + std::to_string(g.width()) + "x" + std::to_string(g.height()) + ">";
      });

  m.def("gen_synthetic", &gen_synthetic, py::arg("side"), py::arg("blockage"), py::arg("density"),
        py::arg("seed"));
  m.def("gen_maze", &gen_maze, py::arg("side"), py::arg("seed"));
  m.def("gen_random_map", &gen_random_map, py::arg("width"), py::arg("height"), py::arg("density"),
        py::arg("seed"));
  m.def("simulate_dynamic",
        [](const GridMap& g, double r, std::uint64_t seed, const std::vector<XY>& keep) {
          std::vector<Coord> cells;
          for (const XY& c : keep) cells.push_back(to_coord(c));
          return simulate_dynamic(g, r, seed, cells);
        },
        py::arg("map"), py::arg("r"), py::arg("seed"), py::arg("protected") = std::vector<XY>{});
  m.def("clustered_queries",
        [](const GridMap& g, int n, std::uint64_t seed) { return from_queries(gen_clustered_queries(g, n, seed)); },
        py::arg("map"), py::arg("n"), py::arg("seed"));
  m.def("random_queries",
        [](const GridMap& g, int n, std::uint64_t seed) { return from_queries(gen_random_queries(g, n, seed)); },
        py::arg("map"), py::arg("n"), py::arg("seed"));

  m.def("successors",
        [](const GridMap& g, const XY& c, const std::optional<std::string>& incoming) {
          return names(successors(g, to_coord(c), to_incoming(incoming)));
        },
        py::arg("map"), py::arg("cell"), py::arg("incoming") = py::none(),
        "Diagonal-first successor directions; incoming=None means the start node.");
  m.def("is_jump_point",
        [](const GridMap& g, const XY& c, const std::string& incoming) {
          const auto d = to_incoming(incoming);
          return is_jump_point(g, to_coord(c), *d);
        },
        py::arg("map"), py::arg("cell"), py::arg("incoming"));
  m.def("is_corner_point", [](const GridMap& g, const XY& c) { return is_corner_point(g, to_coord(c)); },
        py::arg("map"), py::arg("cell"));

  m.def("compute_L",
        [](const std::pair<int, int>& g_a, const std::pair<int, int>& g_v, int dist) {
          return compute_L(Cost(g_a.first, g_a.second), Cost(g_v.first, g_v.second), dist);
        },
        py::arg("g_a"), py::arg("g_v"), py::arg("dist"),
        "g values are exact (cardinal, diagonal) step counts.");

  m.def("distance",
        [](const GridMap& g, const XY& s, const XY& t) {
          return dijkstra_table(g, to_coord(s))[g.flat(to_coord(t))].value();
        },
        py::arg("map"), py::arg("start"), py::arg("target"), "True shortest distance (Dijkstra); inf if unreachable.");

  py::class_<Engine>(m, "Engine")
      .def(py::init<GridMap>(), py::arg("map"))
      .def_property_readonly("map", &Engine::map)
      .def("search",
           [](Engine& e, const XY& s, const XY& t, const std::string& algo) {
             const AlgoConfig cfg = AlgoConfig::parse(algo);
             return result_dict(e.run(cfg.algo, to_coord(s), to_coord(t), cfg.opts));
           },
           py::arg("start"), py::arg("target"), py::arg("algo") = "cjps",
           "algo is a label such as 'astar', 'jps', 'cjps-g' or 'jps-b-i'.");

  m.def("search",
        [](const GridMap& g, const XY& s, const XY& t, const std::string& algo) {
          Engine e(g);
          const AlgoConfig cfg = AlgoConfig::parse(algo);
          return result_dict(e.run(cfg.algo, to_coord(s), to_coord(t), cfg.opts));
        },
        py::arg("map"), py::arg("start"), py::arg("target"), py::arg("algo") = "cjps");

  m.def("run_suite",
        [](const std::vector<std::tuple<std::string, GridMap, std::vector<std::pair<XY, XY>>>>& maps,
           const std::vector<std::string>& labels, int repetitions, bool count_subopt, bool verify, int jobs) {
          std::vector<SuiteMap> sms;
          for (const auto& [nm, g, qs] : maps) {
            SuiteMap sm;
            sm.domain = "python";
            sm.name = nm;
            sm.map = g;
            sm.queries = to_queries(qs);
            sms.push_back(std::move(sm));
          }
          std::vector<AlgoConfig> algos;
          for (const auto& l : labels) algos.push_back(AlgoConfig::parse(l));
          SuiteOptions opts;
          opts.repetitions = repetitions;
          opts.warmup = repetitions > 0;
          opts.count_subopt = count_subopt;
          opts.verify = verify;
          opts.jobs = jobs;
          SuiteReport rep;
          {
            py::gil_scoped_release release;
            rep = run_suite(sms, algos, opts);
          }
          py::list out;
          for (const ReportRow& r : rep.rows) out.append(row_dict(r));
          return out;
        },
        py::arg("maps"), py::arg("labels"), py::arg("repetitions") = 0, py::arg("count_subopt") = true,
        py::arg("verify") = true, py::arg("jobs") = 1,
        "maps: list of (name, GridMap, [(start, target), ...]). Returns one dict per (query, label).");

  m.def("improvement_factors",
        [](const py::list& rows, const std::string& baseline, const std::string& candidate) {
          py::list out;
          for (const FactorSummary& f : improvement_factors(rows_from(rows), baseline, candidate)) {
            py::dict d;
            d["scope"] = f.scope;
            d["queries"] = f.queries;
            d["hp_opt"] = f.hp_opt;
            d["expansions"] = f.expansions;
            d["subopt"] = f.subopt;
            d["subopt_expd"] = f.subopt_expd;
            d["time"] = f.time;
            const Quantiles& q = f.hp_opt_per_query;
            d["hp_opt_quantiles"] = std::vector<double>{q.min, q.q25, q.q50, q.q75, q.max};
            out.append(d);
          }
          return out;
        },
        py::arg("rows"), py::arg("baseline"), py::arg("candidate"));

  m.def("subopt_proportion",
        [](const py::list& rows, const std::string& label) { return subopt_proportion(rows_from(rows), label); },
        py::arg("rows"), py::arg("label"));

  m.def("to_csv",
        [](const py::list& rows) {
          std::ostringstream os;
          write_csv(os, rows_from(rows));
          return os.str();
        },
        py::arg("rows"));
}
