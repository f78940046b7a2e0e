"""Grid pathfinding: A*, Dijkstra, JPS and constrained JPS (CJPS).

Cells are (x, y) tuples with x the column and y the row. Algorithm labels
combine a base ("astar", "dijkstra", "jps", "cjps") with optional flags:
"-g" diagonal caching, "-b" backwards scanning, "-i" intersection pruning.
"""

from ._gridpath import (
    Engine,
    GridMap,
    ParseError,
    SuiteError,
    clustered_queries,
    compute_L,
    distance,
    gen_maze,
    gen_random_map,
    gen_synthetic,
    improvement_factors,
    is_corner_point,
    is_jump_point,
    random_queries,
    run_suite,
    search,
    simulate_dynamic,
    subopt_proportion,
    successors,
    to_csv,
)

__all__ = [
    "Engine",
    "GridMap",
    "ParseError",
    "SuiteError",
    "clustered_queries",
    "compute_L",
    "distance",
    "gen_maze",
    "gen_random_map",
    "gen_synthetic",
    "improvement_factors",
    "is_corner_point",
    "is_jump_point",
    "random_queries",
    "run_suite",
    "search",
    "simulate_dynamic",
    "subopt_proportion",
    "successors",
    "to_csv",
]

__version__ = "0.1.0"
