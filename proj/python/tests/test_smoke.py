import math

import pytest

import gridpath as gp


def test_open_map_diagonal():
    g = gp.GridMap(10, 10)
    r = gp.search(g, (0, 0), (9, 9), "jps")
    assert r["found"]
    assert r["exact_length"] == (0, 9)
    assert r["length"] == pytest.approx(9 * math.sqrt(2))
    assert r["path"][0] == (0, 0) and r["path"][-1] == (9, 9)


def test_all_algorithms_agree_with_dijkstra():
    g = gp.gen_synthetic(64, 0.75, 0.05, 3)
    engine = gp.Engine(g)
    for s, t in gp.clustered_queries(g, 5, 1):
        truth = gp.distance(g, s, t)
        for label in ["astar", "dijkstra", "jps", "cjps", "cjps-g", "cjps-b", "jps-i"]:
            r = engine.search(s, t, label)
            if math.isinf(truth):
                assert not r["found"]
            else:
                assert r["length"] == pytest.approx(truth, abs=1e-9)


def test_unreachable_target():
    g = gp.GridMap.from_text("type octile\nheight 1\nwidth 3\nmap\n.@.\n")
    r = gp.search(g, (0, 0), (2, 0), "cjps")
    assert not r["found"]
    assert math.isinf(gp.distance(g, (0, 0), (2, 0)))


def test_map_text_round_trip_and_errors():
    g = gp.gen_maze(21, 4)
    assert gp.GridMap.from_text(g.to_text()) == g
    with pytest.raises(gp.ParseError):
        gp.GridMap.from_text("type octile\nheight 1\nwidth 2\nmap\n.?\n")


def test_successors_and_compute_L():
    g = gp.GridMap.from_text("type octile\nheight 3\nwidth 3\nmap\n@..\n...\n...\n")
    assert sorted(gp.successors(g, (1, 1), "E")) == ["E", "N", "NE"]
    assert len(gp.successors(g, (1, 1))) == 7
    assert gp.is_jump_point(g, (1, 1), "E")
    assert gp.compute_L((0, 0), (10, 0), 5) == 0
    assert gp.compute_L((0, 0), (0, 0), 5) == 5
    assert gp.compute_L((0, 0), (5, 0), 10) == 9


def test_suite_and_factors():
    g = gp.gen_synthetic(64, 0.75, 0.01, 2)
    rows = gp.run_suite([("s64", g, gp.clustered_queries(g, 4, 2))], ["jps", "cjps"])
    assert len(rows) == 8
    factors = gp.improvement_factors(rows, "jps", "jps")
    assert factors[-1]["scope"] == "all"
    assert factors[-1]["hp_opt"] == pytest.approx(1.0)
    assert 0.0 <= gp.subopt_proportion(rows, "cjps") <= 1.0
    assert gp.to_csv(rows).startswith("domain,map,algo")
