import json

import pytest

pc = pytest.importorskip("platoon_coord")


def test_network_shape():
    net = pc.se33_network()
    assert len(net["nodes"]) == 33
    assert len(net["edges"]) == 104
    assert all(n["kind"] == "hub" for n in net["nodes"])


def test_shortest_path_endpoints():
    path = pc.shortest_path(1, 33)
    assert path[0] == 1 and path[-1] == 33
    assert len(set(path)) == len(path)


def test_generate_is_deterministic():
    a = pc.generate_scenario(40, [0.5, 0.3, 0.2], seed=7)
    b = pc.generate_scenario(40, [0.5, 0.3, 0.2], seed=7)
    c = pc.generate_scenario(40, [0.5, 0.3, 0.2], seed=8)
    assert a == b
    assert a != c
    assert len(a["trucks"]) == 40
    fleets = [t["fleet"] for t in a["trucks"]]
    assert [fleets.count(f) for f in (1, 2, 3)] == [20, 12, 8]


def test_run_verify_report_roundtrip():
    sc = pc.generate_scenario(60, [0.4, 0.3, 0.2, 0.1], seed=3)
    result = pc.run_simulation(sc, "pareto")
    assert result["strategy"] == "pareto"
    assert len(result["instances"]) > 0
    assert pc.verify_result(result) == []

    report = pc.make_report(result, sc)
    assert report["total_micros"] == result["total_profit_micros"]
    assert 0.0 <= report["fuel_reduction_pct"] <= 10.0
    assert {f["fleet"] for f in report["fleets"]} == {1, 2, 3, 4}


def test_runs_are_reproducible():
    sc = pc.generate_scenario(50, [0.6, 0.4], seed=11)
    runs = [
        pc.run_simulation(sc, "sysmax", include_timing=False) for _ in range(2)
    ]
    assert json.dumps(runs[0], sort_keys=True) == json.dumps(runs[1], sort_keys=True)


def test_strategy_ordering():
    sc = pc.generate_scenario(80, [0.4, 0.3, 0.2, 0.1], seed=5)
    totals = {
        s: pc.run_simulation(sc, s, compare=False)["total_profit_micros"]
        for s in pc.STRATEGIES
    }
    assert totals["single"] <= totals["pareto"] <= totals["sysmax"]


def test_solve_exact_cover():
    instance = {
        "n_elements": 3,
        "candidates": [
            {"members": [0], "weight": 0, "side": []},
            {"members": [1], "weight": 0, "side": []},
            {"members": [2], "weight": 0, "side": []},
            {"members": [0, 1], "weight": 5, "side": []},
            {"members": [1, 2], "weight": 4, "side": []},
        ],
        "floors": [],
    }
    assert pc.solve_exact_cover(instance) == [2, 3]


def test_errors_raise():
    with pytest.raises(pc.PlatoonError):
        pc.generate_scenario(10, [0.5, 0.6], seed=1)  # shares over 1
    with pytest.raises(pc.PlatoonError):
        pc.run_simulation({"not": "a scenario"}, "pareto")
    with pytest.raises(pc.PlatoonError):
        pc.shortest_path(1, 999)
