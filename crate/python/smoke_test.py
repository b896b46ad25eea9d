#!/usr/bin/env python3
"""Smoke test for the grundykit extension module.

Build it first, then run this script from anywhere in the repository:

    cargo build -p grundy-py --release
    python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libgrundykit.so",
        REPO / "target" / "debug" / "libgrundykit.so",
        REPO / "target" / "release" / "libgrundykit.dylib",
        REPO / "target" / "debug" / "libgrundykit.dylib",
    ]
    built = next((path for path in candidates if path.exists()), None)
    if built is None:
        sys.exit("extension not built; run: cargo build -p grundy-py --release")
    staging = Path(tempfile.mkdtemp(prefix="grundykit."))
    shutil.copy2(built, staging / "grundykit.so")
    sys.path.insert(0, str(staging))
    import grundykit

    return grundykit


def main():
    gk = load_module()

    p4 = gk.Graph.path(4)
    assert p4.vertex_count == 4 and p4.edge_count == 3
    assert gk.first_fit(p4) == [1, 2, 1, 2]
    k, certificate = gk.exact_parameter(p4, "grundy")
    assert k == 3 and certificate == [1, 2, 3, 1]
    assert gk.grundy_permutation_oracle(p4) == 3
    assert gk.exhaustive_assignment_oracle(p4, "partial_grundy") == 3

    c5 = gk.Graph.cycle(5)
    squared = c5.power(2)
    assert squared.edge_count == 10, "second power of the 5-cycle is complete"
    assert gk.exact_parameter(squared, "proper")[0] == 5

    report = gk.verify(gk.Graph.cycle(4), [1, 2, 1, 2], "grundy")
    assert report["valid"] and report["witnesses"] == [[0, 2], [1, 3]]
    report = gk.verify(gk.Graph.cycle(4), [1, 2, 1, 3], "grundy")
    assert not report["valid"]
    assert report["counterexample"]["type"] == "vertex_missing_color"

    bounds = gk.parameter_bounds(gk.Graph.star(5))
    assert bounds == {"max_degree_plus_one": 6, "clique_lower": 2, "m_degree": 2}

    tree, colors = gk.binomial_tree(4)
    assert tree.vertex_count == 8
    assert gk.verify(tree, colors, "grundy")["valid"]
    assert gk.exact_parameter(tree, "grundy")[0] == 4

    peo = gk.perfect_elimination_order(gk.Graph.cycle(4))
    assert peo["chordal"] is False and len(peo["missing_edge"]) == 2
    interval = gk.Graph.random_interval(20, 7)
    colored = gk.chordal_color(interval)
    assert colored["omega"] == max(colored["colors"])

    product = gk.Graph.path(2).cartesian_product(gk.Graph.path(2))
    assert product.edge_count == 4
    join = gk.Graph.path(2).conormal_sum(gk.Graph.path(2))
    assert join.edge_count == 6

    round_trip = gk.Graph.parse(p4.serialize("dimacs"))
    assert round_trip == p4

    scenario = {
        "range": 2.0,
        "rule": "strict_mex",
        "max_rounds": 10,
        "seed": 0,
        "nodes": [
            {"id": 0, "x": 0.0, "y": 0.0, "channel": 1},
            {"id": 1, "x": 1.0, "y": 0.0, "channel": 1},
            {"id": 2, "x": 2.0, "y": 0.0, "channel": 1},
        ],
        "events": [],
    }
    outcome = gk.run_scenario(json.dumps(scenario))
    assert outcome["converged"] and outcome["rounds"] == 3
    assert [node["channel"] for node in outcome["state"]["nodes"]] == [2, 3, 1]
    assert outcome["fixpoint"]["valid"]
    again = gk.run_scenario(json.dumps(scenario))
    assert outcome["trace_csv"] == again["trace_csv"]

    a = gk.Graph.random(8, 0.5, 42)
    b = gk.Graph.random(8, 0.5, 42)
    assert a == b and a.serialize() == b.serialize()

    try:
        gk.Graph.cycle(2)
    except ValueError:
        pass
    else:
        raise AssertionError("cycle on 2 vertices must be rejected")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
