"""Regression pin for a good colored graph with no rainbow decomposition.

The 500-instance fuzz reaches (deterministically, instance 106) a 22-edge
good colored graph from which no progress is possible: it satisfies all six
goodness conditions, yet its edges cannot be partitioned into rainbow
cycles at all. The decomposer correctly refuses to guess and returns a
replayable CaseFailure. This file keeps that certificate honest: goodness is
confirmed by two independent checkers, and nonexistence by the exhaustive
oracle under both branching orders.

Contracting the forced Type I chains reduces the graph to a K5 on its five
degree-4 hubs where rainbow cycles correspond exactly to vertex-simple
cycles respecting each hub's color pairing; none of the 32 pairing systems
partitions the 10 chains, which is how the certificate was verified by hand.
"""
from pathlib import Path

from cdcover.coloring import check_goodness, parse_colored_edge_list
from cdcover.decomposer import decompose, fallback_search, replay_case_failure
from cdcover.oracle import brute_force_rainbow_decomposition
from oracles import naive_goodness

FIXTURE = Path(__file__).parent / "fixtures" / "good_but_undecomposable.txt"


def test_certificate_is_good_but_undecomposable():
    g = parse_colored_edge_list(FIXTURE.read_text())
    rep = check_goodness(g)
    assert rep.verdict.value == "good" and not rep.violations
    assert naive_goodness(g)[0] == "good"
    for branch in ("constrained", "lowest"):
        assert brute_force_rainbow_decomposition(g, branch=branch).status == "absent"
    assert fallback_search(g).status == "absent"


def test_certificate_yields_replayable_case_failure():
    g = parse_colored_edge_list(FIXTURE.read_text())
    trace = decompose(g)
    assert not trace.success
    again = replay_case_failure(trace.failure)
    assert not again.success
    assert again.failure.case == trace.failure.case
